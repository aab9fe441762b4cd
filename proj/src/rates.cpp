#include "bspr/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bspr {

namespace {

constexpr const char* kSourceCut = "source-cut";
constexpr const char* kRelaySumCut = "relay-sum-cut";
constexpr const char* kOneBitCap = "one-bit-cap";

RateReport assemble_cut_set(double mi_term, bool mi_capped, double sum_term) {
  RateReport r;
  r.scheme = Scheme::cut_set;
  r.value = std::min({mi_term, sum_term, 1.0});
  if (!mi_capped && r.value == mi_term) {
    r.binding = kSourceCut;
  } else if (r.value == sum_term) {
    r.binding = kRelaySumCut;
  } else {
    r.binding = kOneBitCap;
  }
  r.exactness = mi_capped ? Exactness::upper_bound : Exactness::exact;
  return r;
}

double relay_sum_term(const NetworkSpec& net, const std::vector<std::size_t>& subset) {
  double h = 0.0;
  for (std::size_t i : subset) h += binary_entropy(net.link(i).pd);
  return static_cast<double>(subset.size()) - h;
}

// Shared by the prefix and exhaustive searches so their values agree bit for
// bit whenever they pick the same subset.
DecodingSearchResult make_decoding_result(const NetworkSpec& net,
                                          std::vector<std::size_t> subset) {
  DecodingSearchResult r;
  r.subset = std::move(subset);
  r.per_relay_limit.reserve(r.subset.size());
  double lim = 1.0;
  for (std::size_t i : r.subset) {
    r.per_relay_limit.push_back(1.0 - binary_entropy(net.link(i).ps));
    lim = std::min(lim, r.per_relay_limit.back());
  }
  r.sum_term = relay_sum_term(net, r.subset);
  r.rate = std::min(lim, r.sum_term);
  return r;
}

std::vector<std::size_t> order_by_ps(const NetworkSpec& net) {
  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.link(a).ps < net.link(b).ps;
  });
  return order;
}

// Tie-break for searches: higher rate wins; on ties the smaller decoding set,
// then the lexicographically smaller index vector.
bool better_candidate(double rate, const std::vector<std::size_t>& subset, double best_rate,
                      const std::vector<std::size_t>& best_subset) {
  if (rate != best_rate) return rate > best_rate;
  if (subset.size() != best_subset.size()) return subset.size() < best_subset.size();
  return subset < best_subset;
}

std::vector<std::size_t> mask_to_subset(unsigned mask, std::size_t k) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < k; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

}  // namespace

RateReport cut_set_bound(const NetworkSpec& net, int enum_cap) {
  const std::size_t k = net.size();
  double mi_term = 1.0;
  bool capped = true;
  if (k <= static_cast<std::size_t>(enum_cap)) {
    std::vector<double> ps;
    ps.reserve(k);
    for (const RelayLink& l : net.links()) ps.push_back(l.ps);
    mi_term = mi_enumerate(ps, enum_cap);
    capped = false;
  }
  double h = 0.0;
  for (const RelayLink& l : net.links()) h += binary_entropy(l.pd);
  return assemble_cut_set(mi_term, capped, static_cast<double>(k) - h);
}

RateReport cut_set_bound(const SymmetricSpec& sym) {
  const double mi_term = mi_symmetric_forwarding(sym.k, sym.ps);
  const double sum_term = sym.k * (1.0 - binary_entropy(sym.pd));
  return assemble_cut_set(mi_term, /*mi_capped=*/false, sum_term);
}

double decoding_rate(const NetworkSpec& net, const std::vector<std::size_t>& subset) {
  const std::vector<std::size_t> s = checked_subset(subset, net.size(), /*allow_empty=*/false);
  return make_decoding_result(net, s).rate;
}

DecodingSearchResult best_decoding_set(const NetworkSpec& net) {
  const std::vector<std::size_t> order = order_by_ps(net);
  DecodingSearchResult best;
  best.rate = -1.0;
  std::vector<std::size_t> prefix;
  prefix.reserve(net.size());
  for (std::size_t i : order) {
    prefix.push_back(i);
    std::vector<std::size_t> subset = prefix;
    std::sort(subset.begin(), subset.end());
    DecodingSearchResult cand = make_decoding_result(net, std::move(subset));
    if (better_candidate(cand.rate, cand.subset, best.rate, best.subset)) best = std::move(cand);
  }
  return best;
}

DecodingSearchResult best_decoding_set_exhaustive(const NetworkSpec& net) {
  const std::size_t k = net.size();
  if (k > 16) {
    throw infeasible_error("decoding search: exhaustive mode infeasible for K = " +
                           std::to_string(k) + " > 16; use the prefix search");
  }
  DecodingSearchResult best;
  best.rate = -1.0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    DecodingSearchResult cand = make_decoding_result(net, mask_to_subset(mask, k));
    if (better_candidate(cand.rate, cand.subset, best.rate, best.subset)) best = std::move(cand);
  }
  return best;
}

RateReport hybrid_rate(const NetworkSpec& net, const RelayPartition& part, int enum_cap) {
  if (part.total() != net.size()) {
    throw std::invalid_argument("hybrid_rate: partition size does not match network");
  }
  const std::vector<std::size_t>& dec = part.decoding();
  const std::vector<std::size_t> fwd = part.forwarding();

  double mi_fwd = 0.0;
  bool fwd_bounded = false;
  if (!fwd.empty()) {
    const EffectiveChannel all = net.effective();
    std::vector<double> pf;
    pf.reserve(fwd.size());
    for (std::size_t i : fwd) pf.push_back(all[i]);
    if (fwd.size() <= static_cast<std::size_t>(enum_cap)) {
      mi_fwd = mi_enumerate(pf, enum_cap);
    } else {
      mi_fwd = best_forwarding_subset(EffectiveChannel(std::move(pf))).value;
      fwd_bounded = true;
    }
  }
  const double sum_term = mi_fwd + relay_sum_term(net, dec);

  RateReport r;
  r.scheme = Scheme::hybrid;
  if (dec.empty()) {
    r.value = sum_term;
    r.binding = "sum-rate";
    r.exactness = fwd_bounded ? Exactness::lower_bound : Exactness::exact;
    return r;
  }
  double max_ps = 0.0;
  for (std::size_t i : dec) max_ps = std::max(max_ps, net.link(i).ps);
  const double dec_term = 1.0 - binary_entropy(max_ps);
  if (dec_term <= sum_term) {
    // A lower-bounded sum term can only be larger in truth, so the decode
    // constraint still binds and the value is exact.
    r.value = dec_term;
    r.binding = "decode-constraint";
    r.exactness = Exactness::exact;
  } else {
    r.value = sum_term;
    r.binding = "sum-rate";
    r.exactness = fwd_bounded ? Exactness::lower_bound : Exactness::exact;
  }
  return r;
}

std::pair<RelayPartition, RateReport> hybrid_search(const NetworkSpec& net, SearchMode mode,
                                                    int enum_cap) {
  const std::size_t k = net.size();
  if (mode == SearchMode::exhaustive && k > 16) {
    throw infeasible_error("hybrid search: exhaustive mode infeasible for K = " +
                           std::to_string(k) + " > 16; use prefix mode");
  }
  RelayPartition best_part(k, {});
  RateReport best = hybrid_rate(net, best_part, enum_cap);

  if (mode == SearchMode::prefix) {
    const std::vector<std::size_t> order = order_by_ps(net);
    std::vector<std::size_t> prefix;
    prefix.reserve(k);
    for (std::size_t i : order) {
      prefix.push_back(i);
      RelayPartition part(k, prefix);
      RateReport cand = hybrid_rate(net, part, enum_cap);
      if (better_candidate(cand.value, part.decoding(), best.value, best_part.decoding())) {
        best_part = std::move(part);
        best = std::move(cand);
      }
    }
    return {best_part, best};
  }

  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    RelayPartition part(k, mask_to_subset(mask, k));
    RateReport cand = hybrid_rate(net, part, enum_cap);
    if (better_candidate(cand.value, part.decoding(), best.value, best_part.decoding())) {
      best_part = std::move(part);
      best = std::move(cand);
    }
  }
  return {best_part, best};
}

double relay_decode_ceiling(const NetworkSpec& net, std::size_t i) {
  return 1.0 - binary_entropy(net.link(i).ps);
}

std::optional<double> capacity_known(const NetworkSpec& net) {
  if (net.size() == 1) {
    return 1.0 - std::max(binary_entropy(net.link(0).ps), binary_entropy(net.link(0).pd));
  }
  std::vector<std::size_t> all(net.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const double sum_term = relay_sum_term(net, all);
  for (const RelayLink& l : net.links()) {
    if (sum_term > 1.0 - binary_entropy(l.ps)) return std::nullopt;
  }
  return sum_term;
}

double k_prime(double ps, double pd) {
  if (!(ps >= 0.0 && ps <= 0.5)) {
    throw std::domain_error("k_prime: ps must lie in [0, 1/2]");
  }
  if (!(pd >= 0.0 && pd < 0.5)) {
    throw std::domain_error("k_prime: pd must lie in [0, 1/2)");
  }
  return std::max(1.0, (1.0 - binary_entropy(ps)) / (1.0 - binary_entropy(pd)));
}

}  // namespace bspr
