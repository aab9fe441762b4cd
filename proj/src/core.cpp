#include "bspr/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace bspr {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy: p must lie in [0, 1], got " + std::to_string(p));
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double effective_crossover(double a, double b) {
  if (!(a >= 0.0 && a <= 0.5) || !(b >= 0.0 && b <= 0.5)) {
    throw std::domain_error("effective_crossover: arguments must lie in [0, 1/2]");
  }
  if (a == 0.5 || b == 0.5) return 0.5;
  return a + b - 2.0 * a * b;  // commutative form, so (a,b) and (b,a) agree bit for bit
}

int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BSPR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

namespace {

void check_crossover(double p, const char* what) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1/2], got " + std::to_string(p));
  }
}

}  // namespace

NetworkSpec::NetworkSpec(std::vector<RelayLink> links) : links_(std::move(links)) {
  if (links_.empty()) throw std::invalid_argument("NetworkSpec: need at least one relay");
  for (const RelayLink& l : links_) {
    check_crossover(l.ps, "NetworkSpec: ps");
    check_crossover(l.pd, "NetworkSpec: pd");
  }
}

const RelayLink& NetworkSpec::link(std::size_t i) const {
  if (i >= links_.size()) throw std::out_of_range("NetworkSpec: relay index out of range");
  return links_[i];
}

EffectiveChannel NetworkSpec::effective() const {
  std::vector<double> p;
  p.reserve(links_.size());
  for (const RelayLink& l : links_) p.push_back(effective_crossover(l.ps, l.pd));
  return EffectiveChannel(std::move(p));
}

SymmetricSpec::SymmetricSpec(int k_, double ps_, double pd_) : k(k_), ps(ps_), pd(pd_) {
  if (k < 1) throw std::invalid_argument("SymmetricSpec: K must be >= 1");
  if (!(ps >= 0.0 && ps < 0.5) || !(pd >= 0.0 && pd < 0.5)) {
    throw std::domain_error("SymmetricSpec: ps and pd must lie in [0, 1/2)");
  }
}

NetworkSpec SymmetricSpec::expand() const {
  return NetworkSpec(std::vector<RelayLink>(static_cast<std::size_t>(k), RelayLink{ps, pd}));
}

EffectiveChannel::EffectiveChannel(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("EffectiveChannel: need at least one relay");
  for (double v : p_) check_crossover(v, "EffectiveChannel: p");
}

double EffectiveChannel::p_max(const std::vector<std::size_t>& subset) const {
  const std::vector<std::size_t> s = checked_subset(subset, p_.size(), /*allow_empty=*/false);
  double m = 0.0;
  for (std::size_t i : s) m = std::max(m, p_[i]);
  return m;
}

RelayPartition::RelayPartition(std::size_t total, std::vector<std::size_t> decoding)
    : total_(total), decoding_(checked_subset(decoding, total, /*allow_empty=*/true)) {
  if (total_ == 0) throw std::invalid_argument("RelayPartition: need at least one relay");
}

std::vector<std::size_t> RelayPartition::forwarding() const {
  std::vector<std::size_t> f;
  f.reserve(total_ - decoding_.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < total_; ++i) {
    if (j < decoding_.size() && decoding_[j] == i) {
      ++j;
    } else {
      f.push_back(i);
    }
  }
  return f;
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::cut_set: return "cut-set";
    case Scheme::forwarding: return "forwarding";
    case Scheme::decoding: return "decoding";
    case Scheme::hybrid: return "hybrid";
    case Scheme::decode_ceiling: return "decode-ceiling";
    case Scheme::trivial: return "trivial";
  }
  return "unknown";
}

const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::lower_bound: return "lower-bound";
    case Exactness::upper_bound: return "upper-bound";
    case Exactness::estimate: return "estimate";
  }
  return "unknown";
}

std::vector<std::size_t> checked_subset(const std::vector<std::size_t>& subset,
                                        std::size_t total, bool allow_empty) {
  if (subset.empty() && !allow_empty) {
    throw std::invalid_argument("subset must be nonempty");
  }
  std::vector<std::size_t> s = subset;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("subset contains duplicate relay indices");
  }
  if (!s.empty() && s.back() >= total) {
    throw std::out_of_range("subset index out of range");
  }
  return s;
}

}  // namespace bspr
