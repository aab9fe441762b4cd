#include "bspr/mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "chunk_runner.hpp"

namespace bspr {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr std::uint64_t kMcChunk = 1u << 16;

void check_symmetric_args(int k, double p) {
  if (k < 1) throw std::domain_error("symmetric forwarding: K must be >= 1");
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::domain_error("symmetric forwarding: p must lie in [0, 1/2), got " + std::to_string(p));
  }
}

void check_channel_vector(const std::vector<double>& p) {
  if (p.empty()) throw std::domain_error("mi: need at least one channel");
  for (double v : p) {
    if (!(v >= 0.0 && v <= 0.5)) {
      throw std::domain_error("mi: channel crossover must lie in [0, 1/2], got " + std::to_string(v));
    }
  }
}

// Sum over all outputs of -P(y) log2 P(y), P(y) = (P(y|0) + P(y|1)) / 2.
// Depth-first over channels with running conditional products; subtree sums
// give pairwise summation for free.
double mixture_entropy_rec(const std::vector<double>& p, std::size_t i, double a, double b) {
  if (i == p.size()) {
    const double m = 0.5 * (a + b);
    return m > 0.0 ? -m * std::log2(m) : 0.0;
  }
  const double pi = p[i];
  const double qi = 1.0 - pi;
  return mixture_entropy_rec(p, i + 1, a * qi, b * pi) +  // y_i = 0
         mixture_entropy_rec(p, i + 1, a * pi, b * qi);   // y_i = 1
}

}  // namespace

const char* to_string(MiMethod m) {
  switch (m) {
    case MiMethod::enumeration: return "enumeration";
    case MiMethod::closed_form: return "closed-form";
    case MiMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

double forwarding_rate_gap(int k, double p) {
  check_symmetric_args(k, p);
  if (p == 0.0) return 0.0;
  const double lnp = std::log(p);
  const double lnq = std::log1p(-p);
  // gap = (1/2) sum_l C(K,l) [A (lnT - lnA) + B (lnT - lnB)] / ln2 with
  // A = p^l q^(K-l), B = p^(K-l) q^l, T = A + B. Every term is >= 0, so the
  // tiny large-K gaps suffer no cancellation. Log differences are taken
  // before leaving the log domain to keep them exact.
  const double lgk = std::lgamma(static_cast<double>(k) + 1.0);
  double sum = 0.0;
  double comp = 0.0;  // Kahan
  for (int l = 0; l <= k; ++l) {
    const double lnc = lgk - std::lgamma(static_cast<double>(l) + 1.0) -
                       std::lgamma(static_cast<double>(k - l) + 1.0);
    const double lna = l * lnp + (k - l) * lnq;
    const double lnb = (k - l) * lnp + l * lnq;
    const double hi = std::max(lna, lnb);
    const double lo = std::min(lna, lnb);
    const double dhi = std::log1p(std::exp(lo - hi));  // lnT - hi, in (0, ln2]
    const double dlo = dhi + (hi - lo);                // lnT - lo
    const double term = std::exp(lnc + hi) * dhi + std::exp(lnc + lo) * dlo;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double gap = sum / (2.0 * kLn2);
  return std::max(0.0, gap);
}

double mi_symmetric_forwarding(int k, double p) {
  const double r = 1.0 - forwarding_rate_gap(k, p);
  return std::clamp(r, 0.0, 1.0);
}

double mi_enumerate(const std::vector<double>& p, int enum_cap) {
  check_channel_vector(p);
  if (enum_cap < 1) throw std::domain_error("mi_enumerate: enum_cap must be >= 1");
  if (p.size() > static_cast<std::size_t>(enum_cap)) {
    throw infeasible_error("mi_enumerate: exact enumeration infeasible for K = " +
                           std::to_string(p.size()) + " > cap " + std::to_string(enum_cap) +
                           "; use mi_monte_carlo or subset_degraded_bound");
  }
  const double hy = mixture_entropy_rec(p, 0, 1.0, 1.0);
  double hcond = 0.0;
  for (double v : p) hcond += binary_entropy(v);
  return std::clamp(hy - hcond, 0.0, 1.0);
}

MiResult mi_monte_carlo(const std::vector<double>& p, std::uint64_t samples,
                        std::uint64_t seed, int workers) {
  check_channel_vector(p);
  if (samples < 1) throw std::domain_error("mi_monte_carlo: need at least one sample");
  const std::size_t k = p.size();
  std::vector<double> lp(k), lq(k);
  for (std::size_t i = 0; i < k; ++i) {
    lp[i] = p[i] > 0.0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    lq[i] = std::log1p(-p[i]);
  }

  const std::uint64_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<double> chunk_sum(n_chunks, 0.0), chunk_sumsq(n_chunks, 0.0);

  auto run = [&](std::uint64_t c) {
    std::mt19937_64 rng(detail::substream_seed(seed, c));
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t end = std::min(samples, begin + kMcChunk);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const unsigned u = static_cast<unsigned>(rng() >> 63);
      double l0 = 0.0, l1 = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double unif = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const unsigned y = u ^ static_cast<unsigned>(unif < p[i]);
        l0 += y ? lp[i] : lq[i];
        l1 += y ? lq[i] : lp[i];
      }
      const double lu = u == 0 ? l0 : l1;
      const double bits = (lu - log_add_exp(l0, l1) + kLn2) / kLn2;
      s += bits;
      s2 += bits * bits;
    }
    chunk_sum[c] = s;
    chunk_sumsq[c] = s2;
  };
  detail::run_chunks(n_chunks, resolve_worker_count(workers), run);

  // Fold in chunk order; the estimate is independent of worker count.
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    sum += chunk_sum[c];
    sumsq += chunk_sumsq[c];
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  MiResult r;
  r.value = mean;
  r.method = MiMethod::monte_carlo;
  if (samples > 1) {
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    r.ci95_half_width = 1.96 * std::sqrt(var / n);
  }
  return r;
}

double subset_degraded_bound(const EffectiveChannel& net, const std::vector<std::size_t>& subset) {
  const double pmax = net.p_max(subset);
  if (pmax == 0.5) return 0.0;
  return mi_symmetric_forwarding(static_cast<int>(subset.size()), pmax);
}

ForwardingSubsetResult best_forwarding_subset(const EffectiveChannel& net) {
  const std::size_t k = net.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.probabilities()[a] < net.probabilities()[b];
  });

  ForwardingSubsetResult best;
  best.value = -1.0;
  for (std::size_t m = 1; m <= k; ++m) {
    const double pmax = net.probabilities()[order[m - 1]];
    const double v =
        pmax == 0.5 ? 0.0 : mi_symmetric_forwarding(static_cast<int>(m), pmax);
    if (v >= best.value) {  // ties go to the larger prefix
      best.value = v;
      best.subset.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    }
  }
  std::sort(best.subset.begin(), best.subset.end());
  return best;
}

}  // namespace bspr
