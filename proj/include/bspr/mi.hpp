#pragma once
// Mutual information between a uniform input bit and the bank of effective
// relay observations, under plain forwarding. Three routes: a closed form for
// identical channels (stable up to K ~ 1e4), exact enumeration over all 2^K
// outputs (K <= enum_cap), and a chunked Monte Carlo estimator for larger K.

#include <cstdint>
#include <vector>

#include "bspr/core.hpp"

namespace bspr {

// Largest K accepted by exact enumeration by default (2^24 outputs).
inline constexpr int kEnumCapDefault = 24;

enum class MiMethod { enumeration, closed_form, monte_carlo };

const char* to_string(MiMethod m);

struct MiResult {
  double value = 0.0;  // bits
  MiMethod method = MiMethod::enumeration;
  double ci95_half_width = 0.0;  // nonzero only for monte_carlo
};

// I(U; Y_1..Y_K) in bits when all K channels are BSC(p), uniform input.
// Requires K >= 1 and 0 <= p < 1/2. Nondecreasing in K; equals 1 - H(p)
// at K = 1.
double mi_symmetric_forwarding(int k, double p);

// 1 - mi_symmetric_forwarding(k, p), computed as a sum of nonnegative terms
// so values down to ~1e-16 keep full relative precision.
double forwarding_rate_gap(int k, double p);

// Exact I(U; Ybar) for per-channel crossovers p (each in [0, 1/2], K >= 1).
// Refuses K > enum_cap with infeasible_error pointing at mi_monte_carlo /
// subset_degraded_bound.
double mi_enumerate(const std::vector<double>& p, int enum_cap = kEnumCapDefault);

// Unbiased per-sample log-likelihood-ratio estimator of I(U; Ybar) with a
// CLT 95% confidence half-width. Sample budget is split into fixed 65536-
// sample chunks whose RNG substreams depend only on (seed, chunk index), so
// the result is bit-identical for any worker count.
MiResult mi_monte_carlo(const std::vector<double>& p, std::uint64_t samples,
                        std::uint64_t seed, int workers = 0);

// Achievable forwarding rate certified by degrading every channel in
// `subset` to the subset's worst crossover: the symmetric closed form at
// (|subset|, p_max). Returns 0 when p_max = 1/2. Lower-bounds the exact
// subset MI.
double subset_degraded_bound(const EffectiveChannel& net, const std::vector<std::size_t>& subset);

struct ForwardingSubsetResult {
  std::vector<std::size_t> subset;  // ascending original indices
  double value = 0.0;               // certified bits
};

// Best degraded-subset certificate over the K prefixes of the channels
// sorted by crossover (ties by index). Value ties prefer the larger prefix.
ForwardingSubsetResult best_forwarding_subset(const EffectiveChannel& net);

}  // namespace bspr
