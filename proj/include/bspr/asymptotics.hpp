#pragma once
// Capacity-vs-relay-count analysis: minimum relay counts for a target rate
// gap, Hoeffding error bounds and the matching sufficient relay counts, the
// exact majority-decoder error probability, and a closed-form large-K rate
// approximation.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bspr/core.hpp"

namespace bspr {

// A certified minimal relay count: `count` satisfies the defining inequality
// of the query and `count - 1` does not. `achieved_value` is the certified
// quantity at `count` (a rate or an error bound); `target` echoes the
// requested zeta or epsilon.
struct RelayCountResult {
  int count = 0;
  double achieved_value = 0.0;
  double target = 0.0;
};

// Smallest K whose symmetric forwarding rate at crossover p is within `zeta`
// bits of the 1-bit cap, found by upward scan (the rate is nondecreasing in
// K). The comparison runs on the rate gap itself, which is computed without
// cancellation, so targets down to ~1e-16 bits are resolved correctly.
RelayCountResult min_relays_within(double p, double zeta);

// exp(-2K(1/2 - p)^2): upper bound on the majority-decoder error probability
// over K independent forwarded observations at effective crossover p.
double hoeffding_pe_bound(int k, double p);

// Smallest K for which the Hoeffding bound is <= epsilon:
// ceil(ln(1/epsilon) / (2(1/2 - p)^2)).
RelayCountResult relays_for_error(double p, double epsilon);

// Exact error probability of the tie-to-zero majority decoder over K i.i.d.
// Bernoulli(p) effective noises. Odd K: Pr{Bin(K,p) >= (K+1)/2}. Even K ties
// make the conditional errors asymmetric; the returned value is the average
// over the uniform message: (Pr{Bin > K/2} + Pr{Bin >= K/2}) / 2.
double exact_majority_pe(int k, double p);

// Closed-form large-K approximation of the symmetric forwarding rate:
// 1 - log2(1 + (p/(1-p))^(K(1-2p))). Tends to 1 as K grows for p < 1/2 and
// is exactly 0 at p = 1/2.
double asymptotic_rate_approx(int k, double p);

// Divergence certificate for uncoded transmission over a relay subset:
// |subset| * (1/2 - p_max(subset))^2. Uncoded majority forwarding is
// asymptotically reliable along any network sequence driving this to
// infinity.
double uncoded_condition_value(const EffectiveChannel& net,
                               const std::vector<std::size_t>& subset);

}  // namespace bspr
