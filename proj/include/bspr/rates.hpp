#pragma once
// Scheme rates and capacity bounds: cut-set, decoding-relay, hybrid,
// per-relay decode ceilings, and finite-K capacity certification.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bspr/core.hpp"
#include "bspr/mi.hpp"

namespace bspr {

// Result of a decoding-set search. `rate` always equals the minimum of
// `per_relay_limit` (1 - H(ps_i), aligned with `subset`) and `sum_term`
// (|subset| - sum of H(pd_i) over the subset).
struct DecodingSearchResult {
  std::vector<std::size_t> subset;
  double rate = 0.0;
  std::vector<double> per_relay_limit;
  double sum_term = 0.0;
};

enum class SearchMode { exhaustive, prefix };

// Capacity upper bound min{ I(U;V_bar), K - sum H(pd_i), 1 } where the
// mutual information runs over the source->relay crossovers. When K exceeds
// `enum_cap` the first term is replaced by its universal cap 1 and the
// report is flagged upper-bound; it is still a valid capacity upper bound.
RateReport cut_set_bound(const NetworkSpec& net, int enum_cap = kEnumCapDefault);

// Symmetric networks admit the closed form at any K, so this overload stays
// exact regardless of size.
RateReport cut_set_bound(const SymmetricSpec& sym);

// Rate when exactly the relays in `subset` decode and re-encode:
// min{ min_m (1 - H(ps_m)), |subset| - sum_m H(pd_m) }. Subset is 0-based,
// nonempty.
double decoding_rate(const NetworkSpec& net, const std::vector<std::size_t>& subset);

// Exact optimum of decoding_rate over all nonempty subsets via the K-prefix
// scan on relays sorted by ps ascending (optimal: the first constraint
// family depends only on max ps, and every relay adds a nonnegative
// 1 - H(pd) to the sum term). Ties go to the smaller subset, then
// lexicographic order.
DecodingSearchResult best_decoding_set(const NetworkSpec& net);

// 2^K - 1 subset sweep for verification; K <= 16 or infeasible_error.
DecodingSearchResult best_decoding_set_exhaustive(const NetworkSpec& net);

// Rate of a decode/forward split: min{ 1 - H(max ps over decoding set),
// I(U;Y_forwarding) + sum over decoding set of (1 - H(pd)) }, with the
// first term absent when nothing decodes. A forwarding side larger than
// `enum_cap` is lower-bounded through best_forwarding_subset and flagged.
RateReport hybrid_rate(const NetworkSpec& net, const RelayPartition& part,
                       int enum_cap = kEnumCapDefault);

// Best decoding set for hybrid operation. Exhaustive mode sweeps all 2^K
// partitions (K <= 16 or infeasible_error); prefix mode evaluates the K+1
// decoding prefixes of the ps-ascending order. Rate ties are broken toward
// smaller decoding sets, then lexicographically.
std::pair<RelayPartition, RateReport> hybrid_search(const NetworkSpec& net, SearchMode mode,
                                                    int enum_cap = kEnumCapDefault);

// Hard cap on any scheme that requires relay i (0-based) to decode the
// message: 1 - H(ps_i).
double relay_decode_ceiling(const NetworkSpec& net, std::size_t i);

// Exact capacity when it is known at finite K: for K = 1 always
// (1 - max{H(ps), H(pd)}); for K >= 2 the value K - sum H(pd_j) whenever it
// is <= 1 - H(ps_i) for every relay. Empty otherwise.
std::optional<double> capacity_known(const NetworkSpec& net);

// Relay-count threshold below which decoding relays achieve capacity in a
// symmetric network: max{1, (1 - H(ps)) / (1 - H(pd))}.
double k_prime(double ps, double pd);

}  // namespace bspr
