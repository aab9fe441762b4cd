#pragma once
// Bit-level Monte Carlo simulation of uncoded transmission through
// forwarding relays, with three destination decoders and a paired decoder
// comparison mode.
//
// Reproducibility contract: a run is determined by (seed, chunk_size) alone.
// Trials are split into chunks of chunk_size; chunk c uses an RNG substream
// derived from (seed, c). Within a trial the draw order is fixed: first the
// message bit (top bit of one RNG word), then one uniform per relay in index
// order for the effective noise, then - for the degraded decoder only - one
// uniform per subset member in index order for the synthetic flips. Worker
// count never changes any result.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bspr/core.hpp"

namespace bspr {

enum class DecoderKind { majority, weighted_llr, degraded_majority };

const char* to_string(DecoderKind d);

struct SimConfig {
  NetworkSpec net;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  DecoderKind decoder = DecoderKind::majority;
  std::vector<std::size_t> subset;  // degraded_majority only
  std::uint64_t chunk_size = 1u << 16;
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double pe_hat = 0.0;
  double ci95_half_width = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 0;
  double rate = 0.0;  // n/(n+1): n message bits need n+1 network uses
};

// Tie-to-zero majority vote: 0 iff the count of zeros is >= K/2.
int decode_majority(const std::vector<int>& ybar);

// Maximum-likelihood vote for unequal channels: weight log2((1-p)/p) per
// relay, decide 0 iff the total weight of zero-votes is >= that of
// one-votes. A p = 1/2 relay gets weight 0. Both sides accumulate the same
// nonnegative weights, so with equal channels the comparison reduces to
// comparing vote counts and every decision matches decode_majority exactly,
// ties included.
int decode_weighted_llr(const std::vector<int>& ybar, const std::vector<double>& p);

// Equalize the subset to its worst member by flipping observation m with
// probability (p_max - p_m)/(1 - 2 p_m), then majority-vote the subset.
// Consumes exactly |subset| uniforms from `rng` (even for zero-probability
// flips), keeping the stream layout independent of the probabilities.
int decode_degraded_majority(const std::vector<int>& ybar, const std::vector<double>& p,
                             const std::vector<std::size_t>& subset, std::mt19937_64& rng);

// Run cfg.trials independent message bits through the effective channels and
// count decoder errors. Deterministic for fixed (seed, chunk_size) at any
// worker count; workers = 0 resolves via BSPR_THREADS / hardware default.
SimResult simulate_uncoded(const SimConfig& cfg, int workers = 0);

// Paired comparison of majority and weighted-LLR on identical noise
// realizations. `discord` counts trials where the two decisions differ.
struct PairedCounts {
  std::uint64_t trials = 0;
  std::uint64_t errors_majority = 0;
  std::uint64_t errors_weighted = 0;
  std::uint64_t discord = 0;
};

PairedCounts compare_decoders_paired(const NetworkSpec& net, std::uint64_t trials,
                                     std::uint64_t seed, std::uint64_t chunk_size = 1u << 16,
                                     int workers = 0);

}  // namespace bspr
