#include "bspr/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chunk_runner.hpp"

namespace bspr {

namespace {

inline double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_sim_config(const SimConfig& cfg, std::vector<double>* flip_prob) {
  if (cfg.trials < 1) throw std::domain_error("simulate: need at least one trial");
  if (cfg.chunk_size < 1) throw std::domain_error("simulate: chunk_size must be >= 1");
  if (cfg.decoder != DecoderKind::degraded_majority) return;
  const EffectiveChannel eff = cfg.net.effective();
  const std::vector<std::size_t> s =
      checked_subset(cfg.subset, cfg.net.size(), /*allow_empty=*/false);
  const double pmax = eff.p_max(s);
  if (pmax >= 0.5) {
    throw std::domain_error("simulate: degraded majority needs max effective crossover < 1/2");
  }
  flip_prob->assign(cfg.net.size(), 0.0);
  for (std::size_t i : s) {
    (*flip_prob)[i] = eff[i] == pmax ? 0.0 : (pmax - eff[i]) / (1.0 - 2.0 * eff[i]);
  }
}

}  // namespace

const char* to_string(DecoderKind d) {
  switch (d) {
    case DecoderKind::majority: return "majority";
    case DecoderKind::weighted_llr: return "weighted-llr";
    case DecoderKind::degraded_majority: return "degraded-majority";
  }
  return "unknown";
}

int decode_majority(const std::vector<int>& ybar) {
  if (ybar.empty()) throw std::domain_error("decode_majority: need at least one bit");
  std::size_t zeros = 0;
  for (int y : ybar) zeros += (y == 0);
  return 2 * zeros >= ybar.size() ? 0 : 1;
}

int decode_weighted_llr(const std::vector<int>& ybar, const std::vector<double>& p) {
  if (ybar.empty()) throw std::domain_error("decode_weighted_llr: need at least one bit");
  if (ybar.size() != p.size()) {
    throw std::invalid_argument("decode_weighted_llr: ybar and p lengths differ");
  }
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < ybar.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 0.5)) {
      throw std::domain_error("decode_weighted_llr: p must lie in [0, 1/2]");
    }
    const double w = p[i] == 0.5 ? 0.0 : std::log2((1.0 - p[i]) / p[i]);
    (ybar[i] == 0 ? s0 : s1) += w;
  }
  return s0 >= s1 ? 0 : 1;
}

int decode_degraded_majority(const std::vector<int>& ybar, const std::vector<double>& p,
                             const std::vector<std::size_t>& subset, std::mt19937_64& rng) {
  if (ybar.size() != p.size()) {
    throw std::invalid_argument("decode_degraded_majority: ybar and p lengths differ");
  }
  const std::vector<std::size_t> s = checked_subset(subset, ybar.size(), /*allow_empty=*/false);
  double pmax = 0.0;
  for (std::size_t i : s) {
    if (!(p[i] >= 0.0 && p[i] <= 0.5)) {
      throw std::domain_error("decode_degraded_majority: p must lie in [0, 1/2]");
    }
    pmax = std::max(pmax, p[i]);
  }
  if (pmax >= 0.5) {
    throw std::domain_error("decode_degraded_majority: max crossover in subset must be < 1/2");
  }
  std::size_t zeros = 0;
  for (std::size_t i : s) {
    const double f = p[i] == pmax ? 0.0 : (pmax - p[i]) / (1.0 - 2.0 * p[i]);
    const int y = ybar[i] ^ (next_uniform(rng) < f ? 1 : 0);
    zeros += (y == 0);
  }
  return 2 * zeros >= s.size() ? 0 : 1;
}

SimResult simulate_uncoded(const SimConfig& cfg, int workers) {
  std::vector<double> flip_prob;
  check_sim_config(cfg, &flip_prob);
  const EffectiveChannel eff = cfg.net.effective();
  const std::vector<double>& p = eff.probabilities();
  const std::size_t k = p.size();

  std::vector<double> weight(k, 0.0);
  if (cfg.decoder == DecoderKind::weighted_llr) {
    for (std::size_t i = 0; i < k; ++i) {
      weight[i] = p[i] == 0.5 ? 0.0 : std::log2((1.0 - p[i]) / p[i]);
    }
  }
  std::vector<std::size_t> subset;
  if (cfg.decoder == DecoderKind::degraded_majority) {
    subset = checked_subset(cfg.subset, k, /*allow_empty=*/false);
  }

  const std::uint64_t n_chunks = (cfg.trials + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<std::uint64_t> chunk_errors(n_chunks, 0);

  auto run = [&](std::uint64_t c) {
    std::mt19937_64 rng(detail::substream_seed(cfg.seed, c));
    const std::uint64_t begin = c * cfg.chunk_size;
    const std::uint64_t end = std::min(cfg.trials, begin + cfg.chunk_size);
    std::uint64_t errors = 0;
    std::vector<int> ybar(k);
    for (std::uint64_t t = begin; t < end; ++t) {
      const int w = static_cast<int>(rng() >> 63);
      for (std::size_t i = 0; i < k; ++i) {
        ybar[i] = w ^ (next_uniform(rng) < p[i] ? 1 : 0);
      }
      int what = 0;
      switch (cfg.decoder) {
        case DecoderKind::majority: {
          std::size_t zeros = 0;
          for (int y : ybar) zeros += (y == 0);
          what = 2 * zeros >= k ? 0 : 1;
          break;
        }
        case DecoderKind::weighted_llr: {
          double s0 = 0.0, s1 = 0.0;
          for (std::size_t i = 0; i < k; ++i) (ybar[i] == 0 ? s0 : s1) += weight[i];
          what = s0 >= s1 ? 0 : 1;
          break;
        }
        case DecoderKind::degraded_majority: {
          std::size_t zeros = 0;
          for (std::size_t i : subset) {
            const int y = ybar[i] ^ (next_uniform(rng) < flip_prob[i] ? 1 : 0);
            zeros += (y == 0);
          }
          what = 2 * zeros >= subset.size() ? 0 : 1;
          break;
        }
      }
      errors += (what != w);
    }
    chunk_errors[c] = errors;
  };
  detail::run_chunks(n_chunks, resolve_worker_count(workers), run);

  SimResult r;
  r.trials = cfg.trials;
  for (std::uint64_t e : chunk_errors) r.errors += e;
  r.pe_hat = static_cast<double>(r.errors) / static_cast<double>(cfg.trials);
  r.ci95_half_width =
      1.96 * std::sqrt(r.pe_hat * (1.0 - r.pe_hat) / static_cast<double>(cfg.trials));
  r.seed = cfg.seed;
  r.chunk_size = cfg.chunk_size;
  r.rate = static_cast<double>(cfg.trials) / (static_cast<double>(cfg.trials) + 1.0);
  return r;
}

PairedCounts compare_decoders_paired(const NetworkSpec& net, std::uint64_t trials,
                                     std::uint64_t seed, std::uint64_t chunk_size, int workers) {
  if (trials < 1) throw std::domain_error("compare_decoders_paired: need at least one trial");
  if (chunk_size < 1) throw std::domain_error("compare_decoders_paired: chunk_size must be >= 1");
  const EffectiveChannel eff = net.effective();
  const std::vector<double>& p = eff.probabilities();
  const std::size_t k = p.size();
  std::vector<double> weight(k);
  for (std::size_t i = 0; i < k; ++i) {
    weight[i] = p[i] == 0.5 ? 0.0 : std::log2((1.0 - p[i]) / p[i]);
  }

  const std::uint64_t n_chunks = (trials + chunk_size - 1) / chunk_size;
  std::vector<PairedCounts> chunk_counts(n_chunks);

  auto run = [&](std::uint64_t c) {
    std::mt19937_64 rng(detail::substream_seed(seed, c));
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(trials, begin + chunk_size);
    PairedCounts pc;
    for (std::uint64_t t = begin; t < end; ++t) {
      const int w = static_cast<int>(rng() >> 63);
      std::size_t zeros = 0;
      double s0 = 0.0, s1 = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const int y = w ^ (next_uniform(rng) < p[i] ? 1 : 0);
        zeros += (y == 0);
        (y == 0 ? s0 : s1) += weight[i];
      }
      const int maj = 2 * zeros >= k ? 0 : 1;
      const int wll = s0 >= s1 ? 0 : 1;
      pc.errors_majority += (maj != w);
      pc.errors_weighted += (wll != w);
      pc.discord += (maj != wll);
    }
    pc.trials = end - begin;
    chunk_counts[c] = pc;
  };
  detail::run_chunks(n_chunks, resolve_worker_count(workers), run);

  PairedCounts total;
  for (const PairedCounts& pc : chunk_counts) {
    total.trials += pc.trials;
    total.errors_majority += pc.errors_majority;
    total.errors_weighted += pc.errors_weighted;
    total.discord += pc.discord;
  }
  return total;
}

}  // namespace bspr
