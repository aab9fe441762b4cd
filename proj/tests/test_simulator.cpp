#include <cmath>
#include <cstddef>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "bspr/asymptotics.hpp"
#include "bspr/core.hpp"
#include "bspr/simulator.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

namespace {

// Network whose effective crossovers equal `p` exactly: noiseless second hop.
bspr::NetworkSpec direct_net(const std::vector<double>& p) {
  std::vector<bspr::RelayLink> links;
  for (double v : p) links.push_back({v, 0.0});
  return bspr::NetworkSpec(std::move(links));
}

// All 2^k vote patterns.
std::vector<std::vector<int>> all_patterns(std::size_t k) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    std::vector<int> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = static_cast<int>((mask >> i) & 1ull);
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("majority vote with ties to zero") {
  CHECK(bspr::decode_majority({0}) == 0);
  CHECK(bspr::decode_majority({1}) == 1);
  CHECK(bspr::decode_majority({0, 1}) == 0);  // tie
  CHECK(bspr::decode_majority({1, 1}) == 1);
  CHECK(bspr::decode_majority({1, 1, 0}) == 1);
  CHECK(bspr::decode_majority({0, 0, 1, 1}) == 0);  // tie
  CHECK(bspr::decode_majority({0, 1, 1, 1}) == 1);
  CHECK_THROWS_AS(bspr::decode_majority({}), std::domain_error);
}

TEST_CASE("weighted vote reference decisions") {
  const std::vector<double> p{0.4, 0.1, 0.1};
  // Weights are about 0.585, 3.17, 3.17: the two reliable relays rule.
  CHECK(bspr::decode_weighted_llr({0, 1, 1}, p) == 1);
  CHECK(bspr::decode_weighted_llr({1, 0, 0}, p) == 0);
  CHECK(bspr::decode_weighted_llr({1, 1, 1}, p) == 1);
  CHECK(bspr::decode_weighted_llr({0, 0, 0}, p) == 0);

  // A half channel carries no weight; all-half votes tie to zero.
  CHECK(bspr::decode_weighted_llr({1, 1}, {0.5, 0.5}) == 0);
  CHECK(bspr::decode_weighted_llr({1, 0}, {0.5, 0.1}) == 0);
  CHECK(bspr::decode_weighted_llr({0, 1}, {0.5, 0.1}) == 1);

  CHECK_THROWS_AS(bspr::decode_weighted_llr({0, 1}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(bspr::decode_weighted_llr({}, {}), std::domain_error);
  CHECK_THROWS_AS(bspr::decode_weighted_llr({0}, {0.6}), std::domain_error);
}

TEST_CASE("weighted vote equals majority on equal channels") {
  for (std::size_t k = 1; k <= 6; ++k) {
    for (double p : {0.1, 0.3, 0.49}) {
      const std::vector<double> chans(k, p);
      for (const std::vector<int>& y : all_patterns(k)) {
        CHECK(bspr::decode_weighted_llr(y, chans) == bspr::decode_majority(y));
      }
    }
  }
}

TEST_CASE("degraded vote consumes one draw per subset member") {
  const std::vector<double> p{0.1, 0.2, 0.3};
  std::mt19937_64 used(5), reference(5);
  (void)bspr::decode_degraded_majority({0, 1, 0}, p, {0, 1, 2}, used);
  reference();
  reference();
  reference();
  CHECK(used == reference);

  std::mt19937_64 partial(9), partial_ref(9);
  (void)bspr::decode_degraded_majority({0, 1, 0}, p, {2}, partial);
  partial_ref();
  CHECK(partial == partial_ref);
}

TEST_CASE("degraded vote with equal channels is plain majority") {
  const std::vector<double> p{0.3, 0.3, 0.3};
  std::mt19937_64 rng(77);
  for (const std::vector<int>& y : all_patterns(3)) {
    CHECK(bspr::decode_degraded_majority(y, p, {0, 1, 2}, rng) == bspr::decode_majority(y));
  }
}

TEST_CASE("degraded vote restricted to a singleton echoes that vote") {
  const std::vector<double> p{0.1, 0.4};
  std::mt19937_64 rng(123);
  CHECK(bspr::decode_degraded_majority({0, 1}, p, {1}, rng) == 1);
  CHECK(bspr::decode_degraded_majority({1, 0}, p, {1}, rng) == 0);
}

TEST_CASE("degraded vote flips at the equalizing probability") {
  // Relay 0 is degraded from 0.1 to 0.2: flip probability 1/8. On votes
  // (1, 1) the decision drops to 0 exactly when the flip fires.
  const std::vector<double> p{0.1, 0.2};
  std::mt19937_64 rng(2026);
  int zeros = 0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    zeros += bspr::decode_degraded_majority({1, 1}, p, {0, 1}, rng) == 0;
  }
  const double frac = static_cast<double>(zeros) / n;
  CHECK(std::fabs(frac - 0.125) < 4.2e-3);  // 4 sigma

  // Votes (0, 0) can never leave the zero majority.
  for (int t = 0; t < 1000; ++t) {
    CHECK(bspr::decode_degraded_majority({0, 0}, p, {0, 1}, rng) == 0);
  }
}

TEST_CASE("degraded vote domain") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(bspr::decode_degraded_majority({0, 1}, {0.5, 0.1}, {0}, rng),
                  std::domain_error);
  CHECK_THROWS_AS(bspr::decode_degraded_majority({0, 1}, {0.1}, {0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(bspr::decode_degraded_majority({0, 1}, {0.1, 0.2}, {}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(bspr::decode_degraded_majority({0, 1}, {0.1, 0.2}, {2}, rng),
                  std::out_of_range);
  // A half channel outside the subset is fine.
  CHECK_NOTHROW(bspr::decode_degraded_majority({0, 1}, {0.1, 0.5}, {0}, rng));
}

TEST_CASE("simulation over noiseless relays never errs") {
  const bspr::SimConfig cfg{direct_net({0.0, 0.0, 0.0}), 50000, 7,
                            bspr::DecoderKind::majority, {}, 1u << 16};
  const bspr::SimResult r = bspr::simulate_uncoded(cfg);
  CHECK(r.errors == 0);
  CHECK(r.pe_hat == 0.0);
  CHECK(r.ci95_half_width == 0.0);
  CHECK(r.trials == 50000);
  CHECK(r.seed == 7);
  CHECK(r.chunk_size == (1u << 16));
  CHECK(r.rate == doctest::Approx(50000.0 / 50001.0).epsilon(1e-15));
}

TEST_CASE("simulation tracks the exact majority error probability") {
  struct Row {
    int k;
    double p;
  };
  const Row rows[] = {{1, 0.1}, {3, 0.18}, {5, 0.18}, {9, 0.3}};
  for (const Row& row : rows) {
    const double exact = bspr::exact_majority_pe(row.k, row.p);
    const std::vector<double> chans(static_cast<std::size_t>(row.k), row.p);
    const bspr::SimConfig cfg{direct_net(chans), 200000, 20260822,
                              bspr::DecoderKind::majority, {}, 1u << 16};
    const bspr::SimResult r = bspr::simulate_uncoded(cfg);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(r.trials));
    CHECK(std::fabs(r.pe_hat - exact) <= 4.0 * sigma);
    CHECK(r.ci95_half_width > 0.0);
    CHECK(r.ci95_half_width < 4.0 * sigma);
  }
}

TEST_CASE("simulation is deterministic for any worker count") {
  const bspr::SimConfig cfg{direct_net({0.1, 0.2, 0.3, 0.1, 0.25}), 100001, 99,
                            bspr::DecoderKind::majority, {}, 4096};
  const bspr::SimResult w1 = bspr::simulate_uncoded(cfg, 1);
  const bspr::SimResult w4 = bspr::simulate_uncoded(cfg, 4);
  const bspr::SimResult w16 = bspr::simulate_uncoded(cfg, 16);
  CHECK(w1.errors == w4.errors);
  CHECK(w1.errors == w16.errors);
  CHECK(w1.pe_hat == w4.pe_hat);
  CHECK(w1.ci95_half_width == w16.ci95_half_width);
  const bspr::SimResult again = bspr::simulate_uncoded(cfg, 4);
  CHECK(again.errors == w1.errors);
}

TEST_CASE("weighted decoder on equal channels reproduces majority exactly") {
  const bspr::NetworkSpec net = direct_net({0.3, 0.3, 0.3, 0.3, 0.3});
  const bspr::SimConfig maj{net, 100000, 5150, bspr::DecoderKind::majority, {}, 1u << 16};
  bspr::SimConfig llr = maj;
  llr.decoder = bspr::DecoderKind::weighted_llr;
  // Identical noise stream and identical decisions: the counts agree bit
  // for bit, not just statistically.
  CHECK(bspr::simulate_uncoded(maj).errors == bspr::simulate_uncoded(llr).errors);
}

TEST_CASE("degraded decoder over the full equal-channel bank acts as majority") {
  const bspr::NetworkSpec net = direct_net({0.18, 0.18, 0.18});
  bspr::SimConfig cfg{net, 200000, 31415, bspr::DecoderKind::degraded_majority,
                      {0, 1, 2}, 1u << 16};
  const bspr::SimResult r = bspr::simulate_uncoded(cfg);
  const double exact = bspr::exact_majority_pe(3, 0.18);
  const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(r.trials));
  CHECK(std::fabs(r.pe_hat - exact) <= 4.0 * sigma);
}

TEST_CASE("degraded decoder over a subset matches the degraded closed form") {
  // Decode from relays {0, 1} only, both degraded to crossover 0.3: the
  // error rate is the exact two-relay majority error at 0.3.
  const bspr::NetworkSpec net = direct_net({0.1, 0.3, 0.45});
  bspr::SimConfig cfg{net, 200000, 777, bspr::DecoderKind::degraded_majority, {0, 1}, 1u << 16};
  const bspr::SimResult r = bspr::simulate_uncoded(cfg);
  const double exact = bspr::exact_majority_pe(2, 0.3);
  const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(r.trials));
  CHECK(std::fabs(r.pe_hat - exact) <= 4.0 * sigma);
}

TEST_CASE("simulation config validation") {
  const bspr::NetworkSpec net = direct_net({0.1});
  CHECK_THROWS_AS(bspr::simulate_uncoded({net, 0, 1, bspr::DecoderKind::majority, {}, 64}),
                  std::domain_error);
  CHECK_THROWS_AS(bspr::simulate_uncoded({net, 10, 1, bspr::DecoderKind::majority, {}, 0}),
                  std::domain_error);
  CHECK_THROWS_AS(
      bspr::simulate_uncoded({net, 10, 1, bspr::DecoderKind::degraded_majority, {}, 64}),
      std::invalid_argument);
  const bspr::NetworkSpec half = direct_net({0.5, 0.1});
  CHECK_THROWS_AS(
      bspr::simulate_uncoded({half, 10, 1, bspr::DecoderKind::degraded_majority, {0, 1}, 64}),
      std::domain_error);
}

TEST_CASE("paired comparison on equal channels has zero discord") {
  const bspr::PairedCounts pc =
      bspr::compare_decoders_paired(direct_net({0.2, 0.2, 0.2}), 50000, 42);
  CHECK(pc.trials == 50000);
  CHECK(pc.discord == 0);
  CHECK(pc.errors_majority == pc.errors_weighted);
}

TEST_CASE("weighted decoding never loses to majority on average") {
  std::mt19937_64 rng(8675309);
  for (int t = 0; t < 5; ++t) {
    const bspr::NetworkSpec net = oracle::random_net(rng, 9);
    const bspr::PairedCounts pc = bspr::compare_decoders_paired(net, 200000, 1000 + t);
    CHECK(pc.trials == 200000);
    CHECK(pc.discord <= pc.trials);
    // Paired test: mean difference within 4 sigma of nonnegative territory.
    const double n = static_cast<double>(pc.trials);
    const double diff = (static_cast<double>(pc.errors_majority) -
                         static_cast<double>(pc.errors_weighted)) /
                        n;
    const double var = (static_cast<double>(pc.discord) - n * diff * diff) / (n - 1.0);
    const double sigma = std::sqrt(std::max(var, 0.0) / n);
    CHECK(diff >= -4.0 * sigma - 1e-12);
  }
}

TEST_CASE("decoder names") {
  CHECK(std::string(bspr::to_string(bspr::DecoderKind::majority)) == "majority");
  CHECK(std::string(bspr::to_string(bspr::DecoderKind::weighted_llr)) == "weighted-llr");
  CHECK(std::string(bspr::to_string(bspr::DecoderKind::degraded_majority)) ==
        "degraded-majority");
}

}  // TEST_SUITE("simulator")
