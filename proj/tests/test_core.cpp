#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bspr/core.hpp"
#include "doctest.h"

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("core") {

TEST_CASE("binary_entropy endpoints and midpoint") {
  CHECK(bspr::binary_entropy(0.0) == 0.0);
  CHECK(bspr::binary_entropy(1.0) == 0.0);
  CHECK(bspr::binary_entropy(0.5) == 1.0);
}

TEST_CASE("binary_entropy reference values") {
  CHECK(std::fabs(bspr::binary_entropy(0.1) - 0.46899559358928122) <= 5e-16);
  CHECK(std::fabs(bspr::binary_entropy(0.05) - 0.28639695711595613) <= 5e-16);
  CHECK(std::fabs(bspr::binary_entropy(0.3) - 0.88129089923069262) <= 5e-16);
  CHECK(std::fabs(bspr::binary_entropy(0.18) - 0.68007704572827984) <= 5e-16);
}

TEST_CASE("binary_entropy symmetry and concavity shape") {
  for (int i = 1; i < 50; ++i) {
    const double p = i / 100.0;
    CHECK(bspr::binary_entropy(p) == doctest::Approx(bspr::binary_entropy(1.0 - p)).epsilon(1e-14));
    CHECK(bspr::binary_entropy(p) < bspr::binary_entropy(p + 0.01) + 1e-15);
    CHECK(bspr::binary_entropy(p) > 0.0);
    CHECK(bspr::binary_entropy(p) < 1.0);
  }
}

TEST_CASE("binary_entropy domain") {
  CHECK_THROWS_AS(bspr::binary_entropy(-1e-9), std::domain_error);
  CHECK_THROWS_AS(bspr::binary_entropy(1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(bspr::binary_entropy(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("log_add_exp basic identities") {
  CHECK(bspr::log_add_exp(-kInf, -kInf) == -kInf);
  CHECK(bspr::log_add_exp(-kInf, 0.25) == 0.25);
  CHECK(bspr::log_add_exp(0.25, -kInf) == 0.25);
  CHECK(bspr::log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // Moderate magnitudes match the naive formula.
  for (double a : {-3.0, -0.5, 0.0, 1.25, 4.0}) {
    for (double b : {-2.0, 0.0, 0.75, 3.5}) {
      CHECK(bspr::log_add_exp(a, b) ==
            doctest::Approx(std::log(std::exp(a) + std::exp(b))).epsilon(1e-14));
    }
  }
}

TEST_CASE("log_add_exp extreme magnitudes stay finite and ordered") {
  const double big = 700.0, small = -745.0;
  CHECK(bspr::log_add_exp(big, small) == big);
  CHECK(bspr::log_add_exp(small, big) == big);
  // Never below max(a, b), at most max + log 2.
  for (double a : {-800.0, -1.0, 0.0, 500.0}) {
    for (double b : {-900.0, -2.0, 1.0, 700.0}) {
      const double v = bspr::log_add_exp(a, b);
      const double hi = std::max(a, b);
      CHECK(v >= hi);
      CHECK(v <= hi + std::log(2.0) + 1e-15);
    }
  }
}

TEST_CASE("effective_crossover reference values") {
  CHECK(bspr::effective_crossover(0.0, 0.0) == 0.0);
  CHECK(bspr::effective_crossover(0.1, 0.1) == doctest::Approx(0.18).epsilon(1e-14));
  CHECK(bspr::effective_crossover(0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(bspr::effective_crossover(0.3, 0.0) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("effective_crossover half-input branch is exact") {
  for (double a : {0.0, 0.1, 0.25, 0.49, 0.5}) {
    CHECK(bspr::effective_crossover(a, 0.5) == 0.5);
    CHECK(bspr::effective_crossover(0.5, a) == 0.5);
  }
}

TEST_CASE("effective_crossover algebraic form, range and monotonicity") {
  for (int i = 0; i <= 50; i += 5) {
    for (int j = 0; j <= 50; j += 5) {
      const double a = i / 100.0, b = j / 100.0;
      const double v = bspr::effective_crossover(a, b);
      CHECK(v == doctest::Approx(a * (1.0 - 2.0 * b) + b).epsilon(1e-13));
      CHECK(v >= std::max(a, b) - 1e-15);  // cascading never cleans the channel
      CHECK(v <= 0.5);
      CHECK(v == bspr::effective_crossover(b, a));  // commutative bit for bit
      if (i + 5 <= 50) CHECK(bspr::effective_crossover((i + 5) / 100.0, b) >= v - 1e-15);
    }
  }
}

TEST_CASE("effective_crossover domain") {
  CHECK_THROWS_AS(bspr::effective_crossover(-0.01, 0.1), std::domain_error);
  CHECK_THROWS_AS(bspr::effective_crossover(0.1, 0.51), std::domain_error);
  CHECK_THROWS_AS(bspr::effective_crossover(0.6, 0.6), std::domain_error);
}

TEST_CASE("NetworkSpec construction and accessors") {
  bspr::NetworkSpec net({{0.1, 0.2}, {0.0, 0.5}, {0.3, 0.3}});
  CHECK(net.size() == 3);
  CHECK(net.link(0).ps == 0.1);
  CHECK(net.link(1).pd == 0.5);
  CHECK_THROWS_AS(net.link(3), std::out_of_range);

  const bspr::EffectiveChannel eff = net.effective();
  CHECK(eff.size() == 3);
  CHECK(eff[0] == doctest::Approx(bspr::effective_crossover(0.1, 0.2)).epsilon(1e-15));
  CHECK(eff[1] == 0.5);
  CHECK(eff[2] == doctest::Approx(0.3 + 0.3 - 2 * 0.09).epsilon(1e-14));
}

TEST_CASE("NetworkSpec rejects bad links") {
  CHECK_THROWS_AS(bspr::NetworkSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(bspr::NetworkSpec({{0.6, 0.1}}), std::domain_error);
  CHECK_THROWS_AS(bspr::NetworkSpec({{0.1, -0.1}}), std::domain_error);
  CHECK_THROWS_AS(bspr::NetworkSpec({{0.1, 0.1}, {0.2, 0.51}}), std::domain_error);
}

TEST_CASE("SymmetricSpec expands to identical links") {
  bspr::SymmetricSpec sym(4, 0.1, 0.3);
  CHECK(sym.effective_p() == doctest::Approx(bspr::effective_crossover(0.1, 0.3)).epsilon(1e-15));
  const bspr::NetworkSpec net = sym.expand();
  CHECK(net.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(net.link(i).ps == 0.1);
    CHECK(net.link(i).pd == 0.3);
  }
}

TEST_CASE("SymmetricSpec requires strictly sub-half crossovers") {
  CHECK_THROWS_AS(bspr::SymmetricSpec(3, 0.5, 0.1), std::domain_error);
  CHECK_THROWS_AS(bspr::SymmetricSpec(3, 0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(bspr::SymmetricSpec(0, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(bspr::SymmetricSpec(-2, 0.1, 0.1), std::invalid_argument);
  CHECK_NOTHROW(bspr::SymmetricSpec(1, 0.0, 0.499));
}

TEST_CASE("EffectiveChannel p_max") {
  bspr::EffectiveChannel ch({0.1, 0.4, 0.25});
  CHECK(ch.p_max({0}) == 0.1);
  CHECK(ch.p_max({0, 2}) == 0.25);
  CHECK(ch.p_max({0, 1, 2}) == 0.4);
  CHECK_THROWS_AS(ch.p_max({}), std::invalid_argument);
  CHECK_THROWS_AS(ch.p_max({3}), std::out_of_range);
  CHECK_THROWS_AS(bspr::EffectiveChannel({0.1, 0.6}), std::domain_error);
}

TEST_CASE("RelayPartition complement and validation") {
  bspr::RelayPartition part(5, {3, 1});
  CHECK(part.total() == 5);
  CHECK(part.decoding() == std::vector<std::size_t>{1, 3});
  CHECK(part.forwarding() == std::vector<std::size_t>{0, 2, 4});

  bspr::RelayPartition none(3, {});
  CHECK(none.decoding().empty());
  CHECK(none.forwarding() == std::vector<std::size_t>{0, 1, 2});

  bspr::RelayPartition all(3, {0, 1, 2});
  CHECK(all.forwarding().empty());

  CHECK_THROWS_AS(bspr::RelayPartition(3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(bspr::RelayPartition(3, {3}), std::out_of_range);
}

TEST_CASE("checked_subset sorts, validates, honours allow_empty") {
  CHECK(bspr::checked_subset({2, 0}, 3, false) == std::vector<std::size_t>{0, 2});
  CHECK(bspr::checked_subset({}, 3, true).empty());
  CHECK_THROWS_AS(bspr::checked_subset({}, 3, false), std::invalid_argument);
  CHECK_THROWS_AS(bspr::checked_subset({1, 1}, 3, false), std::invalid_argument);
  CHECK_THROWS_AS(bspr::checked_subset({5}, 3, false), std::out_of_range);
}

TEST_CASE("scheme and exactness names") {
  CHECK(std::string(bspr::to_string(bspr::Scheme::cut_set)) == "cut-set");
  CHECK(std::string(bspr::to_string(bspr::Scheme::forwarding)) == "forwarding");
  CHECK(std::string(bspr::to_string(bspr::Scheme::decoding)) == "decoding");
  CHECK(std::string(bspr::to_string(bspr::Scheme::hybrid)) == "hybrid");
  CHECK(std::string(bspr::to_string(bspr::Scheme::decode_ceiling)) == "decode-ceiling");
  CHECK(std::string(bspr::to_string(bspr::Scheme::trivial)) == "trivial");
  CHECK(std::string(bspr::to_string(bspr::Exactness::exact)) == "exact");
  CHECK(std::string(bspr::to_string(bspr::Exactness::lower_bound)) == "lower-bound");
  CHECK(std::string(bspr::to_string(bspr::Exactness::upper_bound)) == "upper-bound");
  CHECK(std::string(bspr::to_string(bspr::Exactness::estimate)) == "estimate");
}

TEST_CASE("resolve_worker_count precedence") {
  CHECK(bspr::resolve_worker_count(3) == 3);
  CHECK(bspr::resolve_worker_count(1) == 1);

  // Environment fallback, then hardware default; always in [1, 1024].
  const char* saved = std::getenv("BSPR_THREADS");
  const std::string saved_copy = saved ? saved : "";
  setenv("BSPR_THREADS", "7", 1);
  CHECK(bspr::resolve_worker_count(0) == 7);
  setenv("BSPR_THREADS", "not-a-number", 1);
  const int fallback = bspr::resolve_worker_count(0);
  CHECK(fallback >= 1);
  CHECK(fallback <= 1024);
  setenv("BSPR_THREADS", "0", 1);  // out of range: ignored
  CHECK(bspr::resolve_worker_count(0) >= 1);
  unsetenv("BSPR_THREADS");
  const int dflt = bspr::resolve_worker_count(0);
  CHECK(dflt >= 1);
  CHECK(dflt <= 1024);
  if (saved) setenv("BSPR_THREADS", saved_copy.c_str(), 1);
}

}  // TEST_SUITE("core")
