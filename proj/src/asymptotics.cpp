#include "bspr/asymptotics.hpp"

#include <cmath>
#include <string>

#include "bspr/mi.hpp"

namespace bspr {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Pr{Bin(k, p) >= lo}, 0 < p <= 1/2, summed smallest term first: beyond the
// mean the terms decay in j, so iterating j = k down to lo adds increasing
// magnitudes.
double binomial_upper_tail(int k, double p, int lo) {
  if (lo > k) return 0.0;
  if (lo <= 0) return 1.0;
  if (p == 0.0) return 0.0;
  const double lnp = std::log(p);
  const double lnq = std::log1p(-p);
  const double lgk = std::lgamma(static_cast<double>(k) + 1.0);
  double sum = 0.0;
  double comp = 0.0;  // Kahan
  for (int j = k; j >= lo; --j) {
    const double lnc = lgk - std::lgamma(static_cast<double>(j) + 1.0) -
                       std::lgamma(static_cast<double>(k - j) + 1.0);
    const double term = std::exp(lnc + j * lnp + (k - j) * lnq);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::min(sum, 1.0);
}

void check_count(int k, const char* what) {
  if (k < 1) throw std::domain_error(std::string(what) + ": K must be >= 1");
}

}  // namespace

RelayCountResult min_relays_within(double p, double zeta) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error("min_relays_within: p must lie in (0, 1/2), got " +
                            std::to_string(p));
  }
  if (!(zeta > 0.0)) {
    throw std::domain_error("min_relays_within: zeta must be positive");
  }
  for (int k = 1;; ++k) {
    const double gap = forwarding_rate_gap(k, p);
    if (gap <= zeta) {
      RelayCountResult r;
      r.count = k;
      r.achieved_value = 1.0 - gap;
      r.target = zeta;
      return r;
    }
  }
}

double hoeffding_pe_bound(int k, double p) {
  check_count(k, "hoeffding_pe_bound");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error("hoeffding_pe_bound: p must lie in [0, 1/2]");
  }
  const double m = 0.5 - p;
  return std::exp(-2.0 * k * m * m);
}

RelayCountResult relays_for_error(double p, double epsilon) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::domain_error("relays_for_error: p must lie in [0, 1/2), got " +
                            std::to_string(p));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("relays_for_error: epsilon must lie in (0, 1)");
  }
  const double m = 0.5 - p;
  const double x = -std::log(epsilon) / (2.0 * m * m);
  int count = static_cast<int>(std::ceil(x));
  if (count < 1) count = 1;
  // Certify minimality in the same arithmetic the bound uses.
  while (count < x) ++count;
  while (count > 1 && count - 1 >= x) --count;
  RelayCountResult r;
  r.count = count;
  r.achieved_value = hoeffding_pe_bound(count, p);
  r.target = epsilon;
  return r;
}

double exact_majority_pe(int k, double p) {
  check_count(k, "exact_majority_pe");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error("exact_majority_pe: p must lie in [0, 1/2]");
  }
  if (k % 2 == 1) {
    return binomial_upper_tail(k, p, (k + 1) / 2);
  }
  // Even K: a noise tie (exactly K/2 flips) decodes to 0, so it errs only
  // when the sent bit is 1; average the two conditional tails.
  const int half = k / 2;
  return 0.5 * (binomial_upper_tail(k, p, half + 1) + binomial_upper_tail(k, p, half));
}

double asymptotic_rate_approx(int k, double p) {
  check_count(k, "asymptotic_rate_approx");
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error("asymptotic_rate_approx: p must lie in (0, 1/2]");
  }
  if (p == 0.5) return 0.0;  // exponent 0, x = 1, 1 - log2(2)
  // (p/(1-p))^(K(1-2p)) in the log domain.
  const double e = k * (1.0 - 2.0 * p) * (std::log(p) - std::log1p(-p));
  const double x = std::exp(e);
  return 1.0 - std::log1p(x) / kLn2;
}

double uncoded_condition_value(const EffectiveChannel& net,
                               const std::vector<std::size_t>& subset) {
  const std::vector<std::size_t> s = checked_subset(subset, net.size(), /*allow_empty=*/false);
  const double m = 0.5 - net.p_max(s);
  return static_cast<double>(s.size()) * m * m;
}

}  // namespace bspr
