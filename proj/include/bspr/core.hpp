#pragma once
// Core types and scalar primitives for binary-symmetric parallel-relay networks.
// Probabilities are IEEE doubles; crossover probabilities live in [0, 1/2].
// All relay indices in this library are 0-based; 1-based numbering appears
// only at the CLI / file-format boundary.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bspr {

// Thrown when an exact mode is refused (enumeration or exhaustive search too
// large), as opposed to a domain error on the inputs themselves.
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Binary entropy in bits. H(0) = H(1) = 0 by the 0*log0 = 0 convention.
// Throws std::domain_error outside [0, 1].
double binary_entropy(double p);

// Natural-log-domain add: log(exp(a) + exp(b)), stable for any magnitudes,
// with log(0) represented as -infinity.
double log_add_exp(double a, double b);

// Crossover probability of the cascade of BSC(a) and BSC(b):
// a(1-b) + (1-a)b. Inputs and result lie in [0, 1/2]; throws
// std::domain_error otherwise. Exact 1/2 inputs yield exactly 1/2.
double effective_crossover(double a, double b);

// Worker count used by chunked computations: `requested` if positive, else
// the BSPR_THREADS environment variable, else a hardware-based default.
// Worker count never affects computed results, only wall time.
int resolve_worker_count(int requested);

struct RelayLink {
  double ps;  // source -> relay crossover
  double pd;  // relay -> destination crossover
};

class EffectiveChannel;

// A parallel-relay network: K independent two-hop binary symmetric paths.
class NetworkSpec {
 public:
  explicit NetworkSpec(std::vector<RelayLink> links);

  std::size_t size() const { return links_.size(); }
  const std::vector<RelayLink>& links() const { return links_; }
  const RelayLink& link(std::size_t i) const;

  // Per-relay end-to-end crossover probabilities under plain forwarding.
  EffectiveChannel effective() const;

 private:
  std::vector<RelayLink> links_;
};

// Symmetric network: every relay shares the same (ps, pd), both strictly
// below 1/2 so the symmetric closed forms stay defined.
struct SymmetricSpec {
  SymmetricSpec(int k, double ps, double pd);

  int k;
  double ps;
  double pd;

  NetworkSpec expand() const;
  double effective_p() const { return effective_crossover(ps, pd); }
};

// End-to-end crossover probabilities of the forwarded paths, each in [0, 1/2].
class EffectiveChannel {
 public:
  explicit EffectiveChannel(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](std::size_t i) const { return p_.at(i); }

  // Largest crossover within a nonempty subset of valid indices.
  double p_max(const std::vector<std::size_t>& subset) const;

 private:
  std::vector<double> p_;
};

// Split of the relays into a decoding set and its forwarding complement.
class RelayPartition {
 public:
  RelayPartition(std::size_t total, std::vector<std::size_t> decoding);

  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& decoding() const { return decoding_; }
  std::vector<std::size_t> forwarding() const;

 private:
  std::size_t total_;
  std::vector<std::size_t> decoding_;  // sorted ascending, unique
};

enum class Scheme { cut_set, forwarding, decoding, hybrid, decode_ceiling, trivial };
enum class Exactness { exact, lower_bound, upper_bound, estimate };

const char* to_string(Scheme s);
const char* to_string(Exactness e);

// A rate (or rate bound) in bits per channel use together with how it was
// obtained. `binding` names the active min-term for min-composed rates.
struct RateReport {
  Scheme scheme = Scheme::trivial;
  double value = 0.0;
  std::string binding;
  Exactness exactness = Exactness::exact;
  double ci95_half_width = 0.0;  // meaningful only for Exactness::estimate
};

// Validates that `subset` holds unique in-range indices and returns a sorted
// copy. Throws std::invalid_argument / std::out_of_range. Empty subsets are
// rejected unless allow_empty.
std::vector<std::size_t> checked_subset(const std::vector<std::size_t>& subset,
                                        std::size_t total, bool allow_empty);

}  // namespace bspr
