#pragma once
// JSON file format for network instances. Two forms, exactly one per file:
//   { "symmetric": { "K": 8, "ps": 0.1, "pd": 0.3 } }
//   { "relays": [ { "ps": 0.0125, "pd": 0.3 }, ... ] }
// Parsing is strict: unknown or missing keys are errors, and all values must
// pass the domain checks of the core types. Writing is canonical (fixed key
// order, two-space indent, trailing newline), so write(parse(write(x))) is
// byte-identical to write(x).

#include <string>
#include <variant>

#include "bspr/core.hpp"

namespace bspr {

struct NetworkFile {
  std::variant<SymmetricSpec, NetworkSpec> spec;

  bool is_symmetric() const { return std::holds_alternative<SymmetricSpec>(spec); }
  const SymmetricSpec* symmetric() const { return std::get_if<SymmetricSpec>(&spec); }

  // The network instance, expanding the symmetric form.
  NetworkSpec network() const {
    if (const SymmetricSpec* s = symmetric()) return s->expand();
    return std::get<NetworkSpec>(spec);
  }
};

// Throws std::runtime_error (malformed JSON / schema violations) or the core
// types' domain errors (out-of-range probabilities).
NetworkFile parse_network_file(const std::string& text);

NetworkFile read_network_file(const std::string& path);

std::string write_network_file(const NetworkFile& file);

}  // namespace bspr
