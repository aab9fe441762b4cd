#include "bspr/network_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bspr {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("network file: " + what);
}

void require_keys(const ordered_json& obj, std::initializer_list<const char*> keys,
                  const char* where) {
  for (const char* k : keys) {
    if (!obj.contains(k)) fail(std::string(where) + " is missing key \"" + k + "\"");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(std::string(where) + " has unknown key \"" + item.key() + "\"");
  }
}

double require_number(const ordered_json& obj, const char* key, const char* where) {
  const ordered_json& v = obj.at(key);
  if (!v.is_number()) fail(std::string(where) + " key \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

NetworkFile parse_network_file(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object() || root.size() != 1) {
    fail("top level must be an object with exactly one of \"symmetric\" or \"relays\"");
  }

  if (root.contains("symmetric")) {
    const ordered_json& s = root["symmetric"];
    if (!s.is_object()) fail("\"symmetric\" must be an object");
    require_keys(s, {"K", "ps", "pd"}, "\"symmetric\"");
    if (!s["K"].is_number_integer()) fail("\"symmetric\" key \"K\" must be an integer");
    const auto k = s["K"].get<std::int64_t>();
    if (k < 1 || k > 1000000) fail("\"symmetric\" key \"K\" must lie in [1, 1000000]");
    return NetworkFile{SymmetricSpec(static_cast<int>(k), require_number(s, "ps", "\"symmetric\""),
                                     require_number(s, "pd", "\"symmetric\""))};
  }
  if (root.contains("relays")) {
    const ordered_json& arr = root["relays"];
    if (!arr.is_array() || arr.empty()) fail("\"relays\" must be a nonempty array");
    std::vector<RelayLink> links;
    links.reserve(arr.size());
    for (const ordered_json& r : arr) {
      if (!r.is_object()) fail("every relay must be an object");
      require_keys(r, {"ps", "pd"}, "relay");
      links.push_back(RelayLink{require_number(r, "ps", "relay"), require_number(r, "pd", "relay")});
    }
    return NetworkFile{NetworkSpec(std::move(links))};
  }
  fail("top level must contain \"symmetric\" or \"relays\"");
}

NetworkFile read_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network_file(buf.str());
}

std::string write_network_file(const NetworkFile& file) {
  ordered_json root;
  if (const SymmetricSpec* s = file.symmetric()) {
    ordered_json sym;
    sym["K"] = s->k;
    sym["ps"] = s->ps;
    sym["pd"] = s->pd;
    root["symmetric"] = std::move(sym);
  } else {
    ordered_json arr = ordered_json::array();
    for (const RelayLink& l : std::get<NetworkSpec>(file.spec).links()) {
      ordered_json r;
      r["ps"] = l.ps;
      r["pd"] = l.pd;
      arr.push_back(std::move(r));
    }
    root["relays"] = std::move(arr);
  }
  return root.dump(2) + "\n";
}

}  // namespace bspr
