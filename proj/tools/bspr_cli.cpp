// bspr: command-line front end for binary-symmetric parallel-relay network
// analysis. JSON on stdout for program-facing commands, CSV for figure data,
// one-line "error: ..." diagnostics on stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bspr/asymptotics.hpp"
#include "bspr/core.hpp"
#include "bspr/mi.hpp"
#include "bspr/network_file.hpp"
#include "bspr/rates.hpp"
#include "bspr/simulator.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty()) {
    throw std::runtime_error(std::string(what) + ": not a number: \"" + tok + "\"");
  }
  return v;
}

std::vector<std::size_t> parse_subset_1based(const std::string& s) {
  std::vector<std::size_t> subset;
  for (const std::string& tok : split_commas(s)) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.empty() || v < 1) {
      throw std::runtime_error("subset: not a 1-based relay index: \"" + tok + "\"");
    }
    subset.push_back(static_cast<std::size_t>(v - 1));
  }
  return subset;
}

ordered_json indices_1based(const std::vector<std::size_t>& subset) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i : subset) arr.push_back(i + 1);
  return arr;
}

ordered_json report_json(const bspr::RateReport& r) {
  ordered_json j;
  j["scheme"] = bspr::to_string(r.scheme);
  j["value"] = r.value;
  j["binding"] = r.binding;
  j["exactness"] = bspr::to_string(r.exactness);
  if (r.exactness == bspr::Exactness::estimate) j["ci95_half_width"] = r.ci95_half_width;
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::size_t> order_by_ps(const bspr::NetworkSpec& net) {
  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.link(a).ps < net.link(b).ps;
  });
  return order;
}

int run_rates(const std::string& net_path) {
  const bspr::NetworkFile file = bspr::read_network_file(net_path);
  const bspr::NetworkSpec net = file.network();
  const bspr::EffectiveChannel eff = net.effective();
  ordered_json out = ordered_json::array();

  if (net.size() <= static_cast<std::size_t>(bspr::kEnumCapDefault)) {
    bspr::RateReport fw;
    fw.scheme = bspr::Scheme::forwarding;
    fw.value = bspr::mi_enumerate(eff.probabilities());
    fw.binding = "mi";
    fw.exactness = bspr::Exactness::exact;
    out.push_back(report_json(fw));
  } else {
    const bspr::ForwardingSubsetResult best = bspr::best_forwarding_subset(eff);
    bspr::RateReport fw;
    fw.scheme = bspr::Scheme::forwarding;
    fw.value = best.value;
    fw.binding = "degraded-subset";
    fw.exactness = bspr::Exactness::lower_bound;
    ordered_json j = report_json(fw);
    j["subset"] = indices_1based(best.subset);
    out.push_back(std::move(j));
  }

  const bspr::DecodingSearchResult dec = bspr::best_decoding_set(net);
  {
    bspr::RateReport r;
    r.scheme = bspr::Scheme::decoding;
    r.value = dec.rate;
    const double limit = *std::min_element(dec.per_relay_limit.begin(), dec.per_relay_limit.end());
    r.binding = dec.rate == limit ? "source-to-relay" : "relay-sum";
    r.exactness = bspr::Exactness::exact;
    ordered_json j = report_json(r);
    j["subset"] = indices_1based(dec.subset);
    out.push_back(std::move(j));
  }

  for (std::size_t i = 0; i < net.size(); ++i) {
    bspr::RateReport r;
    r.scheme = bspr::Scheme::decode_ceiling;
    r.value = bspr::relay_decode_ceiling(net, i);
    r.binding = "source-to-relay";
    r.exactness = bspr::Exactness::exact;
    ordered_json j = report_json(r);
    j["relay"] = i + 1;
    out.push_back(std::move(j));
  }

  if (const std::optional<double> cap = bspr::capacity_known(net)) {
    bspr::RateReport r;
    r.scheme = bspr::Scheme::decoding;
    r.value = *cap;
    r.binding = "finite-k-capacity";
    r.exactness = bspr::Exactness::exact;
    ordered_json j = report_json(r);
    if (const bspr::SymmetricSpec* sym = file.symmetric()) {
      j["k_prime"] = bspr::k_prime(sym->ps, sym->pd);
    }
    out.push_back(std::move(j));
  }

  emit(out);
  return 0;
}

int run_bounds(const std::string& net_path) {
  const bspr::NetworkFile file = bspr::read_network_file(net_path);
  const bspr::RateReport r = file.symmetric() ? bspr::cut_set_bound(*file.symmetric())
                                              : bspr::cut_set_bound(file.network());
  emit(report_json(r));
  return 0;
}

int run_hybrid_search(const std::string& net_path, const std::string& mode) {
  const bspr::NetworkFile file = bspr::read_network_file(net_path);
  const bspr::SearchMode m =
      mode == "exhaustive" ? bspr::SearchMode::exhaustive : bspr::SearchMode::prefix;
  const auto [part, report] = bspr::hybrid_search(file.network(), m);
  ordered_json out;
  out["decoding"] = indices_1based(part.decoding());
  out["forwarding"] = indices_1based(part.forwarding());
  out["report"] = report_json(report);
  emit(out);
  return 0;
}

int run_min_relays(double p, double zeta) {
  const bspr::RelayCountResult r = bspr::min_relays_within(p, zeta);
  ordered_json out;
  out["p"] = p;
  out["zeta"] = zeta;
  out["count"] = r.count;
  out["achieved_value"] = r.achieved_value;
  out["target"] = r.target;
  emit(out);
  return 0;
}

std::string relay_table_csv(const std::vector<std::string>& p_toks,
                            const std::vector<std::string>& eps_toks) {
  std::vector<double> ps, epss;
  for (const std::string& t : p_toks) ps.push_back(parse_double(t, "relay-table --p"));
  for (const std::string& t : eps_toks) epss.push_back(parse_double(t, "relay-table --eps"));
  std::string csv = "eps";
  for (const std::string& t : p_toks) csv += ",p" + t;
  csv += "\n";
  for (std::size_t r = 0; r < epss.size(); ++r) {
    csv += eps_toks[r];
    for (double p : ps) {
      csv += "," + std::to_string(bspr::relays_for_error(p, epss[r]).count);
    }
    csv += "\n";
  }
  return csv;
}

int run_relay_table(const std::string& p_list, const std::string& eps_list) {
  std::cout << relay_table_csv(split_commas(p_list), split_commas(eps_list));
  return 0;
}

int run_simulate(const std::string& net_path, std::uint64_t trials, std::uint64_t seed,
                 const std::string& decoder, std::uint64_t chunk, const std::string& subset_arg) {
  const bspr::NetworkFile file = bspr::read_network_file(net_path);
  bspr::SimConfig cfg{file.network(), trials, seed, bspr::DecoderKind::majority, {}, chunk};
  if (decoder == "majority") {
    cfg.decoder = bspr::DecoderKind::majority;
  } else if (decoder == "weighted-llr") {
    cfg.decoder = bspr::DecoderKind::weighted_llr;
  } else if (decoder == "degraded-majority") {
    cfg.decoder = bspr::DecoderKind::degraded_majority;
  } else {
    throw std::runtime_error("simulate: unknown decoder \"" + decoder +
                             "\" (majority | weighted-llr | degraded-majority)");
  }
  if (cfg.decoder == bspr::DecoderKind::degraded_majority) {
    if (subset_arg.empty()) {
      throw std::runtime_error("simulate: degraded-majority requires --subset");
    }
    cfg.subset = parse_subset_1based(subset_arg);
  } else if (!subset_arg.empty()) {
    throw std::runtime_error("simulate: --subset only applies to degraded-majority");
  }

  const bspr::SimResult r = bspr::simulate_uncoded(cfg);
  ordered_json out;
  out["decoder"] = decoder;
  if (!cfg.subset.empty()) out["subset"] = indices_1based(bspr::checked_subset(
      cfg.subset, file.network().size(), /*allow_empty=*/false));
  out["trials"] = r.trials;
  out["errors"] = r.errors;
  out["pe_hat"] = r.pe_hat;
  out["ci95_half_width"] = r.ci95_half_width;
  out["seed"] = r.seed;
  out["chunk_size"] = r.chunk_size;
  out["rate"] = r.rate;
  emit(out);
  return 0;
}

// The eight-relay study network: ps_i = 0.1 i / 8, pd = 0.3 for all relays.
bspr::NetworkSpec study_network() {
  std::vector<bspr::RelayLink> links;
  for (int i = 1; i <= 8; ++i) {
    links.push_back(bspr::RelayLink{0.1 * i / 8.0, 0.3});
  }
  return bspr::NetworkSpec(std::move(links));
}

std::string fig3_csv() {
  const bspr::NetworkSpec net = study_network();
  const bspr::EffectiveChannel eff = net.effective();
  const std::size_t k = net.size();
  const double fwd_all = bspr::mi_enumerate(eff.probabilities());
  const double cut = bspr::cut_set_bound(net).value;
  const std::vector<std::size_t> order = order_by_ps(net);

  std::string csv = "num_decoding,r_hybrid,r_forwarding_all,r_decoding_best,cut_set_ub\n";
  for (std::size_t m = 0; m <= k; ++m) {
    std::vector<std::size_t> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    const double hybrid = bspr::hybrid_rate(net, bspr::RelayPartition(k, prefix)).value;

    double dec_best = 0.0;  // no decoding set of size zero
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) subset.push_back(i);
      }
      dec_best = std::max(dec_best, bspr::decoding_rate(net, subset));
    }

    csv += std::to_string(m) + "," + fmt_sci(hybrid) + "," + fmt_sci(fwd_all) + "," +
           fmt_sci(dec_best) + "," + fmt_sci(cut) + "\n";
  }
  return csv;
}

std::string fig4_csv() {
  const std::pair<const char*, double> sweep[] = {
      {"0.1", 0.1}, {"0.2", 0.2}, {"0.3", 0.3}, {"0.4", 0.4}};
  std::string csv = "p,log10_zeta,k\n";
  for (const auto& [label, p] : sweep) {
    int k = 1;
    for (int j = 1; j <= 16; ++j) {
      const double zeta = std::pow(10.0, -j);
      while (bspr::forwarding_rate_gap(k, p) > zeta) ++k;
      csv += std::string(label) + "," + std::to_string(-j) + "," + std::to_string(k) + "\n";
    }
  }
  return csv;
}

std::string fig5_csv(int k_max, double ps, double pd) {
  const double p_eff = bspr::effective_crossover(ps, pd);
  const double src_limit = 1.0 - bspr::binary_entropy(ps);
  const double per_relay = 1.0 - bspr::binary_entropy(pd);
  std::string csv = "K,r_forwarding,r_decoding,cut_set_ub\n";
  for (int k = 1; k <= k_max; ++k) {
    const double fwd = bspr::mi_symmetric_forwarding(k, p_eff);
    const double dec = std::min(src_limit, k * per_relay);
    const double cut = bspr::cut_set_bound(bspr::SymmetricSpec(k, ps, pd)).value;
    csv += std::to_string(k) + "," + fmt_sci(fwd) + "," + fmt_sci(dec) + "," + fmt_sci(cut) + "\n";
  }
  return csv;
}

int run_figure(const std::string& name, const std::string& out_dir) {
  std::string csv;
  if (name == "fig3") {
    csv = fig3_csv();
  } else if (name == "fig4") {
    csv = fig4_csv();
  } else if (name == "fig5a") {
    csv = fig5_csv(20, 0.1, 0.1);
  } else if (name == "fig5b") {
    csv = fig5_csv(100, 0.05, 0.3);
  } else if (name == "table1") {
    csv = relay_table_csv({"0.1", "0.2", "0.3", "0.4"}, {"1e-5", "1e-10", "1e-50"});
  } else {
    throw std::runtime_error("figure: unknown name \"" + name +
                             "\" (fig3 | fig4 | fig5a | fig5b | table1)");
  }
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = std::filesystem::path(out_dir) / (name + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("figure: cannot write \"" + path.string() + "\"");
  out << csv;
  out.close();
  std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rates, capacity bounds, and bit-level simulation for binary-symmetric "
               "parallel-relay networks"};
  app.require_subcommand(1);

  std::string net_path, mode = "prefix", decoder = "majority", subset_arg;
  std::string p_list, eps_list, fig_name, out_dir = ".";
  double p = 0.0, zeta = 0.0;
  std::uint64_t trials = 0, seed = 0, chunk = 1u << 16;

  CLI::App* rates = app.add_subcommand("rates", "Scheme rates and known capacity for a network");
  rates->add_option("--net", net_path, "network JSON file")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "Cut-set capacity upper bound");
  bounds->add_option("--net", net_path, "network JSON file")->required();

  CLI::App* hybrid = app.add_subcommand("hybrid-search", "Best decode/forward split");
  hybrid->add_option("--net", net_path, "network JSON file")->required();
  hybrid->add_option("--mode", mode, "exhaustive | prefix")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "prefix"}));

  CLI::App* minr = app.add_subcommand("min-relays",
                                      "Smallest K within zeta bits of the 1-bit cap");
  minr->add_option("--p", p, "effective crossover probability")->required();
  minr->add_option("--zeta", zeta, "rate gap target in bits")->required();

  CLI::App* table = app.add_subcommand("relay-table",
                                       "Relay counts sufficient for target error probabilities");
  table->add_option("--p", p_list, "comma-separated crossover probabilities")->required();
  table->add_option("--eps", eps_list, "comma-separated error probabilities")->required();

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo uncoded transmission");
  sim->add_option("--net", net_path, "network JSON file")->required();
  sim->add_option("--trials", trials, "number of message bits")->required();
  sim->add_option("--seed", seed, "RNG seed (required: no silent entropy)")->required();
  sim->add_option("--decoder", decoder, "majority | weighted-llr | degraded-majority");
  sim->add_option("--subset", subset_arg, "1-based relay indices for degraded-majority");
  sim->add_option("--chunk", chunk, "trials per RNG substream chunk");

  CLI::App* figure = app.add_subcommand("figure", "Emit figure/table data as CSV");
  figure->add_option("name", fig_name, "fig3 | fig4 | fig5a | fig5b | table1")->required();
  figure->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }

  try {
    if (rates->parsed()) return run_rates(net_path);
    if (bounds->parsed()) return run_bounds(net_path);
    if (hybrid->parsed()) return run_hybrid_search(net_path, mode);
    if (minr->parsed()) return run_min_relays(p, zeta);
    if (table->parsed()) return run_relay_table(p_list, eps_list);
    if (sim->parsed()) return run_simulate(net_path, trials, seed, decoder, chunk, subset_arg);
    if (figure->parsed()) return run_figure(fig_name, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
