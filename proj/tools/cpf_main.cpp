// cpf: command-line front end for channel-position-finding fidelities,
// error bounds, sweeps, advantage regions and figure data.
//
// Exit codes: 0 success, 2 usage or domain error, 1 numeric failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpf/bounds.hpp"
#include "cpf/figures.hpp"
#include "cpf/scan.hpp"
#include "cpf/serialize.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 1;

// Flat JSON object {"flag-name": value, ...} applied to the active subcommand.
// Command-line flags take precedence over file values.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      if (!subcommand_.empty()) item.parents = {subcommand_};
      item.name = key;
      const auto text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(text(v));
      } else if (value.is_boolean()) {
        item.inputs.push_back(value.get<bool>() ? "true" : "false");
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  std::string subcommand_;
};

struct ScenarioFlags {
  std::size_t m = 2;
  double eta_b = 0.9;
  double eta_t = 0.95;
  double n_s = 1.0;
  double copies = 1.0;
  std::optional<double> kappa;

  void add_to(CLI::App* app) {
    app->add_option("--m", m, "Number of boxes")->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    app->add_option("--eta-b", eta_b, "Background transmissivity")->check(CLI::Range(0.0, 1.0));
    app->add_option("--eta-t", eta_t, "Target transmissivity")->check(CLI::Range(0.0, 1.0));
    app->add_option("--ns", n_s, "Mean photons per box per channel use")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--M", copies, "Number of probes (channel-sequence uses)")
        ->check(CLI::Range(1.0, 1e12));
    app->add_option("--kappa", kappa, "Mixing parameter of the mixed strategy")
        ->check(CLI::Range(0.0, 1.0));
  }

  cpf::Scenario scenario() const {
    cpf::Scenario s;
    s.m = m;
    s.eta_b = eta_b;
    s.eta_t = eta_t;
    s.n_s = n_s;
    s.m_probes = copies;
    s.kappa = kappa;
    return s;
  }
};

struct OutputFlags {
  std::string format = "csv";
  std::string path;
  bool db = false;

  void add_to(CLI::App* app, bool with_db = true) {
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("-o,--output", path, "Output file (default: standard output)");
    if (with_db) app->add_flag("--db", db, "Report fidelities in decibels (10 log10 F)");
  }

  void write(const cpf::Table& table) const {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw CLI::FileError("cannot open output file " + path);
      os = &file;
    }
    if (format == "json") {
      cpf::write_json(*os, table);
    } else {
      cpf::write_csv(*os, table);
    }
  }
};

std::string first_subcommand(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && arg[0] != '-') return arg;
    if (arg == "--config" || arg == "--threads") ++i;
  }
  return {};
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// --- fidelity -----------------------------------------------------------------

cpf::Table run_fidelity(const ScenarioFlags& flags, const std::string& protocol, bool direct, bool db) {
  const cpf::Scenario s = flags.scenario();
  cpf::validate(s);

  struct Request {
    std::string name;
    cpf::ProtocolKind kind;
    bool reversed;
  };
  std::vector<Request> requests;
  if (protocol == "all") {
    requests = {{"classical", cpf::ProtocolKind::Classical, false},
                {"bipartite", cpf::ProtocolKind::Bipartite, false},
                {"idler-free", cpf::ProtocolKind::IdlerFree, false},
                {"mixed", cpf::ProtocolKind::Mixed, false}};
    if (s.m > 2) requests.push_back({"idler-free-reversed", cpf::ProtocolKind::IdlerFree, true});
  } else if (protocol == "idler-free-reversed") {
    requests = {{protocol, cpf::ProtocolKind::IdlerFree, true}};
  } else {
    requests = {{protocol, *cpf::parse_protocol(protocol), false}};
  }

  cpf::Table t;
  t.command = "fidelity";
  t.parameters["scenario"] = cpf::to_json(s);
  t.parameters["direct"] = direct;
  t.parameters["db"] = db;
  t.columns = {"protocol", "path", db ? "F_dB" : "F", "kappa", "min_symplectic_eigenvalue",
               "perr_upper", "perr_lower", "warnings"};

  cpf::FidelityOptions options;
  options.force_direct = direct;
  options.diagnostics = true;
  for (const auto& r : requests) {
    cpf::Scenario point = r.reversed ? cpf::swapped(s) : s;
    std::optional<double> kappa;
    if (r.kind == cpf::ProtocolKind::Mixed) {
      if (!point.kappa) point.kappa = cpf::optimize_kappa(point).kappa;
      kappa = point.kappa;
    }
    cpf::FidelityReport report;
    if (r.kind == cpf::ProtocolKind::Mixed && !direct && (*kappa == 0.0 || *kappa == 1.0)) {
      // The endpoints are the classical and idler-free probes.
      cpf::Scenario endpoint = point;
      endpoint.kappa.reset();
      report = cpf::output_fidelity(
          endpoint, *kappa == 0.0 ? cpf::ProtocolKind::Classical : cpf::ProtocolKind::IdlerFree, options);
    } else {
      report = cpf::output_fidelity(point, r.kind, options);
    }
    std::string warnings;
    for (const auto& w : report.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    t.rows.push_back({r.name, std::string(cpf::to_string(report.path)),
                      db ? cpf::to_decibels(report.value) : report.value, kappa.value_or(nan()),
                      report.min_symplectic_eigenvalue.value_or(nan()),
                      cpf::perr_upper(report.value, s.m, s.m_probes),
                      cpf::perr_lower(report.value, s.m, s.m_probes), warnings});
  }
  return t;
}

// --- kappa --------------------------------------------------------------------

cpf::Table run_kappa(const ScenarioFlags& flags) {
  cpf::Scenario s = flags.scenario();
  s.kappa.reset();
  cpf::validate(s);
  const auto best = cpf::optimize_kappa(s);
  const double f_classical = cpf::classical_fidelity(s.eta_b, s.eta_t, s.n_s);
  const double f_idler_free = cpf::output_fidelity(s, cpf::ProtocolKind::IdlerFree).value;
  cpf::Table t;
  t.command = "kappa";
  t.parameters["scenario"] = cpf::to_json(s);
  t.columns = {"kappa_star", "F_mixed", "F_classical", "F_idler_free", "cert_vs_classical",
               "cert_vs_idler_free"};
  t.rows.push_back({best.kappa, best.fidelity, f_classical, f_idler_free,
                    static_cast<long long>(cpf::advantage_certificate(best.fidelity, f_classical)),
                    static_cast<long long>(cpf::advantage_certificate(best.fidelity, f_idler_free))});
  return t;
}

std::vector<double> axis(double from, double to, std::size_t points, bool log, const std::vector<double>& values) {
  if (!values.empty()) return values;
  return log ? cpf::logspace(from, to, points) : cpf::linspace(from, to, points);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel position finding: output fidelities, error bounds and advantage regions"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<JsonConfig>(first_subcommand(argc, argv)));
  app.set_config("--config", "", "JSON file of flag values (flags on the command line win)");

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads for scans (0: OpenMP default)")
      ->envname("CPF_THREADS")
      ->check(CLI::NonNegativeNumber);

  // fidelity
  auto* fid = app.add_subcommand("fidelity", "One-shot output fidelities and M-copy error bounds");
  ScenarioFlags fid_scenario;
  OutputFlags fid_out;
  std::string fid_protocol = "all";
  bool fid_direct = false;
  fid_scenario.add_to(fid);
  fid_out.add_to(fid);
  fid->add_option("--protocol", fid_protocol, "Protocol or 'all'")
      ->check(CLI::IsMember({"all", "classical", "bipartite", "idler-free", "mixed", "idler-free-reversed"}));
  fid->add_flag("--direct", fid_direct, "Evaluate on the full m-mode outputs");

  // figure
  auto* fig = app.add_subcommand("figure", "Data behind one of the reference figures");
  int fig_id = 0;
  std::size_t fig_resolution = 201;
  OutputFlags fig_out;
  fig->add_option("--id", fig_id, "Figure number (1-8)")->required();
  fig->add_option("--resolution", fig_resolution, "Points per continuous axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  fig_out.add_to(fig);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Fidelities along one parameter");
  ScenarioFlags swp_scenario;
  OutputFlags swp_out;
  std::string swp_variable = "eta_t";
  double swp_from = 0.0;
  double swp_to = 1.0;
  std::size_t swp_points = 101;
  bool swp_log = false;
  std::vector<double> swp_values;
  std::vector<std::string> swp_protocols = {"classical", "bipartite", "idler-free"};
  swp_scenario.add_to(swp);
  swp_out.add_to(swp);
  swp->add_option("--variable", swp_variable, "Swept parameter")
      ->check(CLI::IsMember({"eta_t", "eta_b", "m", "n_s", "kappa"}));
  swp->add_option("--from", swp_from, "First grid value");
  swp->add_option("--to", swp_to, "Last grid value");
  swp->add_option("--points", swp_points, "Grid points")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  swp->add_flag("--log", swp_log, "Logarithmic spacing");
  swp->add_option("--values", swp_values, "Explicit grid values (overrides --from/--to/--points)");
  swp->add_option("--protocols", swp_protocols, "Protocols to evaluate")
      ->check(CLI::IsMember({"classical", "bipartite", "idler-free", "idler-free-reversed", "mixed"}));

  // region
  auto* reg = app.add_subcommand("region", "Advantage region over a 2-D grid");
  ScenarioFlags reg_scenario;
  OutputFlags reg_out;
  std::string reg_axes = "eta_b,eta_t";
  std::string reg_mode = "log-ratio";
  std::string reg_quantum = "idler-free";
  double x_from = 0.0, x_to = 1.0, y_from = 0.0, y_to = 1.0;
  std::size_t x_points = 201, y_points = 201;
  std::optional<double> total_photons;
  reg_scenario.add_to(reg);
  reg_out.add_to(reg, false);
  reg->add_option("--axes", reg_axes, "Grid axes")->check(CLI::IsMember({"eta_b,eta_t", "eta_t,n_s"}));
  reg->add_option("--mode", reg_mode, "Cell quantity")->check(CLI::IsMember({"log-ratio", "certificate"}));
  reg->add_option("--quantum", reg_quantum, "Quantum protocol compared with the classical one")
      ->check(CLI::IsMember({"idler-free", "bipartite", "mixed"}));
  reg->add_option("--x-from", x_from);
  reg->add_option("--x-to", x_to);
  reg->add_option("--x-points", x_points)->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  reg->add_option("--y-from", y_from);
  reg->add_option("--y-to", y_to);
  reg->add_option("--y-points", y_points)->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  reg->add_option("--total-photons", total_photons, "Fixed total m M n_s; M follows n_s per cell")
      ->check(CLI::PositiveNumber);

  // kappa
  auto* kap = app.add_subcommand("kappa", "Optimal mixing parameter of the mixed strategy");
  ScenarioFlags kap_scenario;
  OutputFlags kap_out;
  kap_scenario.add_to(kap);
  kap_out.add_to(kap, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fid) {
      fid_out.write(run_fidelity(fid_scenario, fid_protocol, fid_direct, fid_out.db));
    } else if (*fig) {
      cpf::FigureOptions options;
      options.resolution = fig_resolution;
      options.threads = threads;
      options.db = fig_out.db;
      fig_out.write(cpf::figure_table(fig_id, options));
    } else if (*swp) {
      cpf::SweepSpec spec;
      spec.base = swp_scenario.scenario();
      spec.variable = *cpf::parse_sweep_variable(swp_variable);
      spec.grid = axis(swp_from, swp_to, swp_points, swp_log, swp_values);
      for (const auto& p : swp_protocols) spec.protocols.push_back(*cpf::parse_sweep_protocol(p));
      swp_out.write(cpf::sweep_table(spec, cpf::sweep(spec, threads), swp_out.db));
    } else if (*reg) {
      cpf::RegionSpec spec;
      spec.axes = reg_axes == "eta_b,eta_t" ? cpf::RegionAxes::EtaBEtaT : cpf::RegionAxes::EtaTNs;
      spec.x = cpf::linspace(x_from, x_to, x_points);
      spec.y = cpf::linspace(y_from, y_to, y_points);
      spec.constants = reg_scenario.scenario();
      spec.mode = reg_mode == "log-ratio" ? cpf::RegionMode::LogRatio : cpf::RegionMode::Certificate;
      spec.quantum = *cpf::parse_protocol(reg_quantum);
      spec.total_photons = total_photons;
      reg_out.write(cpf::region_table(cpf::region_scan(spec, threads)));
    } else if (*kap) {
      kap_out.write(run_kappa(kap_scenario));
    }
  } catch (const cpf::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cpf::InvalidState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
