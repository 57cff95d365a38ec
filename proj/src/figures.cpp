#include "cpf/figures.hpp"

#include <sstream>

namespace cpf {

namespace {

constexpr std::size_t kMaxBoxesFig1 = 20;

std::string fidelity_column(const std::string& name, bool db) {
  return db ? name + "_dB" : name;
}

double fidelity_value(double f, bool db) { return db ? to_decibels(f) : f; }

// Pivots long-format sweep rows into one row per grid value.
Table pivot(const SweepSpec& spec, const std::vector<SweepRow>& rows, const FigureOptions& options,
            bool with_kappa) {
  Table t;
  t.columns.push_back(std::string(to_string(spec.variable)));
  for (auto p : spec.protocols) {
    std::string name = "F_" + std::string(to_string(p));
    for (auto& ch : name) {
      if (ch == '-') ch = '_';
    }
    t.columns.push_back(fidelity_column(name, options.db));
  }
  if (with_kappa) t.columns.push_back("kappa_star");

  const std::size_t np = spec.protocols.size();
  for (std::size_t g = 0; g < spec.grid.size(); ++g) {
    std::vector<Cell> row;
    if (spec.variable == SweepVariable::M) {
      row.emplace_back(static_cast<long long>(spec.grid[g]));
    } else {
      row.emplace_back(spec.grid[g]);
    }
    std::optional<double> kappa;
    for (std::size_t p = 0; p < np; ++p) {
      const auto& r = rows[g * np + p];
      row.emplace_back(fidelity_value(r.fidelity, options.db));
      if (r.kappa) kappa = r.kappa;
    }
    if (with_kappa) row.emplace_back(kappa.value_or(std::numeric_limits<double>::quiet_NaN()));
    t.rows.push_back(std::move(row));
  }
  t.parameters["base"] = to_json(spec.base);
  t.parameters["variable"] = std::string(to_string(spec.variable));
  t.parameters["db"] = options.db;
  return t;
}

Table sweep_figure(int id, const SweepSpec& spec, const FigureOptions& options, bool with_kappa) {
  const auto rows = sweep(spec, options.threads);
  Table t = pivot(spec, rows, options, with_kappa);
  t.command = "figure";
  t.parameters["figure"] = id;
  return t;
}

Scenario scenario(std::size_t m, double eta_b, double eta_t, double n_s, double copies = 1.0) {
  Scenario s;
  s.m = m;
  s.eta_b = eta_b;
  s.eta_t = eta_t;
  s.n_s = n_s;
  s.m_probes = copies;
  return s;
}

const std::vector<SweepProtocol> kStandard = {SweepProtocol::Classical, SweepProtocol::Bipartite,
                                              SweepProtocol::IdlerFree,
                                              SweepProtocol::IdlerFreeReversed};

Table figure7(const FigureOptions& options) {
  RegionSpec spec;
  spec.axes = RegionAxes::EtaBEtaT;
  spec.x = linspace(0.0, 1.0, options.resolution);
  spec.y = linspace(0.0, 1.0, options.resolution);
  spec.constants = scenario(2, 1.0, 1.0, 20.0);
  spec.mode = RegionMode::Certificate;

  spec.quantum = ProtocolKind::IdlerFree;
  const auto idler_free = region_scan(spec, options.threads);
  spec.quantum = ProtocolKind::Bipartite;
  const auto bipartite = region_scan(spec, options.threads);
  spec.quantum = ProtocolKind::Mixed;
  const auto mixed = region_scan(spec, options.threads);

  Table t;
  t.command = "figure";
  t.parameters["figure"] = 7;
  t.parameters["constants"] = to_json(spec.constants);
  t.parameters["mode"] = "certificate";
  t.columns = {"eta_b",
               "eta_t",
               fidelity_column("F_classical", options.db),
               fidelity_column("F_idler_free", options.db),
               fidelity_column("F_bipartite", options.db),
               fidelity_column("F_mixed", options.db),
               "kappa_star",
               "cert_idler_free",
               "cert_bipartite",
               "cert_mixed"};
  for (std::size_t i = 0; i < mixed.cells.size(); ++i) {
    const auto& a = idler_free.cells[i];
    const auto& b = bipartite.cells[i];
    const auto& c = mixed.cells[i];
    t.rows.push_back({a.x, a.y, fidelity_value(a.f_classical, options.db),
                      fidelity_value(a.f_quantum, options.db), fidelity_value(b.f_quantum, options.db),
                      fidelity_value(c.f_quantum, options.db),
                      c.kappa.value_or(std::numeric_limits<double>::quiet_NaN()),
                      static_cast<long long>(a.certificate), static_cast<long long>(b.certificate),
                      static_cast<long long>(c.certificate)});
  }
  return t;
}

Table region_figure(int id, const RegionSpec& spec, const FigureOptions& options) {
  Table t = region_table(region_scan(spec, options.threads));
  t.command = "figure";
  t.parameters["figure"] = id;
  return t;
}

}  // namespace

RegionSpec figure6_spec(std::size_t resolution) {
  RegionSpec spec;
  spec.axes = RegionAxes::EtaBEtaT;
  spec.x = linspace(0.0, 1.0, resolution);
  spec.y = linspace(0.0, 1.0, resolution);
  spec.constants = scenario(2, 1.0, 1.0, 20.0, 20.0);
  spec.mode = RegionMode::LogRatio;
  spec.quantum = ProtocolKind::IdlerFree;
  return spec;
}

RegionSpec figure8_spec(std::size_t resolution) {
  RegionSpec spec;
  spec.axes = RegionAxes::EtaTNs;
  spec.x = linspace(0.7, 1.0, resolution);
  spec.y = linspace(1.0, 100.0, resolution);
  spec.constants = scenario(3, 1.0, 1.0, 1.0);
  spec.mode = RegionMode::LogRatio;
  spec.quantum = ProtocolKind::IdlerFree;
  spec.total_photons = 1800.0;
  return spec;
}

Table figure_table(int id, const FigureOptions& options) {
  if (options.resolution < 2) throw DomainError("figure resolution must be >= 2");
  const std::size_t n = options.resolution;
  SweepSpec spec;
  switch (id) {
    case 1: {
      spec.base = scenario(2, 0.2, 0.7, 1.0);
      spec.variable = SweepVariable::M;
      for (std::size_t m = 2; m <= kMaxBoxesFig1; ++m) spec.grid.push_back(static_cast<double>(m));
      spec.protocols = kStandard;
      return sweep_figure(id, spec, options, false);
    }
    case 2:
    case 3: {
      spec.base = scenario(3, id == 2 ? 0.95 : 0.05, 0.5, 50.0);
      spec.variable = SweepVariable::EtaT;
      spec.grid = linspace(0.0, 1.0, n);
      spec.protocols = kStandard;
      return sweep_figure(id, spec, options, false);
    }
    case 4: {
      spec.base = scenario(2, 0.9, 0.95, 1.0);
      spec.variable = SweepVariable::NS;
      spec.grid = logspace(1e-1, 1e5, n);
      spec.protocols = {SweepProtocol::Classical, SweepProtocol::Bipartite, SweepProtocol::IdlerFree};
      return sweep_figure(id, spec, options, false);
    }
    case 5: {
      spec.base = scenario(2, 0.55, 0.5, 50.0);
      spec.variable = SweepVariable::EtaT;
      spec.grid = linspace(0.0, 1.0, n);
      spec.protocols = {SweepProtocol::Classical, SweepProtocol::Bipartite, SweepProtocol::IdlerFree,
                        SweepProtocol::Mixed};
      return sweep_figure(id, spec, options, true);
    }
    case 6: return region_figure(id, figure6_spec(n), options);
    case 7: return figure7(options);
    case 8: return region_figure(id, figure8_spec(n), options);
    default: break;
  }
  std::ostringstream os;
  os << "unknown figure id " << id << " (expected 1.." << kFigureCount << ")";
  throw DomainError(os.str());
}

}  // namespace cpf
