#include "cpf/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "cpf/bounds.hpp"
#include "scan_internal.hpp"

namespace cpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_monotone(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) {
    std::ostringstream os;
    os << what << " grid is empty";
    throw DomainError(os.str());
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError(std::string(what) + " grid has non-finite values");
  }
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
      std::ostringstream os;
      os << what << " grid must be strictly monotone";
      throw DomainError(os.str());
    }
  }
}

int thread_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

// --- minimization -----------------------------------------------------------

Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                double tol) {
  if (!(hi >= lo)) throw DomainError("golden-section bracket must satisfy lo <= hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

// --- mixed strategy ---------------------------------------------------------

double mixed_fidelity(const Scenario& s, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("kappa outside [0, 1]");
  if (kappa == 0.0) return classical_fidelity(s.eta_b, s.eta_t, s.n_s);
  if (kappa == 1.0) return output_fidelity(s, ProtocolKind::IdlerFree).value;
  Scenario mixed = s;
  mixed.kappa = kappa;
  return output_fidelity(mixed, ProtocolKind::Mixed).value;
}

KappaResult optimize_kappa(const Scenario& s) {
  validate(s);
  const auto grid = linspace(0.0, 1.0, kKappaGridPoints);
  std::vector<double> values(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = mixed_fidelity(s, grid[i]);
    if (values[i] < values[best] - kKappaTie) best = i;
  }
  KappaResult result{grid[best], values[best]};

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const auto refined =
      golden_section_minimize([&](double k) { return mixed_fidelity(s, k); }, lo, hi, kKappaTol);
  if (refined.value < result.fidelity - kKappaTie) result = {refined.x, refined.value};
  return result;
}

// --- sweeps -----------------------------------------------------------------

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::EtaT: return "eta_t";
    case SweepVariable::EtaB: return "eta_b";
    case SweepVariable::M: return "m";
    case SweepVariable::NS: return "n_s";
    case SweepVariable::Kappa: return "kappa";
  }
  return "unknown";
}

std::string_view to_string(SweepProtocol p) {
  switch (p) {
    case SweepProtocol::Classical: return "classical";
    case SweepProtocol::Bipartite: return "bipartite";
    case SweepProtocol::IdlerFree: return "idler-free";
    case SweepProtocol::IdlerFreeReversed: return "idler-free-reversed";
    case SweepProtocol::Mixed: return "mixed";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "eta_t" || name == "eta-t") return SweepVariable::EtaT;
  if (name == "eta_b" || name == "eta-b") return SweepVariable::EtaB;
  if (name == "m") return SweepVariable::M;
  if (name == "n_s" || name == "ns") return SweepVariable::NS;
  if (name == "kappa") return SweepVariable::Kappa;
  return std::nullopt;
}

std::optional<SweepProtocol> parse_sweep_protocol(std::string_view name) {
  if (name == "idler-free-reversed" || name == "reversed") return SweepProtocol::IdlerFreeReversed;
  if (auto k = parse_protocol(name)) {
    switch (*k) {
      case ProtocolKind::Classical: return SweepProtocol::Classical;
      case ProtocolKind::Bipartite: return SweepProtocol::Bipartite;
      case ProtocolKind::IdlerFree: return SweepProtocol::IdlerFree;
      case ProtocolKind::Mixed: return SweepProtocol::Mixed;
    }
  }
  return std::nullopt;
}

void validate(const SweepSpec& spec) {
  validate(spec.base);
  require_monotone(spec.grid, "sweep");
  if (spec.protocols.empty()) throw DomainError("sweep needs at least one protocol");
  for (double v : spec.grid) {
    if (spec.variable == SweepVariable::M && (v < 2.0 || v != std::floor(v))) {
      throw DomainError("m grid values must be integers >= 2");
    }
    validate(sweep_point(spec, v));
  }
}

Scenario sweep_point(const SweepSpec& spec, double value) {
  Scenario s = spec.base;
  switch (spec.variable) {
    case SweepVariable::EtaT: s.eta_t = value; break;
    case SweepVariable::EtaB: s.eta_b = value; break;
    case SweepVariable::M: s.m = static_cast<std::size_t>(std::lround(value)); break;
    case SweepVariable::NS: s.n_s = value; break;
    case SweepVariable::Kappa: s.kappa = value; break;
  }
  return s;
}

namespace detail {

SweepRow sweep_row(const SweepSpec& spec, double value, SweepProtocol protocol) {
  SweepRow row;
  row.value = value;
  row.protocol = protocol;
  try {
    const Scenario s = sweep_point(spec, value);
    switch (protocol) {
      case SweepProtocol::Classical:
        row.fidelity = output_fidelity(s, ProtocolKind::Classical).value;
        break;
      case SweepProtocol::Bipartite:
        row.fidelity = output_fidelity(s, ProtocolKind::Bipartite).value;
        break;
      case SweepProtocol::IdlerFree:
        row.fidelity = output_fidelity(s, ProtocolKind::IdlerFree).value;
        break;
      case SweepProtocol::IdlerFreeReversed:
        row.fidelity = output_fidelity(swapped(s), ProtocolKind::IdlerFree).value;
        break;
      case SweepProtocol::Mixed:
        if (s.kappa) {
          row.fidelity = mixed_fidelity(s, *s.kappa);
          row.kappa = s.kappa;
        } else {
          const auto best = optimize_kappa(s);
          row.fidelity = best.fidelity;
          row.kappa = best.kappa;
        }
        break;
    }
  } catch (const std::exception& e) {
    row.fidelity = kNaN;
    row.error = e.what();
  }
  return row;
}

std::string x_label(RegionAxes axes) { return axes == RegionAxes::EtaBEtaT ? "eta_b" : "eta_t"; }
std::string y_label(RegionAxes axes) { return axes == RegionAxes::EtaBEtaT ? "eta_t" : "n_s"; }

}  // namespace detail

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads) {
  validate(spec);
  const std::size_t np = spec.protocols.size();
  const auto total = static_cast<long long>(spec.grid.size() * np);
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  const int nt = thread_count(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long i = 0; i < total; ++i) {
    const auto k = static_cast<std::size_t>(i);
    rows[k] = detail::sweep_row(spec, spec.grid[k / np], spec.protocols[k % np]);
  }
  return rows;
}

// --- regions ----------------------------------------------------------------

std::string_view to_string(RegionAxes a) {
  return a == RegionAxes::EtaBEtaT ? "eta_b,eta_t" : "eta_t,n_s";
}

std::string_view to_string(RegionMode m) {
  return m == RegionMode::LogRatio ? "log-ratio" : "certificate";
}

void validate(const RegionSpec& spec) {
  require_monotone(spec.x, "x");
  require_monotone(spec.y, "y");
  validate(spec.constants);
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (double v : spec.x) {
    if (!in_unit(v)) throw DomainError("transmissivity axis value outside [0, 1]");
  }
  for (double v : spec.y) {
    if (spec.axes == RegionAxes::EtaBEtaT && !in_unit(v)) {
      throw DomainError("transmissivity axis value outside [0, 1]");
    }
    if (spec.axes == RegionAxes::EtaTNs && !(v > 0.0)) throw DomainError("n_s axis values must be > 0");
  }
  if (spec.total_photons) {
    if (spec.axes != RegionAxes::EtaTNs) throw DomainError("fixed-energy mode needs the (eta_t, n_s) axes");
    if (!(*spec.total_photons > 0.0)) throw DomainError("total photon budget must be > 0");
    const double md = static_cast<double>(spec.constants.m);
    for (double ns : spec.y) {
      if (*spec.total_photons / (md * ns) < 1.0) {
        throw DomainError("fixed-energy budget gives M < 1 on the n_s axis");
      }
    }
  }
}

RegionCell region_cell(const RegionSpec& spec, double x, double y) {
  RegionCell cell;
  cell.x = x;
  cell.y = y;
  try {
    Scenario s = spec.constants;
    if (spec.axes == RegionAxes::EtaBEtaT) {
      s.eta_b = x;
      s.eta_t = y;
    } else {
      s.eta_t = x;
      s.n_s = y;
    }
    if (spec.total_photons) s.m_probes = *spec.total_photons / (static_cast<double>(s.m) * s.n_s);
    cell.copies = s.m_probes;

    if (spec.quantum == ProtocolKind::Mixed && !s.kappa) {
      const auto best = optimize_kappa(s);
      cell.f_quantum = best.fidelity;
      cell.kappa = best.kappa;
    } else {
      cell.f_quantum = output_fidelity(s, spec.quantum).value;
      if (spec.quantum == ProtocolKind::Mixed) cell.kappa = s.kappa;
    }
    cell.f_classical = classical_fidelity(s.eta_b, s.eta_t, s.n_s);
    cell.certificate = advantage_certificate(cell.f_quantum, cell.f_classical);

    const double md = static_cast<double>(s.m);
    cell.ub_quantum_raw = perr_upper_raw(cell.f_quantum, s.m, s.m_probes);
    cell.ub_quantum = std::min(1.0, cell.ub_quantum_raw);
    cell.lb_classical = classical_perr_lower(s.eta_b, s.eta_t, s.n_s, s.m, s.m_probes);
    // Log space: both bounds underflow long before their ratio does.
    const double d = std::sqrt(s.eta_b) - std::sqrt(s.eta_t);
    const double log10_ub = std::log10(md - 1.0) + s.m_probes * std::log10(cell.f_quantum);
    const double log10_lb =
        std::log10((md - 1.0) / (2.0 * md)) - 2.0 * s.m_probes * s.n_s * d * d / std::log(10.0);
    cell.log10_ratio = log10_ub - log10_lb;
  } catch (const std::exception& e) {
    cell.f_quantum = cell.f_classical = cell.ub_quantum = cell.ub_quantum_raw = kNaN;
    cell.lb_classical = cell.log10_ratio = kNaN;
    cell.certificate = false;
    cell.error = e.what();
  }
  return cell;
}

RegionGrid region_scan(const RegionSpec& spec, int threads) {
  validate(spec);
  RegionGrid grid{spec, detail::x_label(spec.axes), detail::y_label(spec.axes), {}};
  const auto total = static_cast<long long>(spec.x.size() * spec.y.size());
  grid.cells.resize(static_cast<std::size_t>(total));
  const int nt = thread_count(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long i = 0; i < total; ++i) {
    const auto [ix, iy] = detail::region_index(spec, static_cast<std::size_t>(i));
    grid.cells[static_cast<std::size_t>(i)] = region_cell(spec, spec.x[ix], spec.y[iy]);
  }
  return grid;
}

// --- expansions -------------------------------------------------------------

namespace {

double binary_fidelity(ProtocolKind kind, double eta_b, double eta_t, double n_s) {
  switch (kind) {
    case ProtocolKind::Classical: return classical_fidelity(eta_b, eta_t, n_s);
    case ProtocolKind::Bipartite: return bipartite_fidelity(eta_b, eta_t, n_s);
    case ProtocolKind::IdlerFree: return idler_free_binary_fidelity(eta_b, eta_t, n_s);
    case ProtocolKind::Mixed: break;
  }
  throw DomainError("expansion checks cover the classical, bipartite and idler-free protocols");
}

}  // namespace

double expansion_coefficient(ProtocolKind kind, double eta, double n_s) {
  if (!(eta > 0.0 && eta + kExpansionStep <= 1.0)) {
    throw DomainError("expansion point eta must satisfy 0 < eta <= 1 - 1e-3");
  }
  const auto c2 = [&](double eps) {
    return (1.0 - binary_fidelity(kind, eta + eps, eta, n_s)) / (eps * eps);
  };
  const double coarse = c2(kExpansionStep);
  const double fine = c2(kExpansionStep / 2.0);
  return 2.0 * fine - coarse;
}

double extreme_point_check(ProtocolKind kind, ExtremePoint which, double epsilon, double n_s) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon outside [0, 1]");
  return which == ExtremePoint::EtaBZero ? binary_fidelity(kind, 0.0, epsilon, n_s)
                                         : binary_fidelity(kind, 1.0, 1.0 - epsilon, n_s);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > 0.0)) throw DomainError("logspace bounds must be positive");
  auto out = linspace(std::log10(lo), std::log10(hi), n);
  for (auto& v : out) v = std::pow(10.0, v);
  if (n > 0) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

}  // namespace cpf
