#pragma once

// Parameter sweeps, advantage-region grids and mixing-parameter optimization.
//
// Grid cells are independent. sweep() and region_scan() evaluate them with
// OpenMP into a pre-sized buffer, so output order and values do not depend on
// the thread count. sweep_serial() and region_scan_serial() are the
// single-threaded reference implementations the parallel kernels are tested
// against.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpf/probes.hpp"
#include "cpf/protocols.hpp"

namespace cpf {

// --- 1-D minimization ------------------------------------------------------

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search on [lo, hi] until the bracket is narrower than tol.
/// Assumes a single minimum inside the bracket.
Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                double tol);

// --- mixed strategy ---------------------------------------------------------

/// One-shot fidelity of the mixed strategy at a given kappa. kappa = 0 and
/// kappa = 1 are the classical and idler-free probes and use their paths.
double mixed_fidelity(const Scenario& s, double kappa);

struct KappaResult {
  double kappa = 0.0;
  double fidelity = 1.0;
};

inline constexpr std::size_t kKappaGridPoints = 101;
inline constexpr double kKappaTol = 1e-6;
/// Improvements smaller than this are rounding noise and do not move kappa.
inline constexpr double kKappaTie = 1e-14;

/// Minimizes the mixed-strategy fidelity over kappa in [0, 1]: a 101-point
/// grid picks the best cell, golden-section search refines around it. The
/// result never exceeds the best grid value (in particular F(0) and F(1)).
KappaResult optimize_kappa(const Scenario& s);

// --- sweeps -----------------------------------------------------------------

enum class SweepVariable { EtaT, EtaB, M, NS, Kappa };

/// Protocols a sweep can evaluate. IdlerFreeReversed is the idler-free
/// protocol with eta_b and eta_t exchanged.
enum class SweepProtocol { Classical, Bipartite, IdlerFree, IdlerFreeReversed, Mixed };

std::string_view to_string(SweepVariable v);
std::string_view to_string(SweepProtocol p);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);
std::optional<SweepProtocol> parse_sweep_protocol(std::string_view name);

struct SweepSpec {
  Scenario base;
  SweepVariable variable = SweepVariable::EtaT;
  std::vector<double> grid;
  std::vector<SweepProtocol> protocols;
};

struct SweepRow {
  double value = 0.0;
  SweepProtocol protocol = SweepProtocol::Classical;
  double fidelity = 0.0;        // NaN when the cell failed
  std::optional<double> kappa;  // mixed only
  std::string error;
};

/// Throws DomainError for an empty or non-monotone grid or out-of-domain values.
void validate(const SweepSpec& spec);

/// The scenario evaluated at one grid value.
Scenario sweep_point(const SweepSpec& spec, double value);

/// One row per (grid value, protocol), grid-major, protocols in spec order.
/// threads <= 0 uses the OpenMP default.
std::vector<SweepRow> sweep(const SweepSpec& spec, int threads = 0);
std::vector<SweepRow> sweep_serial(const SweepSpec& spec);

// --- advantage regions ------------------------------------------------------

enum class RegionAxes { EtaBEtaT, EtaTNs };
enum class RegionMode { LogRatio, Certificate };

std::string_view to_string(RegionAxes a);
std::string_view to_string(RegionMode m);

struct RegionSpec {
  RegionAxes axes = RegionAxes::EtaBEtaT;
  /// eta_b values for EtaBEtaT, eta_t values for EtaTNs.
  std::vector<double> x;
  /// eta_t values for EtaBEtaT, n_s values for EtaTNs.
  std::vector<double> y;
  /// Fixed parameters (m, M, and whichever of eta_b / n_s is not an axis).
  /// A set kappa pins the mixed strategy; otherwise it is optimized per cell.
  Scenario constants;
  RegionMode mode = RegionMode::LogRatio;
  ProtocolKind quantum = ProtocolKind::IdlerFree;
  /// Fixed-energy mode: M = total_photons / (m n_s) per cell (non-integer M).
  std::optional<double> total_photons;
};

struct RegionCell {
  double x = 0.0;
  double y = 0.0;
  double f_quantum = 0.0;
  double f_classical = 0.0;
  double copies = 1.0;
  double ub_quantum = 0.0;      // clamped to [0, 1]
  double ub_quantum_raw = 0.0;  // (m - 1) F^M
  double lb_classical = 0.0;
  /// log10(UB_quantum_raw / LB_classical); negative means proven advantage.
  double log10_ratio = 0.0;
  bool certificate = false;  // F_quantum < F_classical^2
  std::optional<double> kappa;
  std::string error;
};

struct RegionGrid {
  RegionSpec spec;
  std::string x_label;
  std::string y_label;
  /// x-major: cells[ix * y.size() + iy].
  std::vector<RegionCell> cells;

  const RegionCell& at(std::size_t ix, std::size_t iy) const { return cells[ix * spec.y.size() + iy]; }
};

void validate(const RegionSpec& spec);

/// Evaluates one cell of the grid; never throws (errors land in RegionCell::error).
RegionCell region_cell(const RegionSpec& spec, double x, double y);

RegionGrid region_scan(const RegionSpec& spec, int threads = 0);
RegionGrid region_scan_serial(const RegionSpec& spec);

// --- small-difference and extreme-point checks ------------------------------

inline constexpr double kExpansionStep = 1e-3;

/// Second-order coefficient c2 in F(eta_t = eta, eta_b = eta + eps) ~ 1 - c2 eps^2
/// for m = 2, from (1 - F)/eps^2 at eps and eps/2 with Richardson extrapolation.
/// kind is Classical, Bipartite or IdlerFree.
double expansion_coefficient(ProtocolKind kind, double eta, double n_s);

enum class ExtremePoint { EtaBZero, EtaBOne };

/// F at (eta_b = 0, eta_t = eps) or (eta_b = 1, eta_t = 1 - eps), m = 2.
double extreme_point_check(ProtocolKind kind, ExtremePoint which, double epsilon, double n_s);

/// n equally spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// n logarithmically spaced points on [lo, hi], endpoints included.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace cpf
