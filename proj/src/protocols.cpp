#include "cpf/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cpf {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

void require_photons(double n_s) {
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) {
    std::ostringstream os;
    os << "n_s = " << n_s << " must be finite and >= 0";
    throw DomainError(os.str());
  }
}

// Correlation-carrying energy of the probe: the full n_s for idler-free,
// kappa * n_s for the mixed probe.
struct ProbeParams {
  double mu;
  double c;
  double coherent_photons;
};

ProbeParams probe_params(const Scenario& s, std::optional<double> kappa) {
  const double k = kappa.value_or(1.0);
  const double mu = thermal_mu(k * s.n_s);
  return {mu, max_correlation(s.m, mu), (1.0 - k) * s.n_s};
}

Eigen::Matrix2d z_block(double c) {
  Eigen::Matrix2d z;
  z << c, 0.0, 0.0, -c;
  return z;
}

GaussianState reduced_state(const ProbeParams& p, const Scenario& s, bool target_first) {
  const double eta_first = target_first ? s.eta_t : s.eta_b;
  const double eta_second = target_first ? s.eta_b : s.eta_t;
  const double d_first = eta_first * p.mu + (1.0 - eta_first);
  const double d_second = eta_second * p.mu + (1.0 - eta_second);
  const double d_b = s.eta_b * p.mu + (1.0 - s.eta_b);
  const double gamma_b = s.eta_b * p.c;
  const double gamma_t = std::sqrt(s.eta_b * s.eta_t) * p.c;
  const double gamma_first = target_first ? gamma_t : gamma_b;
  const double gamma_second = target_first ? gamma_b : gamma_t;
  const double root = std::sqrt(static_cast<double>(s.m - 2));
  const auto id = Eigen::Matrix2d::Identity();

  Matrix cm(6, 6);
  cm.block<2, 2>(0, 0) = d_first * id;
  cm.block<2, 2>(2, 2) = d_second * id;
  cm.block<2, 2>(4, 4) = d_b * id + z_block(static_cast<double>(s.m - 3) * gamma_b);
  cm.block<2, 2>(0, 2) = z_block(gamma_t);
  cm.block<2, 2>(2, 0) = z_block(gamma_t);
  cm.block<2, 2>(0, 4) = z_block(root * gamma_first);
  cm.block<2, 2>(4, 0) = z_block(root * gamma_first);
  cm.block<2, 2>(2, 4) = z_block(root * gamma_second);
  cm.block<2, 2>(4, 2) = z_block(root * gamma_second);

  // Equal background displacements survive only in the zero-frequency
  // collective mode, scaled by sqrt(m - 2).
  const double amp = 2.0 * std::sqrt(p.coherent_photons);
  Vector mean = Vector::Zero(6);
  mean(0) = amp * std::sqrt(eta_first);
  mean(2) = amp * std::sqrt(eta_second);
  mean(4) = root * amp * std::sqrt(s.eta_b);
  return GaussianState(std::move(mean), std::move(cm));
}

GaussianState probe_for(const Scenario& s, ProtocolKind kind) {
  ProbeSpec spec{kind, s.m, s.n_s, std::nullopt};
  if (kind == ProtocolKind::Mixed) {
    if (!s.kappa) throw DomainError("kappa is required for the mixed protocol");
    spec.kappa = s.kappa;
  }
  return make_probe(spec);
}

double min_nu(const GaussianState& a, const GaussianState& b) {
  return std::min(check_physical(a).min_symplectic_eigenvalue,
                  check_physical(b).min_symplectic_eigenvalue);
}

}  // namespace

void validate(const Scenario& s) {
  if (s.m < 2) throw DomainError("m must be >= 2");
  require_unit_interval(s.eta_b, "eta_b");
  require_unit_interval(s.eta_t, "eta_t");
  require_photons(s.n_s);
  if (!(s.m_probes >= 1.0) || !std::isfinite(s.m_probes)) {
    std::ostringstream os;
    os << "M = " << s.m_probes << " must be finite and >= 1";
    throw DomainError(os.str());
  }
  if (s.kappa) require_unit_interval(*s.kappa, "kappa");
}

Scenario swapped(const Scenario& s) {
  Scenario out = s;
  std::swap(out.eta_b, out.eta_t);
  return out;
}

std::string_view to_string(FidelityPath path) {
  switch (path) {
    case FidelityPath::ClosedForm: return "closed-form";
    case FidelityPath::Reduced: return "reduced";
    case FidelityPath::Direct: return "direct";
  }
  return "unknown";
}

GaussianState apply_hypothesis(const GaussianState& probe, std::size_t target, const Scenario& s) {
  validate(s);
  if (target >= s.m) {
    std::ostringstream os;
    os << "target position " << target << " must be < m = " << s.m;
    throw DomainError(os.str());
  }
  std::size_t stride = 0;
  std::size_t offset = 0;
  if (probe.n_modes() == s.m) {
    stride = 1;
  } else if (probe.n_modes() == 2 * s.m) {
    stride = 2;
    offset = 1;
  } else {
    throw DomainError("probe mode count must be m or 2m");
  }
  GaussianState out = probe;
  for (std::size_t box = 0; box < s.m; ++box) {
    out = pure_loss(out, box * stride + offset, box == target ? s.eta_t : s.eta_b);
  }
  return out;
}

double classical_fidelity(double eta_b, double eta_t, double n_s) {
  require_unit_interval(eta_b, "eta_b");
  require_unit_interval(eta_t, "eta_t");
  require_photons(n_s);
  const double d = std::sqrt(eta_b) - std::sqrt(eta_t);
  return std::exp(-n_s * d * d);
}

double bipartite_fidelity(double eta_b, double eta_t, double n_s) {
  require_unit_interval(eta_b, "eta_b");
  require_unit_interval(eta_t, "eta_t");
  require_photons(n_s);
  const double x = 1.0 - std::sqrt((1.0 - eta_b) * (1.0 - eta_t)) - std::sqrt(eta_b * eta_t);
  const double base = 1.0 + n_s * std::max(0.0, x);
  return 1.0 / (base * base);
}

double bipartite_fidelity_numeric(double eta_b, double eta_t, double n_s) {
  const GaussianState tmsv = bipartite_probe(n_s);
  const GaussianState choi_t = pure_loss(tmsv, 1, eta_t);
  const GaussianState choi_b = pure_loss(tmsv, 1, eta_b);
  const double f = gaussian_fidelity(choi_t, choi_b);
  return f * f;
}

double idler_free_binary_fidelity(double eta_b, double eta_t, double n_s) {
  require_unit_interval(eta_b, "eta_b");
  require_unit_interval(eta_t, "eta_t");
  require_photons(n_s);
  // eta_b + eta_t - 2 eta_b eta_t - 2 sqrt(...) written as a perfect square.
  const double d = std::sqrt(eta_b * (1.0 - eta_t)) - std::sqrt(eta_t * (1.0 - eta_b));
  return 1.0 / (1.0 + n_s * d * d);
}

std::pair<GaussianState, GaussianState> direct_output_pair(const Scenario& s, ProtocolKind kind) {
  const GaussianState probe = probe_for(s, kind);
  return {apply_hypothesis(probe, 0, s), apply_hypothesis(probe, 1, s)};
}

std::pair<GaussianState, GaussianState> reduced_output_pair(const Scenario& s,
                                                            std::optional<double> kappa) {
  validate(s);
  if (s.m < 3) throw DomainError("the three-mode reduction needs m >= 3");
  if (kappa) require_unit_interval(*kappa, "kappa");
  const ProbeParams p = probe_params(s, kappa);
  return {reduced_state(p, s, true), reduced_state(p, s, false)};
}

FidelityReport output_fidelity(const Scenario& s, ProtocolKind kind, const FidelityOptions& options) {
  validate(s);
  FidelityReport report;

  if (options.force_direct) {
    const auto [a, b] = direct_output_pair(s, kind);
    report.path = FidelityPath::Direct;
    report.value = gaussian_fidelity_unchecked(a, b);
    if (options.diagnostics) report.min_symplectic_eigenvalue = min_nu(a, b);
    return report;
  }

  const auto closed_form = [&](double value) {
    report.value = value;
    report.path = FidelityPath::ClosedForm;
    if (options.diagnostics) {
      const auto [a, b] = direct_output_pair(s, kind);
      report.min_symplectic_eigenvalue = min_nu(a, b);
    }
    return report;
  };

  switch (kind) {
    case ProtocolKind::Classical:
      return closed_form(classical_fidelity(s.eta_b, s.eta_t, s.n_s));
    case ProtocolKind::Bipartite:
      return closed_form(bipartite_fidelity(s.eta_b, s.eta_t, s.n_s));
    case ProtocolKind::IdlerFree:
      if (s.m == 2) return closed_form(idler_free_binary_fidelity(s.eta_b, s.eta_t, s.n_s));
      break;
    case ProtocolKind::Mixed:
      if (!s.kappa) throw DomainError("kappa is required for the mixed protocol");
      break;
  }

  const std::optional<double> kappa =
      kind == ProtocolKind::Mixed ? s.kappa : std::optional<double>{};
  if (s.m == 2) {
    const auto [a, b] = direct_output_pair(s, kind);
    report.path = FidelityPath::Direct;
    report.value = gaussian_fidelity_unchecked(a, b);
    if (options.diagnostics) report.min_symplectic_eigenvalue = min_nu(a, b);
    return report;
  }
  const auto [a, b] = reduced_output_pair(s, kappa);
  report.path = FidelityPath::Reduced;
  report.value = gaussian_fidelity_unchecked(a, b);
  if (options.diagnostics) report.min_symplectic_eigenvalue = min_nu(a, b);
  return report;
}

Matrix traced_block_cm(const Scenario& s) {
  validate(s);
  if (s.m < 4) throw DomainError("the traced collective block needs m >= 4");
  const ProbeParams p = probe_params(s, s.kappa);
  const double d_b = s.eta_b * p.mu + (1.0 - s.eta_b);
  const double gamma_b = s.eta_b * p.c;
  const std::size_t n = s.m - 3;
  const std::size_t period = s.m - 2;
  Matrix cm = Matrix::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) {
      const double diag = j == k ? d_b : 0.0;
      const double mirror = j + k == period ? gamma_b : 0.0;
      const auto r = static_cast<Eigen::Index>(2 * (j - 1));
      const auto c = static_cast<Eigen::Index>(2 * (k - 1));
      cm(r, c) = diag - mirror;
      cm(r + 1, c + 1) = diag + mirror;
    }
  }
  return cm;
}

}  // namespace cpf
