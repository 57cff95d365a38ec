#include "cpf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpf/errors.hpp"

namespace cpf {

namespace {

void require_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    std::ostringstream os;
    os << "fidelity " << f << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

void require_boxes(std::size_t m) {
  if (m < 2) throw DomainError("m must be >= 2");
}

void require_copies(double copies) {
  if (!(copies >= 0.0) || !std::isfinite(copies)) throw DomainError("M must be finite and >= 0");
}

void require_ensemble(std::span<const double> priors, const Eigen::MatrixXd& fid) {
  const auto n = static_cast<Eigen::Index>(priors.size());
  if (n == 0) throw DomainError("empty prior list");
  if (fid.rows() != n || fid.cols() != n) throw DomainError("fidelity matrix shape does not match priors");
  double total = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw DomainError("priors must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("priors must sum to 1");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(fid(i, i) - 1.0) > 1e-12) throw DomainError("fidelity matrix needs a unit diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      require_fidelity(fid(i, j));
      if (std::abs(fid(i, j) - fid(j, i)) > 1e-12) throw DomainError("fidelity matrix must be symmetric");
    }
  }
}

}  // namespace

double perr_upper_raw(double fidelity, std::size_t m, double copies) {
  require_fidelity(fidelity);
  require_boxes(m);
  require_copies(copies);
  return static_cast<double>(m - 1) * std::pow(fidelity, copies);
}

double perr_upper(double fidelity, std::size_t m, double copies) {
  return std::min(1.0, perr_upper_raw(fidelity, m, copies));
}

double perr_lower(double fidelity, std::size_t m, double copies) {
  require_fidelity(fidelity);
  require_boxes(m);
  require_copies(copies);
  const double md = static_cast<double>(m);
  return std::min(1.0, (md - 1.0) / (2.0 * md) * std::pow(fidelity, 2.0 * copies));
}

double perr_upper_general(std::span<const double> priors, const Eigen::MatrixXd& fidelities,
                          double copies) {
  require_ensemble(priors, fidelities);
  require_copies(copies);
  double sum = 0.0;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    for (std::size_t j = 0; j < priors.size(); ++j) {
      if (i == j) continue;
      const auto f = fidelities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      sum += std::sqrt(priors[i] * priors[j]) * std::pow(f, copies);
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

double perr_lower_general(std::span<const double> priors, const Eigen::MatrixXd& fidelities,
                          double copies) {
  require_ensemble(priors, fidelities);
  require_copies(copies);
  double sum = 0.0;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    for (std::size_t j = 0; j < priors.size(); ++j) {
      if (i == j) continue;
      const auto f = fidelities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      sum += priors[i] * priors[j] * std::pow(f, 2.0 * copies);
    }
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double pgm_pure_upper(double fidelity, std::size_t m) {
  require_fidelity(fidelity);
  require_boxes(m);
  const double md = static_cast<double>(m);
  // (sqrt(a) - sqrt(b))^2 = (a - b)^2 / (sqrt(a) + sqrt(b))^2 with a - b = m F; the
  // denominator expanded as a + b + 2 sqrt(ab) has no cancellation and equals m at F = 1.
  const double a = 1.0 + (md - 1.0) * fidelity;
  const double b = 1.0 - fidelity;
  return (md - 1.0) * fidelity * fidelity / (a + b + 2.0 * std::sqrt(a * b));
}

double classical_perr_lower(double eta_b, double eta_t, double n_s, std::size_t m, double copies) {
  if (!(eta_b >= 0.0 && eta_b <= 1.0) || !(eta_t >= 0.0 && eta_t <= 1.0)) {
    throw DomainError("transmissivities must lie in [0, 1]");
  }
  if (!(n_s >= 0.0)) throw DomainError("n_s must be >= 0");
  require_boxes(m);
  require_copies(copies);
  const double md = static_cast<double>(m);
  const double d = std::sqrt(eta_b) - std::sqrt(eta_t);
  return (md - 1.0) / (2.0 * md) * std::exp(-2.0 * copies * n_s * d * d);
}

bool advantage_certificate(double f_a, double f_b) {
  require_fidelity(f_a);
  require_fidelity(f_b);
  return f_a < f_b * f_b;
}

double ratio_bound(double f_a, double f_b, std::size_t m, double copies) {
  require_fidelity(f_a);
  require_fidelity(f_b);
  require_boxes(m);
  require_copies(copies);
  if (f_b == 0.0) throw DomainError("ratio bound undefined for F_B = 0");
  return 2.0 * static_cast<double>(m) * std::pow(f_a / (f_b * f_b), copies);
}

std::size_t certificate_copies(double f_a, double f_b, std::size_t m) {
  require_boxes(m);
  if (!advantage_certificate(f_a, f_b)) {
    throw DomainError("no certificate: F_A >= F_B^2");
  }
  if (f_a == 0.0) return 1;
  const double n = std::log(2.0 * static_cast<double>(m)) / std::log(f_b * f_b / f_a);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
}

}  // namespace cpf
