#pragma once

// Multimode bosonic Gaussian states in the quadrature basis
// (q0, p0, q1, p1, ...), q = a + a^dagger, vacuum covariance = identity.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cpf/errors.hpp"

namespace cpf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance on symplectic eigenvalues nu >= 1 accepted as physical.
inline constexpr double kPhysicalityTol = 1e-9;

class GaussianState {
 public:
  /// Validates shapes and symmetry (1e-12 relative). Physicality is checked
  /// separately by check_physical().
  GaussianState(Vector mean, Matrix cm);

  static GaussianState vacuum(std::size_t n_modes);
  static GaussianState thermal(double mean_photons);
  static GaussianState coherent(double q, double p);

  std::size_t n_modes() const { return n_modes_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cm() const { return cm_; }

  /// <n> of one mode: (Vqq + Vpp - 2)/4 + (<q>^2 + <p>^2)/4.
  double mean_photons(std::size_t mode) const;

 private:
  std::size_t n_modes_;
  Vector mean_;
  Matrix cm_;
};

/// Direct sum of n blocks [[0, 1], [-1, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(std::size_t n_modes);
  std::size_t n_modes() const { return n_modes_; }
  const Matrix& matrix() const { return omega_; }

 private:
  std::size_t n_modes_;
  Matrix omega_;
};

struct PhysicalityReport {
  double min_symplectic_eigenvalue = 0.0;
  bool positive_definite = false;
  bool physical = false;
};

/// Moduli of the eigenvalue pairs of Omega*V, ascending. Throws InvalidState
/// if the matrix is not symmetric positive definite.
std::vector<double> symplectic_eigenvalues(const Matrix& cm);

PhysicalityReport check_physical(const GaussianState& state);

/// Pure-loss channel of transmissivity eta on one mode.
GaussianState pure_loss(const GaussianState& state, std::size_t mode, double eta);

GaussianState displace(const GaussianState& state, const Vector& offset);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// Marginal on the listed modes, in the listed order.
GaussianState keep_modes(const GaussianState& state, std::span<const std::size_t> keep);

/// Bures-Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)) between two Gaussian
/// states. Throws InvalidState for unphysical inputs.
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

/// Same as gaussian_fidelity() without the physicality pre-check. Used on
/// hot paths whose inputs are physical by construction.
double gaussian_fidelity_unchecked(const GaussianState& a, const GaussianState& b);

/// Fidelity of two single-mode thermal states from their photon-number
/// distributions (closed geometric sum). Test oracle.
double thermal_fidelity_oracle(double n1, double n2);

}  // namespace cpf
