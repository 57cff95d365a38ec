#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "cpf/gaussian.hpp"
#include "cpf/protocols.hpp"

namespace cpf::test {

// exp(Omega H) is symplectic for symmetric H.
inline Matrix random_symplectic(std::size_t n, std::mt19937_64& rng, double scale = 0.4) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix h(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) h(i, j) = h(j, i) = g(rng);
  const Matrix arg = SymplecticForm(n).matrix() * h;
  return arg.exp();
}

// Williamson form S diag(nu) S^T with nu >= 1, plus a random mean.
inline GaussianState random_state(std::size_t n, std::mt19937_64& rng, double max_excess = 2.0) {
  std::uniform_real_distribution<double> u(0.0, max_excess);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector d(2 * n);
  for (std::size_t k = 0; k < n; ++k) d(2 * k) = d(2 * k + 1) = 1.0 + u(rng);
  const Matrix s = random_symplectic(n, rng);
  Vector mean(2 * n);
  for (Eigen::Index i = 0; i < mean.size(); ++i) mean(i) = g(rng);
  return GaussianState(mean, s * d.asDiagonal() * s.transpose());
}

// Full-output fidelity between target positions i and j.
inline double direct_pair_fidelity(const Scenario& s, ProtocolKind kind, std::size_t i, std::size_t j) {
  ProbeSpec spec{kind, s.m, s.n_s, std::nullopt};
  if (kind == ProtocolKind::Mixed) spec.kappa = s.kappa;
  const auto probe = make_probe(spec);
  return gaussian_fidelity(apply_hypothesis(probe, i, s), apply_hypothesis(probe, j, s));
}

// Real 2n x 2n representation of the discrete-Fourier transform acting on
// boxes 2..m-1 (0-based), leaving boxes 0 and 1 alone.
inline Matrix collective_transform(std::size_t m) {
  const std::size_t r = m - 2;
  const double phi = 2.0 * M_PI / static_cast<double>(r);
  Matrix t = Matrix::Zero(2 * m, 2 * m);
  t.block(0, 0, 4, 4).setIdentity();
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      const std::complex<double> u = std::polar(1.0 / std::sqrt(static_cast<double>(r)),
                                                phi * static_cast<double>(j * k));
      const auto row = static_cast<Eigen::Index>(2 * (j + 2));
      const auto col = static_cast<Eigen::Index>(2 * (k + 2));
      t(row, col) = u.real();
      t(row, col + 1) = -u.imag();
      t(row + 1, col) = u.imag();
      t(row + 1, col + 1) = u.real();
    }
  }
  return t;
}

}  // namespace cpf::test
