#pragma once

// Error-probability bounds for discriminating M-copy output ensembles from
// one-shot fidelities, and the advantage certificate F_A < F_B^2.

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace cpf {

/// (m - 1) F^M without clamping. M may be non-integer.
double perr_upper_raw(double fidelity, std::size_t m, double copies);
/// min(1, (m - 1) F^M).
double perr_upper(double fidelity, std::size_t m, double copies);
/// (m - 1)/(2m) F^(2M).
double perr_lower(double fidelity, std::size_t m, double copies);

/// sum_{i != j} sqrt(pi_i pi_j) F_ij^M, clamped to [0, 1].
double perr_upper_general(std::span<const double> priors, const Eigen::MatrixXd& fidelities,
                          double copies);
/// 1/2 sum_{i != j} pi_i pi_j F_ij^(2M), clamped to [0, 1].
double perr_lower_general(std::span<const double> priors, const Eigen::MatrixXd& fidelities,
                          double copies);

/// Error of the pretty-good measurement on m symmetric pure states with
/// pairwise fidelity F.
double pgm_pure_upper(double fidelity, std::size_t m);

/// (m - 1)/(2m) exp[-2 M n_s (sqrt(eta_b) - sqrt(eta_t))^2].
double classical_perr_lower(double eta_b, double eta_t, double n_s, std::size_t m, double copies);

/// True iff f_a < f_b^2 (strict).
bool advantage_certificate(double f_a, double f_b);

/// 2m (F_A / F_B^2)^M; DomainError when F_B = 0.
double ratio_bound(double f_a, double f_b, std::size_t m, double copies);

/// ceil(log(2m) / log(F_B^2 / F_A)): number of copies after which the ratio
/// bound drops below one. Requires advantage_certificate(f_a, f_b).
std::size_t certificate_copies(double f_a, double f_b, std::size_t m);

}  // namespace cpf
