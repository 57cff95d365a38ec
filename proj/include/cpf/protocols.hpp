#pragma once

// Channel position finding on a sequence of pure-loss channels: hypothesis
// h_i puts the target transmissivity eta_t on box i and eta_b everywhere else.
// All fidelities here are one-shot; M copies enter through F^M in bounds.hpp.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpf/gaussian.hpp"
#include "cpf/probes.hpp"

namespace cpf {

struct Scenario {
  std::size_t m = 2;
  double eta_b = 1.0;
  double eta_t = 1.0;
  double n_s = 1.0;
  double m_probes = 1.0;
  std::optional<double> kappa;
};

/// Throws DomainError naming the offending field.
void validate(const Scenario& s);

/// The same scenario with eta_b and eta_t exchanged.
Scenario swapped(const Scenario& s);

enum class FidelityPath { ClosedForm, Reduced, Direct };

std::string_view to_string(FidelityPath path);

struct FidelityReport {
  double value = 1.0;
  FidelityPath path = FidelityPath::ClosedForm;
  std::optional<double> min_symplectic_eigenvalue;
  std::vector<std::string> warnings;
};

struct FidelityOptions {
  /// Use the full 2m x 2m outputs even where a closed form or the 3-mode
  /// reduction applies.
  bool force_direct = false;
  /// Fill FidelityReport::min_symplectic_eigenvalue (costs two extra
  /// symplectic spectra).
  bool diagnostics = false;
};

/// Sends the box modes of `probe` through the hypothesis with the target on
/// box `target`. A probe with m modes is all signal; a probe with 2m modes is
/// read as (idler, signal) pairs and only the signals see the channels.
GaussianState apply_hypothesis(const GaussianState& probe, std::size_t target, const Scenario& s);

double classical_fidelity(double eta_b, double eta_t, double n_s);
double bipartite_fidelity(double eta_b, double eta_t, double n_s);
/// Squared fidelity of the two Choi-pair states, computed numerically.
double bipartite_fidelity_numeric(double eta_b, double eta_t, double n_s);
/// Idler-free protocol with m = 2.
double idler_free_binary_fidelity(double eta_b, double eta_t, double n_s);

/// Full output states for target positions 0 and 1.
std::pair<GaussianState, GaussianState> direct_output_pair(const Scenario& s, ProtocolKind kind);

/// Three-mode outputs (target box, other box, collective background mode) for
/// target positions 0 and 1 of the idler-free probe, or of the mixed probe
/// when `kappa` is given. Requires m >= 3.
std::pair<GaussianState, GaussianState> reduced_output_pair(const Scenario& s,
                                                            std::optional<double> kappa);

FidelityReport output_fidelity(const Scenario& s, ProtocolKind kind,
                               const FidelityOptions& options = {});

/// Covariance matrix of the m - 3 collective background modes that decouple
/// under the discrete-Fourier mode transform. Identical for both hypotheses.
/// Requires m >= 4.
Matrix traced_block_cm(const Scenario& s);

}  // namespace cpf
