#pragma once

// Probe families for channel position finding under a per-box energy
// constraint of n_s mean photons per channel use.

#include <cstddef>
#include <optional>
#include <string_view>

#include "cpf/gaussian.hpp"

namespace cpf {

enum class ProtocolKind { Classical, Bipartite, IdlerFree, Mixed };

std::string_view to_string(ProtocolKind kind);
/// Accepts "classical", "bipartite", "idler-free" and "mixed".
std::optional<ProtocolKind> parse_protocol(std::string_view name);

struct ProbeSpec {
  ProtocolKind kind = ProtocolKind::Classical;
  std::size_t m = 2;
  double n_s = 0.0;
  std::optional<double> kappa;  // Mixed only
};

/// m coherent states of amplitude sqrt(n_s), mean (2 sqrt(n_s), 0) per mode.
GaussianState classical_probe(std::size_t m, double n_s);

/// Two-mode squeezed vacuum, mode 0 the idler and mode 1 the signal.
GaussianState bipartite_probe(double n_s);

/// Fully symmetric m-mode state with diagonal blocks mu*I and maximal
/// off-diagonal correlations diag(c, -c), c = sqrt(mu^2 - 1)/(m - 1).
GaussianState idler_free_probe(std::size_t m, double n_s);

/// Idler-free correlations carrying kappa*n_s photons, displaced so that
/// each mode carries the remaining (1 - kappa)*n_s coherently.
GaussianState mixed_probe(std::size_t m, double n_s, double kappa);

/// Dispatch on spec.kind. The bipartite probe is m TMSV pairs laid out as
/// (idler_0, signal_0, idler_1, signal_1, ...).
GaussianState make_probe(const ProbeSpec& spec);

/// mu = 2 n_s + 1.
inline double thermal_mu(double n_s) { return 2.0 * n_s + 1.0; }

/// Maximal correlation allowed by the bona fide condition for m modes.
double max_correlation(std::size_t m, double mu);

}  // namespace cpf
