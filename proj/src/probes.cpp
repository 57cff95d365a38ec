#include "cpf/probes.hpp"

#include <cmath>
#include <sstream>

namespace cpf {

namespace {

void require_boxes(std::size_t m) {
  if (m < 2) throw DomainError("number of boxes m must be >= 2");
}

void require_energy(double n_s) {
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) {
    std::ostringstream os;
    os << "photon number n_s = " << n_s << " must be finite and >= 0";
    throw DomainError(os.str());
  }
}

Matrix symmetric_cm(std::size_t m, double mu, double c) {
  const auto dim = static_cast<Eigen::Index>(2 * m);
  Matrix cm = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; i += 2) {
    for (Eigen::Index j = 0; j < dim; j += 2) {
      if (i == j) {
        cm(i, i) = mu;
        cm(i + 1, i + 1) = mu;
      } else {
        cm(i, j) = c;
        cm(i + 1, j + 1) = -c;
      }
    }
  }
  return cm;
}

}  // namespace

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Classical: return "classical";
    case ProtocolKind::Bipartite: return "bipartite";
    case ProtocolKind::IdlerFree: return "idler-free";
    case ProtocolKind::Mixed: return "mixed";
  }
  return "unknown";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
  if (name == "classical") return ProtocolKind::Classical;
  if (name == "bipartite") return ProtocolKind::Bipartite;
  if (name == "idler-free" || name == "idler_free") return ProtocolKind::IdlerFree;
  if (name == "mixed") return ProtocolKind::Mixed;
  return std::nullopt;
}

double max_correlation(std::size_t m, double mu) {
  require_boxes(m);
  return std::sqrt(std::max(0.0, mu * mu - 1.0)) / static_cast<double>(m - 1);
}

GaussianState classical_probe(std::size_t m, double n_s) {
  require_boxes(m);
  require_energy(n_s);
  const auto dim = static_cast<Eigen::Index>(2 * m);
  Vector mean = Vector::Zero(dim);
  const double q = 2.0 * std::sqrt(n_s);
  for (Eigen::Index i = 0; i < dim; i += 2) mean(i) = q;
  return GaussianState(std::move(mean), Matrix::Identity(dim, dim));
}

GaussianState bipartite_probe(double n_s) {
  require_energy(n_s);
  const double mu = thermal_mu(n_s);
  const double mu_c = std::sqrt(mu * mu - 1.0);
  Matrix cm(4, 4);
  cm << mu, 0, mu_c, 0,
        0, mu, 0, -mu_c,
        mu_c, 0, mu, 0,
        0, -mu_c, 0, mu;
  return GaussianState(Vector::Zero(4), std::move(cm));
}

GaussianState idler_free_probe(std::size_t m, double n_s) {
  require_boxes(m);
  require_energy(n_s);
  const double mu = thermal_mu(n_s);
  return GaussianState(Vector::Zero(static_cast<Eigen::Index>(2 * m)),
                       symmetric_cm(m, mu, max_correlation(m, mu)));
}

GaussianState mixed_probe(std::size_t m, double n_s, double kappa) {
  require_boxes(m);
  require_energy(n_s);
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    std::ostringstream os;
    os << "mixing parameter kappa = " << kappa << " outside [0, 1]";
    throw DomainError(os.str());
  }
  const double mu = thermal_mu(kappa * n_s);
  Vector mean = Vector::Zero(static_cast<Eigen::Index>(2 * m));
  const double q = 2.0 * std::sqrt((1.0 - kappa) * n_s);
  for (Eigen::Index i = 0; i < mean.size(); i += 2) mean(i) = q;
  return GaussianState(std::move(mean), symmetric_cm(m, mu, max_correlation(m, mu)));
}

GaussianState make_probe(const ProbeSpec& spec) {
  if (spec.kappa.has_value() != (spec.kind == ProtocolKind::Mixed)) {
    throw DomainError("kappa must be given for the mixed protocol and only for it");
  }
  switch (spec.kind) {
    case ProtocolKind::Classical: return classical_probe(spec.m, spec.n_s);
    case ProtocolKind::IdlerFree: return idler_free_probe(spec.m, spec.n_s);
    case ProtocolKind::Mixed: return mixed_probe(spec.m, spec.n_s, *spec.kappa);
    case ProtocolKind::Bipartite: {
      require_boxes(spec.m);
      GaussianState out = bipartite_probe(spec.n_s);
      for (std::size_t k = 1; k < spec.m; ++k) out = tensor(out, bipartite_probe(spec.n_s));
      return out;
    }
  }
  throw DomainError("unknown protocol kind");
}

}  // namespace cpf
