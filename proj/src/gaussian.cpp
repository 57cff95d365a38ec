#include "cpf/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace cpf {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

bool is_symmetric(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

LMatrix omega_ld(std::size_t n_modes) {
  LMatrix omega = LMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0L;
    omega(2 * k + 1, 2 * k) = -1.0L;
  }
  return omega;
}

void require_same_modes(const GaussianState& a, const GaussianState& b) {
  if (a.n_modes() != b.n_modes()) {
    std::ostringstream os;
    os << "fidelity between states with " << a.n_modes() << " and " << b.n_modes() << " modes";
    throw InvalidState(os.str());
  }
}

void require_physical(const GaussianState& s, const char* which) {
  const auto report = check_physical(s);
  if (!report.physical) {
    std::ostringstream os;
    os << "state " << which << " is unphysical (min symplectic eigenvalue "
       << report.min_symplectic_eigenvalue << ")";
    throw InvalidState(os.str());
  }
}

// Log-determinant of a general square matrix, returning the sign separately.
std::pair<long double, int> log_abs_det(const LMatrix& m) {
  Eigen::PartialPivLU<LMatrix> lu(m);
  const LMatrix& packed = lu.matrixLU();
  long double log_det = 0.0L;
  int sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const long double d = packed(i, i);
    if (d == 0.0L) return {-std::numeric_limits<long double>::infinity(), 0};
    if (d < 0.0L) sign = -sign;
    log_det += std::log(std::fabs(d));
  }
  return {log_det, sign};
}

}  // namespace

GaussianState::GaussianState(Vector mean, Matrix cm)
    : n_modes_(static_cast<std::size_t>(cm.rows() / 2)), mean_(std::move(mean)), cm_(std::move(cm)) {
  if (cm_.rows() == 0 || cm_.rows() != cm_.cols() || cm_.rows() % 2 != 0) {
    throw InvalidState("covariance matrix must be square with even, non-zero dimension");
  }
  if (mean_.size() != cm_.rows()) {
    throw InvalidState("mean vector length does not match covariance matrix");
  }
  if (!cm_.allFinite() || !mean_.allFinite()) {
    throw InvalidState("state contains non-finite entries");
  }
  if (!is_symmetric(cm_)) {
    throw InvalidState("covariance matrix is not symmetric");
  }
  cm_ = 0.5 * (cm_ + cm_.transpose()).eval();
}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidState("vacuum needs at least one mode");
  return GaussianState(Vector::Zero(2 * n_modes), Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::thermal(double mean_photons) {
  if (!(mean_photons >= 0.0)) throw DomainError("thermal photon number must be >= 0");
  return GaussianState(Vector::Zero(2), (2.0 * mean_photons + 1.0) * Matrix::Identity(2, 2));
}

GaussianState GaussianState::coherent(double q, double p) {
  Vector mean(2);
  mean << q, p;
  return GaussianState(mean, Matrix::Identity(2, 2));
}

double GaussianState::mean_photons(std::size_t mode) const {
  if (mode >= n_modes_) throw DomainError("mode index out of range");
  const auto i = static_cast<Eigen::Index>(2 * mode);
  const double q = mean_(i);
  const double p = mean_(i + 1);
  return (cm_(i, i) + cm_(i + 1, i + 1) - 2.0) / 4.0 + (q * q + p * p) / 4.0;
}

SymplecticForm::SymplecticForm(std::size_t n_modes)
    : n_modes_(n_modes), omega_(Matrix::Zero(2 * n_modes, 2 * n_modes)) {
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega_(2 * k, 2 * k + 1) = 1.0;
    omega_(2 * k + 1, 2 * k) = -1.0;
  }
}

std::vector<double> symplectic_eigenvalues(const Matrix& cm) {
  if (cm.rows() == 0 || cm.rows() != cm.cols() || cm.rows() % 2 != 0) {
    throw InvalidState("covariance matrix must be square with even dimension");
  }
  if (!is_symmetric(cm)) throw InvalidState("covariance matrix is not symmetric");

  // With V = L L^T, the antisymmetric K = L^T Omega L is similar to Omega V,
  // and -K^2 = K^T K is symmetric PSD with eigenvalues nu^2, each twice.
  Eigen::LLT<Matrix> llt(cm);
  if (llt.info() != Eigen::Success) {
    throw InvalidState("covariance matrix is not positive definite");
  }
  const auto n = static_cast<std::size_t>(cm.rows() / 2);
  const Matrix l = llt.matrixL();
  const Matrix k = l.transpose() * SymplecticForm(n).matrix() * l;
  const Matrix ktk = k.transpose() * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(ktk, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();  // ascending

  std::vector<double> nu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::max(0.0, ev(static_cast<Eigen::Index>(2 * i)));
    const double b = std::max(0.0, ev(static_cast<Eigen::Index>(2 * i + 1)));
    nu[i] = std::sqrt(std::sqrt(a * b));
  }
  std::sort(nu.begin(), nu.end());
  return nu;
}

PhysicalityReport check_physical(const GaussianState& state) {
  PhysicalityReport report;
  Eigen::LLT<Matrix> llt(state.cm());
  report.positive_definite = llt.info() == Eigen::Success;
  if (!report.positive_definite) {
    report.min_symplectic_eigenvalue = 0.0;
    report.physical = false;
    return report;
  }
  const auto nu = symplectic_eigenvalues(state.cm());
  report.min_symplectic_eigenvalue = nu.front();
  report.physical = nu.front() >= 1.0 - kPhysicalityTol;
  return report;
}

GaussianState pure_loss(const GaussianState& state, std::size_t mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream os;
    os << "transmissivity " << eta << " outside [0, 1]";
    throw DomainError(os.str());
  }
  if (mode >= state.n_modes()) throw DomainError("loss applied to a mode that does not exist");

  const auto i = static_cast<Eigen::Index>(2 * mode);
  const double s = std::sqrt(eta);
  Vector mean = state.mean();
  Matrix cm = state.cm();
  mean.segment(i, 2) *= s;
  cm.middleRows(i, 2) *= s;
  cm.middleCols(i, 2) *= s;
  cm.block(i, i, 2, 2) += (1.0 - eta) * Eigen::Matrix2d::Identity();
  return GaussianState(std::move(mean), std::move(cm));
}

GaussianState displace(const GaussianState& state, const Vector& offset) {
  if (offset.size() != state.mean().size()) {
    throw DomainError("displacement length does not match 2 * n_modes");
  }
  return GaussianState(state.mean() + offset, state.cm());
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.cm().rows();
  const auto nb = b.cm().rows();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cm = Matrix::Zero(na + nb, na + nb);
  cm.topLeftCorner(na, na) = a.cm();
  cm.bottomRightCorner(nb, nb) = b.cm();
  return GaussianState(std::move(mean), std::move(cm));
}

GaussianState keep_modes(const GaussianState& state, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DomainError("keep_modes needs at least one mode");
  std::unordered_set<std::size_t> seen;
  for (auto k : keep) {
    if (k >= state.n_modes()) throw DomainError("keep_modes index out of range");
    if (!seen.insert(k).second) throw DomainError("keep_modes indices must be distinct");
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Vector mean(2 * n);
  Matrix cm(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto sr = static_cast<Eigen::Index>(2 * keep[static_cast<std::size_t>(r)]);
    mean.segment(2 * r, 2) = state.mean().segment(sr, 2);
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto sc = static_cast<Eigen::Index>(2 * keep[static_cast<std::size_t>(c)]);
      cm.block(2 * r, 2 * c, 2, 2) = state.cm().block(sr, sc, 2, 2);
    }
  }
  return GaussianState(std::move(mean), std::move(cm));
}

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
  require_same_modes(a, b);
  require_physical(a, "a");
  require_physical(b, "b");
  return gaussian_fidelity_unchecked(a, b);
}

double gaussian_fidelity_unchecked(const GaussianState& a, const GaussianState& b) {
  require_same_modes(a, b);
  const std::size_t n = a.n_modes();
  const auto dim = static_cast<Eigen::Index>(2 * n);

  // Displacement factor exp(-1/4 du^T (Va + Vb)^-1 du), vacuum = identity.
  const Vector du = b.mean() - a.mean();
  const Matrix sum = a.cm() + b.cm();
  Eigen::LLT<Matrix> sum_llt(sum);
  if (sum_llt.info() != Eigen::Success) throw NumericError("Va + Vb is not positive definite");
  const double quad = du.dot(sum_llt.solve(du));

  // Mixed-state factor, evaluated in the vacuum = identity/2 convention.
  // F_tot^4 = det[2 (sqrt(1 + (Vaux Omega)^-2 / 4) + 1) Vaux] / det(A + B),
  // Vaux = Omega^T (A + B)^-1 (Omega/4 + B Omega A). With det(Vaux) expanded
  // this is 4^n det(Omega/4 + B Omega A) prod(1 + sqrt(f_k)) / det(A + B)^2,
  // where f_k are the eigenvalues of 1 + (Vaux Omega)^-2 / 4.
  const LMatrix va = a.cm().cast<long double>() * 0.5L;
  const LMatrix vb = b.cm().cast<long double>() * 0.5L;
  const LMatrix omega = omega_ld(n);
  const LMatrix s = va + vb;
  Eigen::LLT<LMatrix> s_llt(s);
  if (s_llt.info() != Eigen::Success) throw NumericError("Va + Vb is not positive definite");
  const LMatrix inner = omega * 0.25L + vb * omega * va;
  const LMatrix vaux = omega.transpose() * s_llt.solve(inner);
  const LMatrix w = vaux * omega;

  Eigen::EigenSolver<LMatrix> es(w, false);
  if (es.info() != Eigen::Success) throw NumericError("eigen-decomposition of Vaux Omega failed");

  // The eigenvalues of Vaux Omega are +-i nu_k with nu_k >= 1/2, so
  // f_k = 1 - 1/(4 nu_k^2) in [0, 1). Components that are pure in exact
  // arithmetic land on f_k = 0 up to the rounding already present in the
  // double-precision inputs, scaled by the conditioning of A + B. The square
  // root would amplify that, so values below the noise floor count as zero.
  long double s_cond = 1.0L;
  {
    Eigen::SelfAdjointEigenSolver<LMatrix> ses(s, Eigen::EigenvaluesOnly);
    const auto& ev = ses.eigenvalues();
    if (ev(0) > 0.0L) s_cond = ev(dim - 1) / ev(0);
  }
  const long double noise_floor =
      1e3L * std::numeric_limits<double>::epsilon() * std::max(1.0L, s_cond);

  long double log_prod = 0.0L;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const std::complex<long double> wk = es.eigenvalues()(k);
    const std::complex<long double> fk = 1.0L + 1.0L / (4.0L * wk * wk);
    long double f = fk.real();
    if (f < noise_floor) f = 0.0L;
    log_prod += std::log1p(std::sqrt(f));
  }

  const auto [log_det_inner, sign_inner] = log_abs_det(inner);
  if (sign_inner <= 0) throw NumericError("fidelity determinant is not positive");
  long double log_det_s = 0.0L;
  {
    const LMatrix& l = s_llt.matrixLLT();
    for (Eigen::Index i = 0; i < dim; ++i) log_det_s += 2.0L * std::log(l(i, i));
  }

  const long double log_ftot4 = static_cast<long double>(n) * std::log(4.0L) + log_det_inner +
                                log_prod - 2.0L * log_det_s;
  const double log_f = static_cast<double>(log_ftot4 / 4.0L) - 0.25 * quad;
  const double f = std::exp(log_f);
  return std::clamp(f, 0.0, 1.0);
}

double thermal_fidelity_oracle(double n1, double n2) {
  if (!(n1 >= 0.0) || !(n2 >= 0.0)) throw DomainError("thermal photon numbers must be >= 0");
  const double a = (n1 + 1.0) * (n2 + 1.0);
  const double r = std::sqrt(n1 * n2 / a);
  return 1.0 / (std::sqrt(a) * (1.0 - r));
}

}  // namespace cpf
