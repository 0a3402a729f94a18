#include "qorbit/qfi.hpp"

#include <cmath>

#include "qorbit/orbit.hpp"

namespace qorbit {

namespace {

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  RVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::sqrt(std::max(0.0, lam(i)));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double qfi_pure(const CVector& state, const CMatrix& g) {
  require(g.rows() == g.cols() && g.rows() == state.size(), "qfi_pure: dimension mismatch");
  require_hermitian(g, 1e-8, "qfi_pure generator");
  require_normalized(state);
  const CVector w = g * state;
  const double e1 = state.dot(w).real();
  const double e2 = w.squaredNorm();
  double f = 4.0 * (e2 - e1 * e1);
  if (f < 0.0 && f > -1e-9) f = 0.0;  // rounding on eigenstates
  return f;
}

double qfi_mixed(const CMatrix& rho, const CMatrix& g, double tol) {
  require(tol > 0.0, "qfi_mixed: tol must be positive");
  require(g.rows() == rho.rows() && g.cols() == rho.cols(), "qfi_mixed: dimension mismatch");
  require_density_matrix(rho);
  require_hermitian(g, 1e-8, "qfi_mixed generator");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  RVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::max(0.0, lam(i));
  const double cutoff = tol * lam.sum();
  const CMatrix gm = es.eigenvectors().adjoint() * g * es.eigenvectors();
  double f = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    for (Eigen::Index j = 0; j < lam.size(); ++j) {
      const double s = lam(i) + lam(j);
      if (s <= cutoff) continue;
      const double d = lam(i) - lam(j);
      f += 2.0 * d * d / s * std::norm(gm(i, j));
    }
  }
  return f;
}

double sqrt_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require(rho.rows() == sigma.rows() && rho.cols() == sigma.cols(),
          "sqrt_fidelity: dimension mismatch");
  const CMatrix sq = psd_sqrt(rho);
  const CMatrix mid = sq * sigma * sq;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mid, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 0.0) s += std::sqrt(lam);
  }
  return s;
}

double qfi_fd_oracle(const std::function<CMatrix(double)>& family, double theta0, double h) {
  require(h > 0.0, "qfi_fd_oracle: step must be positive");
  const CMatrix r0 = family(theta0);
  const CMatrix r1 = family(theta0 + h);
  require_density_matrix(r0, 1e-8);
  require_density_matrix(r1, 1e-8);
  const double sf = sqrt_fidelity(r0, r1);
  return 8.0 * (1.0 - sf) / (h * h);
}

QfiMatrix qfim_two_param(int n, const CMatrix& u, const CMatrix& g1, const CMatrix& g2) {
  const Eigen::Index d = u.rows();
  require(u.cols() == d && g1.rows() == d && g1.cols() == d && g2.rows() == d && g2.cols() == d,
          "qfim_two_param: dimension mismatch");
  require(n >= 1, "qfim_two_param: n must be positive");
  require_hermitian(g1, 1e-8, "qfim_two_param G1");
  require_hermitian(g2, 1e-8, "qfim_two_param G2");
  const CVector psi0 = fiducial_state(d);
  const CVector up = u * psi0;
  // At the origin |psi> = |0> and d_j |psi> = i U^dag G_j U |0>.
  const CVector a1 = u.adjoint() * (g1 * up);
  const CVector a2 = u.adjoint() * (g2 * up);
  const Complex i1 = psi0.dot(a1);
  const Complex i2 = psi0.dot(a2);
  QfiMatrix f;
  f.f11 = 4.0 * (a1.squaredNorm() - std::norm(i1));
  f.f22 = 4.0 * (a2.squaredNorm() - std::norm(i2));
  f.f12 = 4.0 * (a1.dot(a2) - std::conj(i1) * i2).real();
  return f;
}

double cfi_fiducial_measurement(const CMatrix& probe_generator, const CVector& fiducial,
                                double theta) {
  require(theta != 0.0, "cfi_fiducial_measurement: theta must be nonzero");
  require(probe_generator.rows() == fiducial.size(), "cfi_fiducial_measurement: dimension mismatch");
  require_hermitian(probe_generator, 1e-8, "cfi generator");
  require_normalized(fiducial);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(probe_generator);
  const CVector proj = es.eigenvectors().adjoint() * fiducial;
  const RVector lam = es.eigenvalues();
  auto prob = [&](double th) {
    Complex amp(0.0, 0.0);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      amp += std::norm(proj(i)) * std::exp(Complex(0.0, -th * lam(i)));
    }
    return std::norm(amp);
  };
  const double step = std::abs(theta) / 10.0;
  const double dp = (prob(theta + step) - prob(theta - step)) / (2.0 * step);
  const double p = prob(theta);
  const double q = 1.0 - p;
  if (dp == 0.0) return 0.0;
  if (p <= 0.0 || q <= 0.0) {
    throw validation_error("cfi_fiducial_measurement: probability saturated at the evaluated theta");
  }
  return dp * dp * (1.0 / p + 1.0 / q);
}

namespace {

// Sector restriction of a site-uniform 1-local generator onto the
// permutation-symmetric subspace: scale * sum_i P = (2*scale) * spin matrix.
CMatrix sector_generator(const LocalGenerator& g) {
  const double spin = 0.5 * g.n_qubits;
  SpinAxis axis;
  switch (g.uniform_letter()) {
    case PauliLetter::X: axis = SpinAxis::x; break;
    case PauliLetter::Y: axis = SpinAxis::y; break;
    case PauliLetter::Z: axis = SpinAxis::z; break;
    default: throw validation_error("sector_generator: identity letter");
  }
  return (2.0 * g.scale) * spin_operator(axis, spin);
}

}  // namespace

double analytic_haar_avg(const EnsembleSpec& spec, const LocalGenerator& g) {
  require(spec.n_qubits == g.n_qubits, "analytic_haar_avg: dimension mismatch");
  const double s2 = g.scale * g.scale;
  switch (spec.kind) {
    case EnsembleKind::full_unitary:
      // Tr(G^2) = scale^2 n 2^n, d = 2^n.
      return 4.0 * s2 * static_cast<double>(g.n_qubits);
    case EnsembleKind::symmetric_unitary: {
      const double spin = 0.5 * g.n_qubits;
      const double d = 2.0 * spin + 1.0;
      return (4.0 * s2) * 8.0 * spin * spin * spin / (3.0 * d);
    }
    case EnsembleKind::symmetric_orthogonal: {
      const CMatrix gi = sector_generator(g);
      const double d = static_cast<double>(gi.rows());
      const double tr2 = (gi * gi).trace().real();
      const double trtt = (gi.transpose() * gi).trace().real();
      const double tr1 = gi.trace().real();
      return 4.0 * tr2 / d - 4.0 * (tr2 + trtt + tr1 * tr1) / ((d + 2.0) * d);
    }
  }
  throw validation_error("analytic_haar_avg: unsupported sector");
}

double haar_avg_exact_unitary(const EnsembleSpec& spec, const LocalGenerator& g) {
  require(spec.n_qubits == g.n_qubits, "haar_avg_exact_unitary: dimension mismatch");
  const double s2 = g.scale * g.scale;
  switch (spec.kind) {
    case EnsembleKind::full_unitary: {
      const double d = static_cast<double>(spec.dim());
      const double tr2 = s2 * g.n_qubits * d;
      return 4.0 * tr2 / (d + 1.0);
    }
    case EnsembleKind::symmetric_unitary: {
      const CMatrix gi = sector_generator(g);
      const double d = static_cast<double>(gi.rows());
      const double tr2 = (gi * gi).trace().real();
      const double tr1 = gi.trace().real();
      // 4 [Tr(G^2)/d - (Tr(G)^2 + Tr(G^2)) / (d(d+1))]; Tr(G)=0 here.
      return 4.0 * (tr2 / d - (tr1 * tr1 + tr2) / (d * (d + 1.0)));
    }
    case EnsembleKind::symmetric_orthogonal:
      // the stated orthogonal formula is already exact
      return analytic_haar_avg(spec, g);
  }
  throw validation_error("haar_avg_exact_unitary: unsupported sector");
}

double depolarize_factor(double p, int d) {
  require(p >= 0.0 && p <= 1.0, "depolarize_factor: p must be in [0,1]");
  require(d >= 2, "depolarize_factor: d must be at least 2");
  if (p == 1.0) return 0.0;
  return (1.0 - p) * (1.0 - p) / (1.0 - p + 2.0 * p / static_cast<double>(d));
}

double loss_qfi_closed_form(int n, int k, double alpha2, double beta2) {
  require(n >= 2 && n % 2 == 0, "loss_qfi_closed_form: n must be even and >= 2");
  require(k >= 0 && k <= n, "loss_qfi_closed_form: k out of range");
  require(alpha2 >= 0.0 && beta2 >= 0.0 && std::abs(alpha2 + beta2 - 1.0) <= 1e-9,
          "loss_qfi_closed_form: amplitudes must satisfy alpha2 + beta2 = 1");
  const int q = n / 2;
  const int r = n - k;
  const double denom_binom = binomial(n, q);
  const double p_rem = binomial(r, q) / denom_binom;
  const double p0 = binomial(k, q) / denom_binom;
  const double den = alpha2 + beta2 * (p0 + p_rem);
  if (den == 0.0) return 0.0;
  return static_cast<double>(n) * n * alpha2 * beta2 * p_rem / den;
}

double haar_ramsey_loss_avg(int n, int k) {
  require(n >= 1, "haar_ramsey_loss_avg: n must be positive");
  require(k >= 0 && k < n, "haar_ramsey_loss_avg: need 0 <= k < n");
  const double r = static_cast<double>(n - k);
  return r * (r + 2.0) / 3.0;
}

}  // namespace qorbit
