#include "qorbit/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qorbit {

namespace {

int qubits_of_dim(Eigen::Index d, const char* what) {
  require(d >= 2 && (d & (d - 1)) == 0, std::string(what) + ": dimension is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(d));
}

void check_sites(int n, const std::vector<int>& sites, const char* what) {
  std::vector<int> s = sites;
  std::sort(s.begin(), s.end());
  require(std::adjacent_find(s.begin(), s.end()) == s.end(),
          std::string(what) + ": duplicate sites");
  require(s.empty() || (s.front() >= 0 && s.back() < n),
          std::string(what) + ": site index out of range");
}

}  // namespace

Eigen::Index EnsembleSpec::dim() const {
  require(n_qubits >= 1, "EnsembleSpec: n_qubits must be positive");
  if (kind == EnsembleKind::full_unitary) {
    if (n_qubits > kDenseQubitCap) {
      throw cap_exceeded("EnsembleSpec: full ensemble of " + std::to_string(n_qubits) +
                         " qubits exceeds the dense cap");
    }
    return Eigen::Index(1) << n_qubits;
  }
  return n_qubits + 1;
}

std::string EnsembleSpec::describe() const {
  return to_string(kind) + "(n=" + std::to_string(n_qubits) + ",d=" + std::to_string(dim()) + ")";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
  if (s == "full") return EnsembleKind::full_unitary;
  if (s == "symmetric") return EnsembleKind::symmetric_unitary;
  if (s == "orthogonal") return EnsembleKind::symmetric_orthogonal;
  throw validation_error("unknown ensemble '" + s + "' (expected full|symmetric|orthogonal)");
}

std::string to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::full_unitary: return "full";
    case EnsembleKind::symmetric_unitary: return "symmetric";
    case EnsembleKind::symmetric_orthogonal: return "orthogonal";
  }
  return "?";
}

void require_normalized(const CVector& v, double tol) {
  require(std::abs(v.norm() - 1.0) <= tol, "state is not normalized");
}

void require_hermitian(const CMatrix& m, double tol, const char* what) {
  require(m.rows() == m.cols(), std::string(what) + " is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale,
          std::string(what) + " is not Hermitian");
}

void require_density_matrix(const CMatrix& m, double tol) {
  require_hermitian(m, tol, "density matrix");
  require(std::abs(m.trace().real() - 1.0) <= tol && std::abs(m.trace().imag()) <= tol,
          "density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -tol, "density matrix has a negative eigenvalue");
}

CVector fiducial_state(Eigen::Index d) {
  CVector v = CVector::Zero(d);
  v(0) = 1.0;
  return v;
}

CMatrix haar_sample(const EnsembleSpec& spec, RngStream& rng) {
  const Eigen::Index d = spec.dim();
  if (d > kHaarDimCap) {
    throw cap_exceeded("haar_sample: dimension " + std::to_string(d) + " exceeds cap");
  }
  const bool real = spec.kind == EnsembleKind::symmetric_orthogonal;
  CMatrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      a(i, j) = real ? Complex(rng.gaussian(), 0.0) : rng.gaussian_complex();
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CVector rdiag = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double m = std::abs(rdiag(j));
    const Complex ph = m > 0.0 ? rdiag(j) / m : Complex(1.0, 0.0);
    q.col(j) *= ph;
  }
  if (real) return q.real().cast<Complex>();
  return q;
}

CMatrix mat_exp_hermitian(const CMatrix& h, double t) {
  require_hermitian(h, 1e-8, "mat_exp_hermitian input");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector lam = es.eigenvalues();
  CVector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * lam(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Builds index composers for kept/discarded site patterns: returns the full
// basis index for (kept pattern a, discarded pattern e).
struct TraceIndexer {
  std::vector<Eigen::Index> kept_bit;     // dense bit value per kept-site bit
  std::vector<Eigen::Index> discard_bit;  // dense bit value per discarded-site bit

  TraceIndexer(int n, const std::vector<int>& discard) {
    std::vector<bool> is_discard(static_cast<std::size_t>(n), false);
    for (int s : discard) is_discard[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index bit = Eigen::Index(1) << (n - 1 - s);
      if (is_discard[static_cast<std::size_t>(s)]) {
        discard_bit.push_back(bit);
      } else {
        kept_bit.push_back(bit);
      }
    }
  }

  Eigen::Index full_index(Eigen::Index kept, Eigen::Index disc) const {
    Eigen::Index ix = 0;
    for (std::size_t b = 0; b < kept_bit.size(); ++b) {
      if ((kept >> (kept_bit.size() - 1 - b)) & 1) ix |= kept_bit[b];
    }
    for (std::size_t b = 0; b < discard_bit.size(); ++b) {
      if ((disc >> (discard_bit.size() - 1 - b)) & 1) ix |= discard_bit[b];
    }
    return ix;
  }
};

}  // namespace

CMatrix partial_trace(const CVector& state, const std::vector<int>& discard_sites) {
  const int n = qubits_of_dim(state.size(), "partial_trace");
  check_sites(n, discard_sites, "partial_trace");
  const int r = n - static_cast<int>(discard_sites.size());
  require(r >= 1, "partial_trace: must keep at least one site");
  const TraceIndexer ix(n, discard_sites);
  const Eigen::Index dr = Eigen::Index(1) << r;
  const Eigen::Index dk = Eigen::Index(1) << discard_sites.size();
  CMatrix out = CMatrix::Zero(dr, dr);
  for (Eigen::Index e = 0; e < dk; ++e) {
    CVector col(dr);
    for (Eigen::Index a = 0; a < dr; ++a) col(a) = state(ix.full_index(a, e));
    out.noalias() += col * col.adjoint();
  }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& discard_sites) {
  const int n = qubits_of_dim(rho.rows(), "partial_trace");
  require(rho.cols() == rho.rows(), "partial_trace: matrix not square");
  check_sites(n, discard_sites, "partial_trace");
  const int r = n - static_cast<int>(discard_sites.size());
  require(r >= 1, "partial_trace: must keep at least one site");
  const TraceIndexer ix(n, discard_sites);
  const Eigen::Index dr = Eigen::Index(1) << r;
  const Eigen::Index dk = Eigen::Index(1) << discard_sites.size();
  CMatrix out = CMatrix::Zero(dr, dr);
  for (Eigen::Index a = 0; a < dr; ++a) {
    for (Eigen::Index b = 0; b < dr; ++b) {
      Complex s(0.0, 0.0);
      for (Eigen::Index e = 0; e < dk; ++e) {
        s += rho(ix.full_index(a, e), ix.full_index(b, e));
      }
      out(a, b) = s;
    }
  }
  return out;
}

MeasureResult measure_subsystem(const CVector& state, const std::vector<int>& sites,
                                const std::vector<int>& outcome, double p_min) {
  const int n = qubits_of_dim(state.size(), "measure_subsystem");
  check_sites(n, sites, "measure_subsystem");
  require(sites.size() == outcome.size(), "measure_subsystem: outcome length mismatch");
  require(static_cast<int>(sites.size()) < n, "measure_subsystem: cannot measure every site");
  for (int b : outcome) require(b == 0 || b == 1, "measure_subsystem: outcome bits must be 0/1");

  Eigen::Index match_mask = 0, match_bits = 0;
  for (std::size_t j = 0; j < sites.size(); ++j) {
    const Eigen::Index bit = Eigen::Index(1) << (n - 1 - sites[j]);
    match_mask |= bit;
    if (outcome[j]) match_bits |= bit;
  }

  std::vector<int> keep;
  {
    std::vector<bool> measured(static_cast<std::size_t>(n), false);
    for (int s : sites) measured[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s < n; ++s) {
      if (!measured[static_cast<std::size_t>(s)]) keep.push_back(s);
    }
  }
  const Eigen::Index dr = Eigen::Index(1) << keep.size();
  CVector cond(dr);
  double p = 0.0;
  for (Eigen::Index a = 0; a < dr; ++a) {
    Eigen::Index ixf = match_bits;
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if ((a >> (keep.size() - 1 - b)) & 1) ixf |= Eigen::Index(1) << (n - 1 - keep[b]);
    }
    const Complex amp = state(ixf);
    cond(a) = amp;
    p += std::norm(amp);
  }
  if (p < p_min) return MeasureResult{p, std::nullopt};
  cond /= std::sqrt(p);
  return MeasureResult{p, std::move(cond)};
}

CVector dicke_state(int n, int q) {
  require(n >= 1 && n <= kDenseQubitCap, "dicke_state: n out of range");
  require(q >= 0 && q <= n, "dicke_state: excitation count out of range");
  const Eigen::Index d = Eigen::Index(1) << n;
  CVector v = CVector::Zero(d);
  double count = 0.0;
  for (Eigen::Index m = 0; m < d; ++m) {
    if (std::popcount(static_cast<std::uint64_t>(m)) == q) {
      v(m) = 1.0;
      count += 1.0;
    }
  }
  return v / std::sqrt(count);
}

CMatrix spin_operator(SpinAxis axis, double spin) {
  const double two_s = 2.0 * spin;
  require(spin >= 0.0 && std::abs(two_s - std::round(two_s)) < 1e-9,
          "spin_operator: spin must be a half-integer");
  const Eigen::Index d = static_cast<Eigen::Index>(std::round(two_s)) + 1;
  require(d <= kHaarDimCap, "spin_operator: dimension exceeds cap");
  if (axis == SpinAxis::z) {
    CMatrix sz = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) sz(i, i) = spin - static_cast<double>(i);
    return sz;
  }
  // ladder operator: S+ |S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>, m = S - row
  CMatrix sp = CMatrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) {
    const double m = spin - static_cast<double>(i);
    sp(i - 1, i) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  if (axis == SpinAxis::x) return 0.5 * (sp + sp.adjoint());
  return Complex(0.0, -0.5) * (sp - sp.adjoint());
}

}  // namespace qorbit
