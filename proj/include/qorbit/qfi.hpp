#pragma once

#include <functional>
#include <string>

#include "qorbit/pauli.hpp"
#include "qorbit/quantum.hpp"

namespace qorbit {

/// Monte-Carlo estimate of a Fisher quantity with full reproduction data.
struct QfiStats {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t master_seed = 0;
  std::string ensemble;
};

/// Real symmetric 2x2 Fisher information matrix.
struct QfiMatrix {
  double f11 = 0.0;
  double f12 = 0.0;
  double f22 = 0.0;
};

/// Pure-state QFI: 4 (<G^2> - <G>^2).
double qfi_pure(const CVector& state, const CMatrix& g);

/// Mixed-state QFI 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2 over
/// eigenpairs with l_i + l_j > tol * Tr(rho); reduces to qfi_pure on rank-1
/// input. The kernel pairs are skipped because they contribute nothing.
double qfi_mixed(const CMatrix& rho, const CMatrix& g, double tol = 1e-12);

/// Uhlmann fidelity sqrt: Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double sqrt_fidelity(const CMatrix& rho, const CMatrix& sigma);

/// Independent finite-difference Bures oracle: 8 (1 - sqrt(F(rho(t0),
/// rho(t0+h)))) / h^2. Deliberately implemented through the fidelity route
/// only, so it shares no code path with qfi_mixed.
double qfi_fd_oracle(const std::function<CMatrix(double)>& family, double theta0,
                     double h = 1e-4);

/// Two-parameter QFIM at the origin of the locally-encoded state
/// U^dag e^{i t1 G1} e^{i t2 G2} e^{t1 t2 [G1,G2]/2} U |0>, via the analytic
/// derivatives d_j|psi> = i U^dag G_j U |0>.
QfiMatrix qfim_two_param(int n, const CMatrix& u, const CMatrix& g1, const CMatrix& g2);

/// Classical Fisher information of the two-outcome fiducial-projection
/// measurement p(theta) = |<psi0| e^{-i theta G'} |psi0>|^2, evaluated at
/// `theta` with a central-difference derivative of step theta/10.
/// Throws when p is numerically 0 or 1 with a nonzero slope (saturation
/// limit); a flat probability returns 0.
double cfi_fiducial_measurement(const CMatrix& probe_generator, const CVector& fiducial,
                                double theta = 1e-3);

/// Haar-averaged QFI closed forms, exactly as stated per ensemble:
///  - full unitary:        4 Tr(G^2) / d
///  - symmetric unitary:   8 S^3 / (3 (2S+1))        (leading order in S)
///  - symmetric orthogonal: 4 tr(Gi^2)/d - 4 [tr(Gi^2) + tr(Gi^T Gi)
///                          + tr(Gi)^2] / ((d+2) d)   (exact)
/// The generator's scale enters quadratically; the symmetric formulas take
/// the sector restriction Gi = 2*scale*spin_axis(S).
double analytic_haar_avg(const EnsembleSpec& spec, const LocalGenerator& g);

/// Exact finite-dimension Haar average for the unitary ensembles,
/// 4 Tr(Gi^2) / (d+1), from the exact first and second moments. Supplements
/// analytic_haar_avg for diagnostics; agrees with it to O(1/d).
double haar_avg_exact_unitary(const EnsembleSpec& spec, const LocalGenerator& g);

/// QFI suppression factor (1-p)^2 / (1 - p + 2p/d) of the depolarizing
/// channel rho -> (1-p) rho + p I/d; exact per instance for pure probes.
double depolarize_factor(double p, int d);

/// Closed-form QFI of the Dicke superposition alpha|0_n> + beta|q_n>,
/// q = n/2, after losing k particles:
///   n^2 a2 b2 p_rem / (a2 + b2 (p0 + p_rem)),
/// p_rem = binom(n-k,q)/binom(n,q), p0 = binom(k,q)/binom(n,q); binomials
/// with impossible arguments are zero.
double loss_qfi_closed_form(int n, int k, double alpha2, double beta2);

/// Stated average for the lossy Haar-Ramsey protocol: (n-k)(n-k+2)/3.
double haar_ramsey_loss_avg(int n, int k);

}  // namespace qorbit
