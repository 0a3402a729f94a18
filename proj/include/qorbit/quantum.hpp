#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qorbit/common.hpp"

namespace qorbit {

inline constexpr int kHaarDimCap = 4096;
inline constexpr double kDefaultPMin = 1e-12;

enum class EnsembleKind { full_unitary, symmetric_unitary, symmetric_orthogonal };

/// Which group the state-preparation unitaries are drawn from: the full
/// 2^n-dimensional unitary group, or the unitary / orthogonal group on the
/// (n+1)-dimensional permutation-symmetric sector.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::full_unitary;
  int n_qubits = 0;

  Eigen::Index dim() const;
  std::string describe() const;
};

EnsembleKind ensemble_kind_from_string(const std::string& s);
std::string to_string(EnsembleKind k);

// -- Validation helpers ------------------------------------------------------

/// Throws unless v has 2-norm 1 within tol.
void require_normalized(const CVector& v, double tol = 1e-10);
/// Throws unless m is Hermitian, unit trace, and PSD within tol.
void require_density_matrix(const CMatrix& m, double tol = 1e-10);
void require_hermitian(const CMatrix& m, double tol = 1e-8, const char* what = "matrix");

/// |0...0> of dimension d (basis vector 0).
CVector fiducial_state(Eigen::Index d);

// -- Sampling and numerics ---------------------------------------------------

/// Haar-distributed element of the ensemble's group: Ginibre matrix,
/// QR-orthonormalized, with the R diagonal's phases (signs, for the
/// orthogonal kind) divided out so the distribution is exactly invariant.
CMatrix haar_sample(const EnsembleSpec& spec, RngStream& rng);

/// exp(-i t H) for Hermitian H via eigendecomposition; unitary to rounding.
CMatrix mat_exp_hermitian(const CMatrix& h, double t);

/// Partial trace over `discard_sites` (qubit indices, site 0 = most
/// significant bit of the state index). Kept sites preserve their relative
/// order.
CMatrix partial_trace(const CVector& state, const std::vector<int>& discard_sites);
CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& discard_sites);

struct MeasureResult {
  double probability = 0.0;
  /// Conditional state on the complement sites; empty when probability
  /// fell below p_min (degenerate outcome, conditional undefined).
  std::optional<CVector> conditional;
};

/// Projective measurement of `sites` in the computational basis with the
/// given outcome bits (outcome[j] for sites[j]). Probabilities over all
/// outcomes sum to 1.
MeasureResult measure_subsystem(const CVector& state, const std::vector<int>& sites,
                                const std::vector<int>& outcome, double p_min = kDefaultPMin);

/// Normalized equal superposition of all weight-q computational basis
/// states. Eigenstate of S_z = (1/2) sum Z_i with eigenvalue n/2 - q.
CVector dicke_state(int n, int q);

enum class SpinAxis { x, y, z };

/// (2S+1)-dimensional spin matrix in the basis |S,m>, m = S..-S, satisfying
/// [S_x,S_y] = i S_z and Tr(S_z^2) = S(S+1)(2S+1)/3.
CMatrix spin_operator(SpinAxis axis, double spin);

}  // namespace qorbit
