#pragma once

#include <cstdint>
#include <vector>

#include "qorbit/pauli.hpp"

namespace qorbit {

/// Per-class weights, indexed k = 0..n. `normalized` tells whether the
/// entries are probabilities (sum 1) or raw counts / squared weights.
struct ClassHistogram {
  std::vector<double> weights;
  bool normalized = false;

  int n_classes() const { return static_cast<int>(weights.size()); }
  double total() const;
  ClassHistogram as_normalized() const;
  /// Two-sided tail mass P(|k - n/2| >= threshold) of the normalized form.
  double tail_mass(double threshold) const;
  int argmax() const;
};

/// Basis of a dynamical Lie algebra closure: phase-stripped Pauli strings,
/// canonically ordered, closed under commutation.
struct DlaResult {
  std::vector<PauliString> basis;
  int dimension = 0;
  ClassHistogram class_histogram;  // basis elements per class, given a generator
};

struct CompatibilityVerdict {
  int k_ref = 0;
  int k = 0;
  double epsilon = 0.0;
  bool compatible = false;
};

inline constexpr std::size_t kClosureCap = 4096;
inline constexpr int kWeightQubitCap = 8;

/// Lie closure of the generating set under commutation: repeatedly commutes
/// all pairs and inserts the phase-stripped string of every nonzero
/// commutator until a fixpoint. Since the commutator of two Pauli strings
/// is a scalar multiple of a single Pauli string, the returned set is a
/// basis of the closure. Throws cap_exceeded when the closure grows past
/// `cap` (a full-rank closure approaches 4^n - 1 strings).
DlaResult dla_closure(const std::vector<PauliString>& generators,
                      std::size_t cap = kClosureCap,
                      const LocalGenerator* class_generator = nullptr);

/// Class sizes |C_k| = binom(n,k) * 2^n over all 4^n Pauli strings for a
/// generator with a non-identity letter on every site.
ClassHistogram full_class_census(int n, const LocalGenerator& g);

/// Class sizes (k+1)(n-k+1) over the binom(n+3,3) permutation-symmetrized
/// strings, k = p_X + p_Y.
ClassHistogram symmetrized_class_census(int n);

/// compatible iff |k - k_ref| >= ceil(epsilon * n).
CompatibilityVerdict compatibility_test(int k, int k_ref, int n, double epsilon);

/// Pauli-coefficient weight per class of a dense operator: c_P =
/// Tr(dense(P) * O) / 2^n over all 4^n strings, w_k = sum_{P in C_k} |c_P|^2,
/// normalized by the total squared weight. O must be 2^n x 2^n with
/// n <= kWeightQubitCap.
ClassHistogram class_weight_distribution(const CMatrix& o, const LocalGenerator& g);

/// Chernoff tail bound 2 exp(-2 eps^2 n) on the class distribution of a
/// uniformly random Pauli string.
double concentration_bound(int n, double eps);

/// Exact binomial coefficient; exact for all results that fit in a double's
/// 53-bit mantissa (plenty for every census used here).
double binomial(int n, int k);

}  // namespace qorbit
