#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/common.hpp"

namespace qorbit {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter l);
PauliLetter letter_from_char(char c);

/// n-qubit Pauli string in symplectic form: x/z bit masks plus a global
/// quarter phase, representing i^phase_exp * (P_0 x P_1 x ... x P_{n-1}).
///
/// Conventions (asserted in tests):
///  - masks are little-endian by site: bit i of x_mask/z_mask is site i,
///  - site 0 is the leftmost tensor factor, i.e. the most significant bit
///    of the dense matrix index,
///  - site letters decode as (x,z): (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z,
///  - a string with phase_exp = 0 is exactly the Hermitian tensor product
///    of its letters.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  std::uint8_t phase_exp = 0;  // global factor i^phase_exp, in {0,1,2,3}

  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z, std::uint8_t phase = 0);

  static PauliString identity(int n) { return PauliString(n, 0, 0, 0); }
  /// Single non-identity letter at `site`, identity elsewhere.
  static PauliString single(int n, int site, PauliLetter l);

  PauliLetter letter(int site) const;
  /// Same masks, phase_exp forced to 0.
  PauliString phase_stripped() const;
  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  /// Number of non-identity sites.
  int weight() const;

  Complex phase_factor() const;  // i^phase_exp

  bool operator==(const PauliString& o) const {
    return n_qubits == o.n_qubits && x_mask == o.x_mask && z_mask == o.z_mask &&
           phase_exp == o.phase_exp;
  }
};

/// Strict ordering on (n, x, z, phase); used for canonical basis ordering.
bool pauli_less(const PauliString& a, const PauliString& b);

struct PauliKeyHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    std::uint64_t s = k.first * 0x9E3779B97F4A7C15ULL;
    s ^= k.second + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
    return static_cast<std::size_t>(s);
  }
};

/// 1-local phase-embedding generator G = scale * sum_i P_i with a
/// non-identity letter on every site. Defaults give G = S_z = (1/2) sum Z_i.
struct LocalGenerator {
  int n_qubits = 0;
  std::vector<PauliLetter> letters;  // one non-identity letter per site
  double scale = 0.5;

  LocalGenerator() = default;
  explicit LocalGenerator(int n, PauliLetter l = PauliLetter::Z, double scale_in = 0.5);

  bool uniform() const;
  PauliLetter uniform_letter() const;
};

/// Permutation-symmetrized Pauli string, labeled by the weak composition
/// (p_X, p_Y, p_Z, p_I) with p_X + p_Y + p_Z + p_I = n.
struct SymmetrizedPauli {
  int p_x = 0;
  int p_y = 0;
  int p_z = 0;
  int p_i = 0;

  int n_qubits() const { return p_x + p_y + p_z + p_i; }
  /// Anticommutation class index against a uniform-Z generator.
  int class_index() const { return p_x + p_y; }
};

SymmetrizedPauli make_symmetrized(int p_x, int p_y, int p_z, int p_i);

/// Linear combination of Pauli strings on a common qubit count. Phases are
/// folded into coefficients and duplicate strings merged on canonicalize().
struct PauliSum {
  std::vector<std::pair<Complex, PauliString>> terms;

  PauliSum() = default;
  explicit PauliSum(int n) : n_qubits_(n) {}

  int n_qubits() const { return n_qubits_; }
  void add(Complex coeff, const PauliString& p);
  /// Folds phases into coefficients, merges duplicates, drops zero terms,
  /// and orders terms canonically.
  void canonicalize();
  bool all_coefficients_real(double tol = 1e-12) const;

 private:
  int n_qubits_ = 0;
};

// -- Algebra ---------------------------------------------------------------

/// Exact group product: dense(result) == dense(p) * dense(q).
PauliString pauli_product(const PauliString& p, const PauliString& q);

/// True iff the symplectic inner product <p.x,q.z> + <p.z,q.x> is odd.
bool anticommutes(const PauliString& p, const PauliString& q);

/// Commutator [P,Q]. Returns nullopt when P and Q commute; otherwise a
/// coefficient c and phase-stripped string R with dense([P,Q]) == c*dense(R).
std::optional<std::pair<Complex, PauliString>> pauli_commutator(const PauliString& p,
                                                                const PauliString& q);

/// Number of sites where the letter of p anticommutes with the letter of g.
int anticommute_count(const PauliString& p, const LocalGenerator& g);

// -- Dense expansion --------------------------------------------------------

CMatrix to_dense(const PauliString& p, int cap = kDenseQubitCap);
CMatrix to_dense(const PauliSum& h, int cap = kDenseQubitCap);
CMatrix to_dense(const LocalGenerator& g, int cap = kDenseQubitCap);

/// True when every letter of g is Z (then to_dense(g) is diagonal).
bool is_diagonal(const LocalGenerator& g);
/// Diagonal of to_dense(g) for all-Z generators, without forming the matrix.
RVector diagonal_of(const LocalGenerator& g, int cap = kDenseQubitCap);

/// Tr(dense(p) * o) computed from the one-nonzero-per-column structure of a
/// Pauli matrix; o must be 2^n x 2^n.
Complex pauli_trace(const PauliString& p, const CMatrix& o);

// -- Text format -------------------------------------------------------------
//
// PauliString: optional phase prefix followed by one letter per site over
// {I,X,Y,Z}, site 0 first. Prefixes: none (phase 1), "+i" (i), "-" (-1),
// "-i" (-i); "+" and "i" are accepted on input.
// PauliSum: one term per line, "coeff letters", where coeff is either a
// real literal or "(re,im)".

std::string to_string(const PauliString& p);
PauliString pauli_from_string(const std::string& text);

std::string to_string(const PauliSum& h);
PauliSum pauli_sum_from_string(const std::string& text);

std::string to_string(const LocalGenerator& g);

}  // namespace qorbit
