#include "qorbit/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace qorbit {

namespace {

constexpr std::uint64_t mask_width(int n) {
  return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
}

// i-exponent of the product of two letters, indexed by (x1 z1 x2 z2).
// E.g. X*Y = iZ (exponent 1), Y*X = -iZ (exponent 3).
constexpr std::array<std::uint8_t, 16> kLetterPhase = [] {
  std::array<std::uint8_t, 16> t{};
  auto idx = [](int x1, int z1, int x2, int z2) { return (x1 << 3) | (z1 << 2) | (x2 << 1) | z2; };
  // identity rows/columns stay 0
  t[idx(1, 0, 1, 0)] = 0;  // X X
  t[idx(1, 0, 1, 1)] = 1;  // X Y = iZ
  t[idx(1, 0, 0, 1)] = 3;  // X Z = -iY
  t[idx(1, 1, 1, 0)] = 3;  // Y X = -iZ
  t[idx(1, 1, 1, 1)] = 0;  // Y Y
  t[idx(1, 1, 0, 1)] = 1;  // Y Z = iX
  t[idx(0, 1, 1, 0)] = 1;  // Z X = iY
  t[idx(0, 1, 1, 1)] = 3;  // Z Y = -iX
  t[idx(0, 1, 0, 1)] = 0;  // Z Z
  return t;
}();

// Maps a site-indexed mask (bit i = site i) to dense index bit order
// (site 0 = most significant bit).
std::uint64_t dense_bits(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  while (mask) {
    const int i = std::countr_zero(mask);
    out |= 1ULL << (n - 1 - i);
    mask &= mask - 1;
  }
  return out;
}

Complex quarter_phase(unsigned e) {
  switch (e & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_dense_cap(int n, int cap) {
  if (n > cap) {
    throw cap_exceeded("dense expansion of " + std::to_string(n) + " qubits exceeds cap " +
                       std::to_string(cap));
  }
}

}  // namespace

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  throw validation_error("invalid Pauli letter");
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw validation_error(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z, std::uint8_t phase)
    : n_qubits(n), x_mask(x), z_mask(z), phase_exp(phase) {
  require(n >= 1 && n <= 64, "PauliString: n_qubits must be in [1, 64]");
  require((x & ~mask_width(n)) == 0 && (z & ~mask_width(n)) == 0,
          "PauliString: mask bits outside n_qubits");
  require(phase < 4, "PauliString: phase_exp must be in {0,1,2,3}");
}

PauliString PauliString::single(int n, int site, PauliLetter l) {
  require(site >= 0 && site < n, "PauliString::single: site out of range");
  require(l != PauliLetter::I, "PauliString::single: letter must be non-identity");
  const std::uint64_t bit = 1ULL << site;
  switch (l) {
    case PauliLetter::X: return PauliString(n, bit, 0);
    case PauliLetter::Y: return PauliString(n, bit, bit);
    default: return PauliString(n, 0, bit);
  }
}

PauliLetter PauliString::letter(int site) const {
  const bool x = (x_mask >> site) & 1;
  const bool z = (z_mask >> site) & 1;
  if (x && z) return PauliLetter::Y;
  if (x) return PauliLetter::X;
  if (z) return PauliLetter::Z;
  return PauliLetter::I;
}

PauliString PauliString::phase_stripped() const {
  return PauliString(n_qubits, x_mask, z_mask, 0);
}

int PauliString::weight() const { return std::popcount(x_mask | z_mask); }

Complex PauliString::phase_factor() const { return quarter_phase(phase_exp); }

bool pauli_less(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) return a.n_qubits < b.n_qubits;
  if (a.x_mask != b.x_mask) return a.x_mask < b.x_mask;
  if (a.z_mask != b.z_mask) return a.z_mask < b.z_mask;
  return a.phase_exp < b.phase_exp;
}

LocalGenerator::LocalGenerator(int n, PauliLetter l, double scale_in)
    : n_qubits(n), letters(static_cast<std::size_t>(n), l), scale(scale_in) {
  // sector protocols use generators far beyond the 64-site mask limit of
  // PauliString; only dense expansion and string operations cap n further
  require(n >= 1 && n < 4096, "LocalGenerator: n_qubits must be in [1, 4096)");
  require(l != PauliLetter::I, "LocalGenerator: letters must be non-identity");
}

bool LocalGenerator::uniform() const {
  for (auto l : letters) {
    if (l != letters.front()) return false;
  }
  return true;
}

PauliLetter LocalGenerator::uniform_letter() const {
  require(uniform(), "LocalGenerator: letters are not site-uniform");
  return letters.front();
}

SymmetrizedPauli make_symmetrized(int p_x, int p_y, int p_z, int p_i) {
  require(p_x >= 0 && p_y >= 0 && p_z >= 0 && p_i >= 0,
          "SymmetrizedPauli: composition entries must be nonnegative");
  require(p_x + p_y + p_z + p_i >= 1, "SymmetrizedPauli: empty composition");
  return SymmetrizedPauli{p_x, p_y, p_z, p_i};
}

void PauliSum::add(Complex coeff, const PauliString& p) {
  if (n_qubits_ == 0) n_qubits_ = p.n_qubits;
  require(p.n_qubits == n_qubits_, "PauliSum: mixed qubit counts");
  terms.emplace_back(coeff, p);
}

void PauliSum::canonicalize() {
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Complex, PauliKeyHash> acc;
  for (const auto& [c, p] : terms) {
    acc[{p.x_mask, p.z_mask}] += c * p.phase_factor();
  }
  std::vector<std::pair<Complex, PauliString>> out;
  out.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (c == Complex(0.0, 0.0)) continue;
    out.emplace_back(c, PauliString(n_qubits_, key.first, key.second, 0));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return pauli_less(a.second, b.second); });
  terms = std::move(out);
}

bool PauliSum::all_coefficients_real(double tol) const {
  for (const auto& [c, p] : terms) {
    (void)p;
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

PauliString pauli_product(const PauliString& p, const PauliString& q) {
  require(p.n_qubits == q.n_qubits, "pauli_product: dimension mismatch");
  unsigned phase = static_cast<unsigned>(p.phase_exp) + q.phase_exp;
  std::uint64_t support = (p.x_mask | p.z_mask) & (q.x_mask | q.z_mask);
  while (support) {
    const int i = std::countr_zero(support);
    support &= support - 1;
    const int x1 = (p.x_mask >> i) & 1, z1 = (p.z_mask >> i) & 1;
    const int x2 = (q.x_mask >> i) & 1, z2 = (q.z_mask >> i) & 1;
    phase += kLetterPhase[(x1 << 3) | (z1 << 2) | (x2 << 1) | z2];
  }
  return PauliString(p.n_qubits, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask,
                     static_cast<std::uint8_t>(phase & 3u));
}

bool anticommutes(const PauliString& p, const PauliString& q) {
  require(p.n_qubits == q.n_qubits, "anticommutes: dimension mismatch");
  const int parity =
      std::popcount(p.x_mask & q.z_mask) + std::popcount(p.z_mask & q.x_mask);
  return parity & 1;
}

std::optional<std::pair<Complex, PauliString>> pauli_commutator(const PauliString& p,
                                                                const PauliString& q) {
  if (!anticommutes(p, q)) return std::nullopt;
  // [P,Q] = 2 PQ when P and Q anticommute.
  const PauliString r = pauli_product(p, q);
  return std::make_pair(2.0 * r.phase_factor(), r.phase_stripped());
}

int anticommute_count(const PauliString& p, const LocalGenerator& g) {
  require(p.n_qubits == g.n_qubits, "anticommute_count: dimension mismatch");
  int k = 0;
  std::uint64_t support = p.x_mask | p.z_mask;
  while (support) {
    const int i = std::countr_zero(support);
    support &= support - 1;
    if (p.letter(i) != g.letters[static_cast<std::size_t>(i)]) ++k;
  }
  return k;
}

CMatrix to_dense(const PauliString& p, int cap) {
  check_dense_cap(p.n_qubits, cap);
  const Eigen::Index d = Eigen::Index(1) << p.n_qubits;
  const std::uint64_t xd = dense_bits(p.x_mask, p.n_qubits);
  const std::uint64_t zd = dense_bits(p.z_mask, p.n_qubits);
  const int n_y = std::popcount(p.x_mask & p.z_mask);
  const Complex base = quarter_phase(static_cast<unsigned>(p.phase_exp) + n_y);
  CMatrix m = CMatrix::Zero(d, d);
  for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(d); ++c) {
    const double sign = (std::popcount(c & zd) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(c ^ xd), static_cast<Eigen::Index>(c)) = base * sign;
  }
  return m;
}

CMatrix to_dense(const PauliSum& h, int cap) {
  require(h.n_qubits() >= 1, "to_dense: empty PauliSum");
  check_dense_cap(h.n_qubits(), cap);
  const Eigen::Index d = Eigen::Index(1) << h.n_qubits();
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& [c, p] : h.terms) m += c * to_dense(p, cap);
  return m;
}

CMatrix to_dense(const LocalGenerator& g, int cap) {
  check_dense_cap(g.n_qubits, cap);
  const Eigen::Index d = Eigen::Index(1) << g.n_qubits;
  CMatrix m = CMatrix::Zero(d, d);
  for (int i = 0; i < g.n_qubits; ++i) {
    m += to_dense(PauliString::single(g.n_qubits, i, g.letters[static_cast<std::size_t>(i)]), cap);
  }
  return g.scale * m;
}

bool is_diagonal(const LocalGenerator& g) {
  for (auto l : g.letters) {
    if (l != PauliLetter::Z) return false;
  }
  return true;
}

RVector diagonal_of(const LocalGenerator& g, int cap) {
  require(is_diagonal(g), "diagonal_of: generator has non-Z letters");
  check_dense_cap(g.n_qubits, cap);
  const Eigen::Index d = Eigen::Index(1) << g.n_qubits;
  RVector diag(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const int ones = std::popcount(static_cast<std::uint64_t>(m));
    diag(m) = g.scale * (g.n_qubits - 2 * ones);
  }
  return diag;
}

Complex pauli_trace(const PauliString& p, const CMatrix& o) {
  const Eigen::Index d = o.rows();
  require(o.cols() == d, "pauli_trace: matrix not square");
  require(d == (Eigen::Index(1) << p.n_qubits), "pauli_trace: dimension mismatch");
  const std::uint64_t xd = dense_bits(p.x_mask, p.n_qubits);
  const std::uint64_t zd = dense_bits(p.z_mask, p.n_qubits);
  const int n_y = std::popcount(p.x_mask & p.z_mask);
  const Complex base = quarter_phase(static_cast<unsigned>(p.phase_exp) + n_y);
  Complex tot(0.0, 0.0);
  for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(d); ++c) {
    const double sign = (std::popcount(c & zd) & 1) ? -1.0 : 1.0;
    tot += sign * o(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ xd));
  }
  return base * tot;
}

std::string to_string(const PauliString& p) {
  static const char* prefix[4] = {"", "+i", "-", "-i"};
  std::string s = prefix[p.phase_exp & 3];
  for (int i = 0; i < p.n_qubits; ++i) s += letter_char(p.letter(i));
  return s;
}

PauliString pauli_from_string(const std::string& text) {
  std::size_t pos = 0;
  std::uint8_t phase = 0;
  if (text.compare(0, 2, "+i") == 0 || text.compare(0, 1, "i") == 0) {
    phase = 1;
    pos = (text[0] == '+') ? 2 : 1;
  } else if (text.compare(0, 2, "-i") == 0) {
    phase = 3;
    pos = 2;
  } else if (!text.empty() && text[0] == '-') {
    phase = 2;
    pos = 1;
  } else if (!text.empty() && text[0] == '+') {
    pos = 1;
  }
  const std::string body = text.substr(pos);
  require(!body.empty() && body.size() <= 64, "pauli_from_string: need 1..64 letters");
  const int n = static_cast<int>(body.size());
  std::uint64_t x = 0, z = 0;
  for (int i = 0; i < n; ++i) {
    switch (letter_from_char(body[static_cast<std::size_t>(i)])) {
      case PauliLetter::I: break;
      case PauliLetter::X: x |= 1ULL << i; break;
      case PauliLetter::Y: x |= 1ULL << i; z |= 1ULL << i; break;
      case PauliLetter::Z: z |= 1ULL << i; break;
    }
  }
  return PauliString(n, x, z, phase);
}

std::string to_string(const PauliSum& h) {
  std::string out;
  char buf[80];
  for (const auto& [c, p] : h.terms) {
    const Complex eff = c * p.phase_factor();  // fold any string phase into the coefficient
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g) ", eff.real(), eff.imag());
    out += buf;
    out += to_string(p.phase_stripped());
    out += '\n';
  }
  return out;
}

PauliSum pauli_sum_from_string(const std::string& text) {
  PauliSum h;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    // strip comments and whitespace-only lines
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coeff_tok, letters_tok;
    if (!(ls >> coeff_tok)) continue;
    require(static_cast<bool>(ls >> letters_tok), "pauli_sum_from_string: missing letters in '" + line + "'");
    Complex c;
    if (coeff_tok.front() == '(') {
      double re = 0.0, im = 0.0;
      if (std::sscanf(coeff_tok.c_str(), "(%lg,%lg)", &re, &im) != 2) {
        throw validation_error("pauli_sum_from_string: bad complex coefficient '" + coeff_tok + "'");
      }
      c = Complex(re, im);
    } else {
      std::size_t used = 0;
      double re;
      try {
        re = std::stod(coeff_tok, &used);
      } catch (const std::exception&) {
        throw validation_error("pauli_sum_from_string: bad coefficient '" + coeff_tok + "'");
      }
      require(used == coeff_tok.size(), "pauli_sum_from_string: bad coefficient '" + coeff_tok + "'");
      c = Complex(re, 0.0);
    }
    h.add(c, pauli_from_string(letters_tok));
  }
  require(!h.terms.empty(), "pauli_sum_from_string: no terms");
  return h;
}

std::string to_string(const LocalGenerator& g) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g*", g.scale);
  std::string s = buf;
  for (auto l : g.letters) s += letter_char(l);
  return s;
}

}  // namespace qorbit
