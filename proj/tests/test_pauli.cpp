#include <doctest.h>

#include <Eigen/Dense>
#include <bit>
#include <complex>

#include "qorbit/orbit.hpp"
#include "qorbit/pauli.hpp"

using namespace qorbit;

namespace {

// Independent dense oracle: builds the matrix by explicit Kronecker products
// of 2x2 letter matrices, sharing no code with to_dense().
CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix letter_matrix(PauliLetter l) {
  CMatrix m(2, 2);
  switch (l) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

CMatrix dense_oracle(const PauliString& p) {
  CMatrix m = letter_matrix(p.letter(0));
  for (int i = 1; i < p.n_qubits; ++i) m = kron(m, letter_matrix(p.letter(i)));
  return p.phase_factor() * m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("single-qubit products") {
  const auto X = pauli_from_string("X");
  const auto Y = pauli_from_string("Y");
  const auto Z = pauli_from_string("Z");

  // X*Y = iZ: phase advanced by one quarter turn
  const auto xy = pauli_product(X, Y);
  CHECK(xy.letter(0) == PauliLetter::Z);
  CHECK(xy.phase_exp == 1);

  // P*P = I with no leftover phase
  for (const auto& p : {X, Y, Z}) {
    const auto sq = pauli_product(p, p);
    CHECK(sq.is_identity());
    CHECK(sq.phase_exp == 0);
  }
}

TEST_CASE("two-qubit product checked against the dense oracle") {
  const auto p = pauli_from_string("XZ");
  const auto q = pauli_from_string("ZI");
  const auto r = pauli_product(p, q);
  CHECK(max_abs_diff(dense_oracle(r), dense_oracle(p) * dense_oracle(q)) < 1e-14);
  // (X Z)*(Z I) = (XZ) tensor Z = -i (Y tensor Z)
  CHECK(r.letter(0) == PauliLetter::Y);
  CHECK(r.letter(1) == PauliLetter::Z);
  CHECK(r.phase_exp == 3);
}

TEST_CASE("product is dense-faithful and associative, exhaustive n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t d = 1ULL << n;
    std::vector<PauliString> all;
    for (std::uint64_t x = 0; x < d; ++x) {
      for (std::uint64_t z = 0; z < d; ++z) all.emplace_back(n, x, z, 0);
    }
    for (const auto& p : all) {
      for (const auto& q : all) {
        const auto r = pauli_product(p, q);
        REQUIRE(max_abs_diff(dense_oracle(r), dense_oracle(p) * dense_oracle(q)) < 1e-14);
      }
    }
    // associativity spot-check (full triple loop is redundant given dense
    // faithfulness)
    for (std::size_t i = 0; i < all.size(); i += 3) {
      const auto& a = all[i];
      const auto& b = all[(i * 7 + 1) % all.size()];
      const auto& c = all[(i * 13 + 2) % all.size()];
      CHECK(pauli_product(pauli_product(a, b), c) == pauli_product(a, pauli_product(b, c)));
    }
  }
}

TEST_CASE("anticommutation dichotomy matches the symplectic parity, exhaustive n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t d = 1ULL << n;
    for (std::uint64_t x1 = 0; x1 < d; ++x1) {
      for (std::uint64_t z1 = 0; z1 < d; ++z1) {
        for (std::uint64_t x2 = 0; x2 < d; ++x2) {
          for (std::uint64_t z2 = 0; z2 < d; ++z2) {
            const PauliString p(n, x1, z1, 0), q(n, x2, z2, 0);
            const CMatrix pq = dense_oracle(p) * dense_oracle(q);
            const CMatrix qp = dense_oracle(q) * dense_oracle(p);
            if (anticommutes(p, q)) {
              REQUIRE(max_abs_diff(pq, -qp) < 1e-14);
            } else {
              REQUIRE(max_abs_diff(pq, qp) < 1e-14);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("commutator examples") {
  const auto Z = pauli_from_string("Z");
  CHECK(!pauli_commutator(Z, Z).has_value());

  const auto X = pauli_from_string("X");
  const auto Y = pauli_from_string("Y");
  const auto c = pauli_commutator(X, Y);
  REQUIRE(c.has_value());
  CHECK(c->second.letter(0) == PauliLetter::Z);
  CHECK(std::abs(c->first - Complex(0, 2)) < 1e-14);

  const auto xx = pauli_from_string("XX");
  const auto zi = pauli_from_string("ZI");
  const auto c2 = pauli_commutator(xx, zi);
  REQUIRE(c2.has_value());
  CHECK(c2->second == pauli_from_string("YX"));
  CHECK(std::abs(c2->first - Complex(0, -2)) < 1e-14);
  const CMatrix lhs = dense_oracle(xx) * dense_oracle(zi) - dense_oracle(zi) * dense_oracle(xx);
  CHECK(max_abs_diff(lhs, c2->first * dense_oracle(c2->second)) < 1e-14);
}

TEST_CASE("anticommute_count") {
  const LocalGenerator sz(4);
  CHECK(anticommute_count(PauliString::identity(4), sz) == 0);
  CHECK(anticommute_count(pauli_from_string("XXXX"), sz) == 4);
  CHECK(anticommute_count(pauli_from_string("XZYI"), sz) == 2);
  // for a Z generator this is just the x-mask weight
  CHECK(anticommute_count(pauli_from_string("YYZZ"), sz) == 2);
}

TEST_CASE("anticommute_count is invariant under site permutations for uniform generators") {
  const LocalGenerator sz(6);
  RngStream rng(99, 0);
  std::vector<int> perm = {0, 1, 2, 3, 4, 5};
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint64_t x = static_cast<std::uint64_t>(rng.uniform() * 64);
    const std::uint64_t z = static_cast<std::uint64_t>(rng.uniform() * 64);
    const PauliString p(6, x, z, 0);
    // Fisher-Yates shuffle driven by the test stream
    for (int i = 5; i > 0; --i) {
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform() * (i + 1))]);
    }
    auto apply = [&](std::uint64_t m) {
      std::uint64_t out = 0;
      for (int s = 0; s < 6; ++s) {
        if ((m >> s) & 1) out |= 1ULL << perm[static_cast<std::size_t>(s)];
      }
      return out;
    };
    const PauliString q(6, apply(x), apply(z), 0);
    CHECK(anticommute_count(p, sz) == anticommute_count(q, sz));
  }
}

TEST_CASE("class sizes binom(n,k) 2^n by exhaustive enumeration, n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const LocalGenerator sz(n);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    const std::uint64_t d = 1ULL << n;
    for (std::uint64_t x = 0; x < d; ++x) {
      for (std::uint64_t z = 0; z < d; ++z) {
        counts[static_cast<std::size_t>(anticommute_count(PauliString(n, x, z, 0), sz))]++;
      }
    }
    for (int k = 0; k <= n; ++k) {
      CHECK(static_cast<double>(counts[static_cast<std::size_t>(k)]) ==
            binomial(n, k) * std::ldexp(1.0, n));
    }
  }
}

TEST_CASE("to_dense examples") {
  CHECK(max_abs_diff(to_dense(PauliString::identity(2)), CMatrix::Identity(4, 4)) == 0.0);

  const LocalGenerator sz1(1);
  const CMatrix s = to_dense(sz1);
  CHECK(s(0, 0) == Complex(0.5, 0.0));
  CHECK(s(1, 1) == Complex(-0.5, 0.0));
  CHECK(s(0, 1) == Complex(0.0, 0.0));

  // every phase-0 string is Hermitian by construction
  RngStream rng(7, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const PauliString p(3, static_cast<std::uint64_t>(rng.uniform() * 8),
                        static_cast<std::uint64_t>(rng.uniform() * 8), 0);
    const CMatrix m = to_dense(p);
    CHECK(max_abs_diff(m, m.adjoint()) < 1e-15);
    CHECK(max_abs_diff(m, dense_oracle(p)) < 1e-15);
  }
}

TEST_CASE("to_dense of a random PauliSum against the term-by-term oracle") {
  RngStream rng(21, 0);
  PauliSum h(3);
  for (int t = 0; t < 3; ++t) {
    const PauliString p(3, static_cast<std::uint64_t>(rng.uniform() * 8),
                        static_cast<std::uint64_t>(rng.uniform() * 8), 0);
    h.add(Complex(rng.gaussian(), 0.0), p);
  }
  CMatrix oracle = CMatrix::Zero(8, 8);
  for (const auto& [c, p] : h.terms) oracle += c * dense_oracle(p);
  const CMatrix m = to_dense(h);
  CHECK(max_abs_diff(m, oracle) < 1e-13);
  CHECK(max_abs_diff(m, m.adjoint()) < 1e-13);  // real coefficients, phase-0 strings
  CHECK(std::abs(m.trace() - oracle.trace()) < 1e-13);
}

TEST_CASE("to_dense respects the qubit cap") {
  CHECK_THROWS_AS((void)to_dense(PauliString::identity(13)), cap_exceeded);
  CHECK_THROWS_AS((void)to_dense(PauliString::identity(9), 8), cap_exceeded);
}

TEST_CASE("pauli_trace matches dense traces") {
  RngStream rng(5, 3);
  const int n = 3;
  CMatrix o(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) o(i, j) = rng.gaussian_complex();
  }
  for (std::uint64_t x = 0; x < 8; ++x) {
    for (std::uint64_t z = 0; z < 8; ++z) {
      const PauliString p(n, x, z, 0);
      const Complex expect = (dense_oracle(p) * o).trace();
      CHECK(std::abs(pauli_trace(p, o) - expect) < 1e-12);
    }
  }
}

TEST_CASE("text format round trip") {
  CHECK(to_string(pauli_from_string("XZYI")) == "XZYI");
  CHECK(to_string(pauli_from_string("-iZZ")) == "-iZZ");
  CHECK(to_string(pauli_from_string("+iXY")) == "+iXY");
  CHECK(to_string(pauli_from_string("-YX")) == "-YX");
  CHECK(pauli_from_string("iX") == pauli_from_string("+iX"));
  CHECK(pauli_from_string("+X") == pauli_from_string("X"));
  CHECK_THROWS_AS((void)pauli_from_string("XQ"), validation_error);
  CHECK_THROWS_AS((void)pauli_from_string(""), validation_error);

  RngStream rng(11, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform() * 8);
    const std::uint64_t lim = 1ULL << n;
    const PauliString p(n, static_cast<std::uint64_t>(rng.uniform() * lim),
                        static_cast<std::uint64_t>(rng.uniform() * lim),
                        static_cast<std::uint8_t>(rng.uniform() * 4));
    CHECK(pauli_from_string(to_string(p)) == p);
  }
}

TEST_CASE("pauli sum text format round trip") {
  PauliSum h(2);
  h.add(Complex(0.5, 0.0), pauli_from_string("XX"));
  h.add(Complex(-1.25, 2.0), pauli_from_string("ZI"));
  h.add(Complex(0.0, 1.0), pauli_from_string("YZ"));
  h.canonicalize();
  const PauliSum back = pauli_sum_from_string(to_string(h));
  REQUIRE(back.terms.size() == h.terms.size());
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    CHECK(back.terms[i].second == h.terms[i].second);
    CHECK(std::abs(back.terms[i].first - h.terms[i].first) == 0.0);
  }

  // real-literal coefficients and comments are accepted
  const PauliSum simple = pauli_sum_from_string("1.5 XZ\n# comment\n-0.5 ZI\n");
  CHECK(simple.terms.size() == 2);
  CHECK_THROWS_AS((void)pauli_sum_from_string("1.5\n"), validation_error);
  CHECK_THROWS_AS((void)pauli_sum_from_string("abc XZ\n"), validation_error);
}

TEST_CASE("canonicalize folds phases and merges duplicates") {
  PauliSum h(1);
  h.add(Complex(1.0, 0.0), pauli_from_string("+iX"));  // contributes +i X
  h.add(Complex(0.0, -1.0), pauli_from_string("X"));   // contributes -i X
  h.add(Complex(2.0, 0.0), pauli_from_string("Z"));
  h.canonicalize();
  REQUIRE(h.terms.size() == 1);  // the X contributions cancel exactly
  CHECK(h.terms[0].second == pauli_from_string("Z"));
  CHECK(h.terms[0].first == Complex(2.0, 0.0));
  CHECK(h.all_coefficients_real());
}

TEST_CASE("PauliString validation") {
  CHECK_THROWS_AS(PauliString(0, 0, 0, 0), validation_error);
  CHECK_THROWS_AS(PauliString(2, 4, 0, 0), validation_error);  // mask outside n
  CHECK_THROWS_AS(PauliString(2, 0, 0, 4), validation_error);
  CHECK_THROWS_AS((void)pauli_product(pauli_from_string("X"), pauli_from_string("XX")),
                  validation_error);
  CHECK_THROWS_AS((void)LocalGenerator(2, PauliLetter::I), validation_error);
}
