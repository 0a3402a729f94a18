#include <doctest.h>

#include <algorithm>
#include <random>

#include "qorbit/orbit.hpp"
#include "qorbit/quantum.hpp"

using namespace qorbit;

TEST_CASE("closure of a single string is abelian") {
  const auto r = dla_closure({pauli_from_string("X")});
  CHECK(r.dimension == 1);
}

TEST_CASE("closure of {X, Z} is su(2)") {
  const auto r = dla_closure({pauli_from_string("X"), pauli_from_string("Z")});
  CHECK(r.dimension == 3);
  std::vector<std::string> names;
  for (const auto& p : r.basis) names.push_back(to_string(p));
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"X", "Y", "Z"});
}

TEST_CASE("closure of {XX, ZI}") {
  const auto r = dla_closure({pauli_from_string("XX"), pauli_from_string("ZI")});
  CHECK(r.dimension == 3);
  std::vector<std::string> names;
  for (const auto& p : r.basis) names.push_back(to_string(p));
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"XX", "YX", "ZI"});
  // class histogram with the default S_z generator: ZI in C_0, XX/YX in C_2
  CHECK(r.class_histogram.weights == std::vector<double>{1.0, 0.0, 2.0});
}

TEST_CASE("closure output is commutator-closed (dense cross-check)") {
  // generators of a nontrivial closure on 3 qubits
  const std::vector<PauliString> gens = {pauli_from_string("XXI"), pauli_from_string("IZZ"),
                                         pauli_from_string("ZII")};
  const auto r = dla_closure(gens);
  REQUIRE(r.dimension <= 64);
  for (const auto& a : r.basis) {
    for (const auto& b : r.basis) {
      const auto c = pauli_commutator(a, b);
      if (!c) continue;
      const bool found = std::any_of(r.basis.begin(), r.basis.end(),
                                     [&](const PauliString& p) { return p == c->second; });
      REQUIRE(found);
      // and the commutator itself is dense-consistent
      const CMatrix da = to_dense(a), db = to_dense(b);
      const CMatrix lhs = da * db - db * da;
      CHECK((lhs - c->first * to_dense(c->second)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("closure is generator-order invariant") {
  std::vector<PauliString> gens = {pauli_from_string("XYZI"), pauli_from_string("ZZII"),
                                   pauli_from_string("IXXI"), pauli_from_string("IIZX")};
  const auto base = dla_closure(gens);
  std::mt19937 shuffler(3);
  for (int rep = 0; rep < 5; ++rep) {
    std::shuffle(gens.begin(), gens.end(), shuffler);
    const auto r = dla_closure(gens);
    REQUIRE(r.dimension == base.dimension);
    CHECK(r.basis == base.basis);  // canonical ordering makes sets comparable
  }
}

TEST_CASE("closure cap raises cap_exceeded") {
  // {XII.., ZII.., IXI.., IZI.., ...} generates su(2) per site; with pair
  // couplings the closure is the full algebra, far above a tiny cap
  const std::vector<PauliString> gens = {pauli_from_string("XIII"), pauli_from_string("ZIII"),
                                         pauli_from_string("XXII"), pauli_from_string("ZZII"),
                                         pauli_from_string("IXXI"), pauli_from_string("IIXX"),
                                         pauli_from_string("IIZZ")};
  CHECK_THROWS_AS((void)dla_closure(gens, 16), cap_exceeded);
}

TEST_CASE("full census matches the closed form and exhaustive enumeration") {
  const LocalGenerator g1(1);
  CHECK(full_class_census(1, g1).weights == std::vector<double>{2.0, 2.0});
  const LocalGenerator g2(2);
  CHECK(full_class_census(2, g2).weights == std::vector<double>{4.0, 8.0, 4.0});
  for (int n = 1; n <= 6; ++n) {
    const LocalGenerator g(n);
    const auto h = full_class_census(n, g);
    // exhaustive enumeration oracle
    std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
    const std::uint64_t d = 1ULL << n;
    for (std::uint64_t x = 0; x < d; ++x) {
      for (std::uint64_t z = 0; z < d; ++z) {
        counts[static_cast<std::size_t>(anticommute_count(PauliString(n, x, z, 0), g))] += 1.0;
      }
    }
    CHECK(h.weights == counts);
    CHECK(h.total() == std::ldexp(1.0, 2 * n));  // partition of all 4^n strings
  }
  // the census does not depend on which non-identity letter the generator uses
  const LocalGenerator gx(3, PauliLetter::X, 1.0);
  CHECK(full_class_census(3, gx).weights == full_class_census(3, LocalGenerator(3)).weights);
}

TEST_CASE("symmetrized census matches weak-composition enumeration") {
  CHECK(symmetrized_class_census(1).weights == std::vector<double>{2.0, 2.0});
  CHECK(symmetrized_class_census(2).weights == std::vector<double>{3.0, 4.0, 3.0});
  CHECK(symmetrized_class_census(2).total() == 10.0);  // binom(5,3)
  for (int n = 1; n <= 12; ++n) {
    const auto h = symmetrized_class_census(n);
    // enumerate weak compositions (p_x, p_y, p_z, p_i) of n grouped by
    // k = p_x + p_y
    std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
    for (int px = 0; px <= n; ++px) {
      for (int py = 0; px + py <= n; ++py) {
        for (int pz = 0; px + py + pz <= n; ++pz) {
          const auto s = make_symmetrized(px, py, pz, n - px - py - pz);
          counts[static_cast<std::size_t>(s.class_index())] += 1.0;
        }
      }
    }
    CHECK(h.weights == counts);
    CHECK(h.total() == binomial(n + 3, 3));
  }
}

TEST_CASE("symmetrized weights decay polynomially where full weights decay exponentially") {
  const int n = 24;
  const auto sym = symmetrized_class_census(n).as_normalized();
  const auto full = full_class_census(n, LocalGenerator(n)).as_normalized();
  const int mid = n / 2;
  const int far = mid + n / 4;
  const double sym_ratio = sym.weights[far] / sym.weights[mid];
  const double full_ratio = full.weights[far] / full.weights[mid];
  CHECK(sym_ratio >= 1.0 / n);      // polynomial suppression
  CHECK(full_ratio < sym_ratio / 10.0);  // binomial tail is far smaller
}

TEST_CASE("compatibility verdicts") {
  for (double eps : {0.1, 0.25, 0.5, 1.0}) {
    CHECK(compatibility_test(8, 0, 8, eps).compatible);  // k=n vs k_ref=0
    CHECK(!compatibility_test(3, 3, 8, eps).compatible);
  }
  // 3 >= ceil(0.25*10) = 3
  CHECK(compatibility_test(3, 0, 10, 0.25).compatible);
  CHECK(!compatibility_test(2, 0, 10, 0.25).compatible);
  // exact-integer threshold must not suffer FP inflation: ceil(0.2*5) = 1
  CHECK(compatibility_test(1, 0, 5, 0.2).compatible);
  CHECK_THROWS_AS((void)compatibility_test(9, 0, 8, 0.5), validation_error);
  CHECK_THROWS_AS((void)compatibility_test(1, 0, 8, 0.0), validation_error);
}

TEST_CASE("class weights of local operators") {
  const int n = 4;
  const LocalGenerator g(n);
  // Z on site 1 commutes with Z everywhere: all weight in class 0
  const auto wz = class_weight_distribution(to_dense(PauliString::single(n, 1, PauliLetter::Z)), g);
  CHECK(wz.weights[0] == doctest::Approx(1.0).epsilon(1e-12));
  // X on site 1 anticommutes at one site
  const auto wx = class_weight_distribution(to_dense(PauliString::single(n, 1, PauliLetter::X)), g);
  CHECK(wx.weights[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("class weights sum to one for normalized operators") {
  const int n = 4;
  const LocalGenerator g(n);
  const EnsembleSpec spec{EnsembleKind::full_unitary, n};
  RngStream rng(123, 0);
  const CMatrix u = haar_sample(spec, rng);
  const auto h = class_weight_distribution(u, g);
  CHECK(h.total() == doctest::Approx(1.0).epsilon(1e-9));

  // Hermitian operator with Tr(O^dag O) = 2^n: unit Pauli-coefficient norm
  PauliSum o(n);
  o.add(Complex(std::sqrt(0.5), 0.0), pauli_from_string("XZYI"));
  o.add(Complex(-std::sqrt(0.3), 0.0), pauli_from_string("ZZII"));
  o.add(Complex(std::sqrt(0.2), 0.0), pauli_from_string("IIXX"));
  const auto hh = class_weight_distribution(to_dense(o), g);
  CHECK(hh.total() == doctest::Approx(1.0).epsilon(1e-9));
  // weights land in the classes of the three strings: k = 3, 0, 2
  CHECK(hh.weights[3] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hh.weights[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(hh.weights[2] == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("class weight histogram respects the qubit cap") {
  const LocalGenerator g(9, PauliLetter::Z, 0.5);
  CHECK_THROWS_AS((void)class_weight_distribution(CMatrix::Identity(512, 512), g), cap_exceeded);
}

TEST_CASE("concentration bound dominates census tails") {
  // bound value
  CHECK(concentration_bound(20, 0.25) == doctest::Approx(2.0 * std::exp(-2.5)).epsilon(1e-12));
  // eps -> 0 gives the vacuous bound 2
  CHECK(concentration_bound(5, 1e-12) == doctest::Approx(2.0).epsilon(1e-9));

  for (int n : {6, 12, 20}) {
    for (double eps : {0.25, 0.5}) {
      const auto census = full_class_census(n, LocalGenerator(n));
      const double tail = census.tail_mass(eps * n);
      CHECK(tail <= concentration_bound(n, eps) + 1e-12);
    }
  }
  // n=6, eps=0.5: the two-sided tail is P(k=0) + P(k=6) = 2/64
  const auto c6 = full_class_census(6, LocalGenerator(6));
  CHECK(c6.tail_mass(3.0) == doctest::Approx(2.0 / 64.0).epsilon(1e-12));
  CHECK(c6.tail_mass(3.0) <= concentration_bound(6, 0.5));
}

TEST_CASE("histogram helpers") {
  ClassHistogram h;
  h.weights = {1.0, 3.0, 0.0};
  const auto norm = h.as_normalized();
  CHECK(norm.weights[1] == doctest::Approx(0.75));
  CHECK(norm.normalized);
  CHECK(h.argmax() == 1);
  ClassHistogram zero;
  zero.weights = {0.0};
  CHECK_THROWS_AS((void)zero.as_normalized(), validation_error);
}
