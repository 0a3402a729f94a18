#include "qorbit/orbit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace qorbit {

double ClassHistogram::total() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

ClassHistogram ClassHistogram::as_normalized() const {
  if (normalized) return *this;
  const double t = total();
  require(t > 0.0, "ClassHistogram: cannot normalize zero histogram");
  ClassHistogram out{weights, true};
  for (double& w : out.weights) w /= t;
  return out;
}

double ClassHistogram::tail_mass(double threshold) const {
  const ClassHistogram h = as_normalized();
  const double mid = 0.5 * static_cast<double>(h.n_classes() - 1);
  double mass = 0.0;
  for (int k = 0; k < h.n_classes(); ++k) {
    if (std::abs(k - mid) >= threshold - 1e-12) mass += h.weights[static_cast<std::size_t>(k)];
  }
  return mass;
}

int ClassHistogram::argmax() const {
  require(!weights.empty(), "ClassHistogram: empty");
  return static_cast<int>(std::max_element(weights.begin(), weights.end()) - weights.begin());
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

DlaResult dla_closure(const std::vector<PauliString>& generators, std::size_t cap,
                      const LocalGenerator* class_generator) {
  require(!generators.empty(), "dla_closure: empty generating set");
  const int n = generators.front().n_qubits;
  for (const auto& g : generators) {
    require(g.n_qubits == n, "dla_closure: generators on mixed qubit counts");
  }
  require(cap >= generators.size(), "dla_closure: cap smaller than generating set");

  std::vector<PauliString> basis;
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PauliKeyHash> seen;
  auto insert = [&](const PauliString& p) {
    if (seen.emplace(p.x_mask, p.z_mask).second) {
      if (basis.size() + 1 > cap) {
        throw cap_exceeded("dla_closure: closure exceeded cap of " + std::to_string(cap) +
                           " strings");
      }
      basis.push_back(p.phase_stripped());
      return true;
    }
    return false;
  };
  for (const auto& g : generators) insert(g);

  // Worklist over pairs: every appended string is later paired with all
  // earlier ones, so the loop terminates exactly at the commutator fixpoint.
  for (std::size_t i = 1; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (auto c = pauli_commutator(basis[i], basis[j])) insert(c->second);
    }
  }

  std::sort(basis.begin(), basis.end(), pauli_less);
  DlaResult out;
  out.basis = std::move(basis);
  out.dimension = static_cast<int>(out.basis.size());

  LocalGenerator def(n);
  const LocalGenerator& gen = class_generator ? *class_generator : def;
  require(gen.n_qubits == n, "dla_closure: class generator dimension mismatch");
  out.class_histogram.weights.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& p : out.basis) {
    out.class_histogram.weights[static_cast<std::size_t>(anticommute_count(p, gen))] += 1.0;
  }
  return out;
}

ClassHistogram full_class_census(int n, const LocalGenerator& g) {
  require(n >= 1, "full_class_census: n must be positive");
  require(g.n_qubits == n, "full_class_census: generator dimension mismatch");
  // Per site: 1 letter equals g's letter, 1 is identity (2 commuting
  // choices), 2 anticommute; hence |C_k| = binom(n,k) 2^n for any g.
  ClassHistogram h;
  h.weights.resize(static_cast<std::size_t>(n) + 1);
  const double two_n = std::ldexp(1.0, n);
  for (int k = 0; k <= n; ++k) h.weights[static_cast<std::size_t>(k)] = binomial(n, k) * two_n;
  return h;
}

ClassHistogram symmetrized_class_census(int n) {
  require(n >= 1, "symmetrized_class_census: n must be positive");
  ClassHistogram h;
  h.weights.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    h.weights[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * (n - k + 1);
  }
  return h;
}

CompatibilityVerdict compatibility_test(int k, int k_ref, int n, double epsilon) {
  require(n >= 1, "compatibility_test: n must be positive");
  require(k >= 0 && k <= n, "compatibility_test: class index k out of range");
  require(k_ref >= 0 && k_ref <= n, "compatibility_test: reference class out of range");
  require(epsilon > 0.0 && epsilon <= 1.0, "compatibility_test: epsilon must be in (0,1]");
  // ceil(eps*n), robust against FP noise when eps*n is an exact integer.
  const double t = epsilon * n;
  const double r = std::round(t);
  const int threshold = (std::abs(t - r) < 1e-9) ? static_cast<int>(r)
                                                 : static_cast<int>(std::ceil(t));
  return CompatibilityVerdict{k_ref, k, epsilon, std::abs(k - k_ref) >= threshold};
}

ClassHistogram class_weight_distribution(const CMatrix& o, const LocalGenerator& g) {
  const Eigen::Index d = o.rows();
  require(o.cols() == d && d >= 2, "class_weight_distribution: operator not square");
  const int n = g.n_qubits;
  require(d == (Eigen::Index(1) << n), "class_weight_distribution: dimension mismatch");
  if (n > kWeightQubitCap) {
    throw cap_exceeded("class_weight_distribution: n exceeds cap " +
                       std::to_string(kWeightQubitCap));
  }

  const std::uint64_t dim = 1ULL << n;
  const double inv_d = 1.0 / static_cast<double>(dim);
  const bool z_uniform = is_diagonal(g);

  // The 4^n coefficient loop is split by x-mask into worker chunks; each
  // worker fills its own class accumulator and the accumulators are summed
  // in index order afterwards.
  const auto chunk = [&](std::size_t xm) {
    std::vector<double> acc(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::uint64_t zm = 0; zm < dim; ++zm) {
      const PauliString p(n, xm, zm, 0);
      const Complex c = pauli_trace(p, o) * inv_d;
      const double w = std::norm(c);
      if (w == 0.0) continue;
      const int k = z_uniform ? std::popcount(static_cast<std::uint64_t>(xm))
                              : anticommute_count(p, g);
      acc[static_cast<std::size_t>(k)] += w;
    }
    return acc;
  };
  const auto partials = indexed_map<std::vector<double>>(dim, chunk);

  ClassHistogram h;
  h.weights.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& acc : partials) {
    for (std::size_t k = 0; k < acc.size(); ++k) h.weights[k] += acc[k];
  }
  return h.as_normalized();
}

double concentration_bound(int n, double eps) {
  require(n >= 1, "concentration_bound: n must be positive");
  require(eps > 0.0, "concentration_bound: eps must be positive");
  return 2.0 * std::exp(-2.0 * eps * eps * static_cast<double>(n));
}

}  // namespace qorbit
