#include "qorbit/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace qorbit {

namespace {

double qfi_pure_diag(const CVector& psi, const RVector& gdiag) {
  double e1 = 0.0, e2 = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    e1 += w * gdiag(i);
    e2 += w * gdiag(i) * gdiag(i);
  }
  double f = 4.0 * (e2 - e1 * e1);
  return f < 0.0 ? 0.0 : f;
}

CMatrix sector_generator_matrix(const LocalGenerator& g) {
  const double spin = 0.5 * g.n_qubits;
  SpinAxis axis;
  switch (g.uniform_letter()) {
    case PauliLetter::X: axis = SpinAxis::x; break;
    case PauliLetter::Y: axis = SpinAxis::y; break;
    case PauliLetter::Z: axis = SpinAxis::z; break;
    default: throw validation_error("sector generator: identity letter");
  }
  return (2.0 * g.scale) * spin_operator(axis, spin);
}

/// Reduced density matrix, in the Dicke basis of r = n - k qubits, of a
/// permutation-symmetric state with Dicke coefficients c[m] (m excitations).
/// Branching: |m_n> = sum_j sqrt(binom(r,j) binom(k,m-j) / binom(n,m))
/// |j_r>|{m-j}_k>, and tracing the k-qubit register leaves one coherent
/// block per lost-excitation count l = m - j.
CMatrix symmetric_reduce(const CVector& c, int n, int k) {
  require(c.size() == n + 1, "symmetric_reduce: coefficient length mismatch");
  require(k >= 0 && k < n, "symmetric_reduce: k out of range");
  const int r = n - k;
  CMatrix rho = CMatrix::Zero(r + 1, r + 1);
  for (int l = 0; l <= k; ++l) {
    CVector a = CVector::Zero(r + 1);
    for (int j = 0; j <= r; ++j) {
      const int m = j + l;
      if (m > n) continue;
      a(j) = c(m) * std::sqrt(binomial(r, j) * binomial(k, l) / binomial(n, m));
    }
    rho.noalias() += a * a.adjoint();
  }
  return rho;
}

QfiStats stats_from_samples(const std::vector<double>& vals, const ProtocolConfig& config,
                            const std::string& ensemble_desc) {
  const MeanStdErr ms = mean_std_error(vals);
  QfiStats s;
  s.mean = ms.mean;
  s.std_error = ms.std_error;
  s.samples = vals.size();
  s.master_seed = config.master_seed;
  s.ensemble = ensemble_desc;
  return s;
}

}  // namespace

void ProtocolConfig::validate() const {
  require(n_qubits >= 1, "config: n_qubits must be positive");
  require(samples >= 1, "config: samples must be >= 1");
  require(n_e >= 0 && n_e < n_qubits, "config: need 0 <= n_e < n_qubits");
  require(noise_p >= 0.0 && noise_p <= 1.0, "config: noise_p must be in [0,1]");
  require(loss_k >= 0 && loss_k < n_qubits, "config: need 0 <= loss_k < n_qubits");
  require(epsilon > 0.0 && epsilon <= 1.0, "config: epsilon must be in (0,1]");
  require(p_min >= 0.0 && p_min < 1.0, "config: p_min out of range");
  require(theta_probe != 0.0, "config: theta_probe must be nonzero");
  (void)spec().dim();  // enforces per-ensemble dimension rules
}

std::string ProtocolConfig::echo() const {
  std::string s = "n=" + std::to_string(n_qubits) + ";ensemble=" + to_string(ensemble) +
                  ";samples=" + std::to_string(samples) + ";seed=" + std::to_string(master_seed);
  if (n_e > 0) s += ";ne=" + std::to_string(n_e);
  if (loss_k > 0) s += ";k=" + std::to_string(loss_k);
  if (noise_p > 0.0) s += ";p=" + std::to_string(noise_p);
  return s;
}

ProtocolResult haar_ramsey_mc(const ProtocolConfig& config, const LocalGenerator& g) {
  config.validate();
  require(g.n_qubits == config.n_qubits, "haar_ramsey_mc: generator dimension mismatch");
  const EnsembleSpec spec = config.spec();
  const Eigen::Index d = spec.dim();
  const bool full = spec.kind == EnsembleKind::full_unitary;
  const int k = config.loss_k;

  // Per-ensemble generator representation. Symmetric ensembles run natively
  // in the sector, so they need a site-uniform generator.
  RVector gdiag;
  CMatrix gmat;
  bool diag_path = false;
  if (full) {
    if (is_diagonal(g) && k == 0) {
      gdiag = diagonal_of(g);
      diag_path = true;
    } else {
      gmat = to_dense(g);
    }
  } else {
    gmat = sector_generator_matrix(g);
  }

  CMatrix g_reduced;
  if (k > 0) {
    if (full) {
      LocalGenerator gr(config.n_qubits - k, PauliLetter::Z, g.scale);
      gr.letters.assign(g.letters.begin(), g.letters.end() - k);
      g_reduced = to_dense(gr);
    } else {
      require(is_diagonal(g), "haar_ramsey_mc: symmetric loss path needs a Z generator");
      LocalGenerator gr(config.n_qubits - k, PauliLetter::Z, g.scale);
      g_reduced = sector_generator_matrix(gr);
    }
  }

  std::vector<int> discard;
  for (int s = config.n_qubits - k; s < config.n_qubits; ++s) discard.push_back(s);

  const auto sample = [&](std::size_t i) -> double {
    RngStream rng(config.master_seed, i);
    const CMatrix u = haar_sample(spec, rng);
    const CVector psi = u.col(0);  // U |0...0>
    if (k == 0) {
      return diag_path ? qfi_pure_diag(psi, gdiag) : qfi_pure(psi, gmat);
    }
    if (full) {
      return qfi_mixed(partial_trace(psi, discard), g_reduced);
    }
    return qfi_mixed(symmetric_reduce(psi, config.n_qubits, k), g_reduced);
  };
  const auto vals = indexed_map<double>(config.samples, sample, config.force_threads);

  ProtocolResult out;
  std::string desc = spec.describe();
  if (k > 0) desc += ",loss_k=" + std::to_string(k);
  out.qfi_stats = stats_from_samples(vals, config, desc);
  out.unweighted_outcome_mean = out.qfi_stats.mean;
  out.config_echo = config.echo();
  return out;
}

double twist_untwist(int n, double chi, double t) {
  require(n >= 1, "twist_untwist: n must be positive");
  if (n > 4000) throw cap_exceeded("twist_untwist: n exceeds the sector cap of 4000");
  const double spin = 0.5 * n;
  const CMatrix sx = spin_operator(SpinAxis::x, spin);
  const CMatrix sy = spin_operator(SpinAxis::y, spin);
  const CMatrix h = chi * (sx * sx);
  const CVector psi = mat_exp_hermitian(h, t) * fiducial_state(n + 1);
  return qfi_pure(psi, -sy);
}

std::vector<TwistScanPoint> twist_untwist_scan(int n, double chi, int points, double t_max) {
  require(n >= 1, "twist_untwist_scan: n must be positive");
  if (n > 4000) throw cap_exceeded("twist_untwist_scan: n exceeds the sector cap of 4000");
  require(points >= 2, "twist_untwist_scan: need at least 2 grid points");
  if (t_max <= 0.0) t_max = 4.0 / std::sqrt(static_cast<double>(n));
  const double spin = 0.5 * n;
  const CMatrix sx = spin_operator(SpinAxis::x, spin);
  const CMatrix sy = spin_operator(SpinAxis::y, spin);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(chi * (sx * sx));
  const CVector psi0 = es.eigenvectors().adjoint() * fiducial_state(n + 1);
  std::vector<TwistScanPoint> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = t_max * static_cast<double>(i) / (points - 1);
    CVector phased(psi0.size());
    for (Eigen::Index j = 0; j < psi0.size(); ++j) {
      phased(j) = std::exp(Complex(0.0, -t * es.eigenvalues()(j))) * psi0(j);
    }
    const CVector psi = es.eigenvectors() * phased;
    grid[static_cast<std::size_t>(i)] = {t, qfi_pure(psi, -sy)};
  }
  return grid;
}

namespace {

struct Evolver {
  Eigen::SelfAdjointEigenSolver<CMatrix> es;
  CVector psi_tilde;

  Evolver(const CMatrix& h, const CVector& psi) : es(h), psi_tilde(es.eigenvectors().adjoint() * psi) {}

  CVector state_at(double t) const {
    CVector v(psi_tilde.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v(i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i))) * psi_tilde(i);
    }
    return es.eigenvectors() * v;
  }

  double max_abs_energy() const {
    return std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
  }
};

double trapezoid_avg_qfi(const Evolver& ev, const CMatrix& gd, double t_total, int intervals) {
  const double dt = t_total / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const CVector psi = ev.state_at(dt * i);
    const double f = qfi_pure(psi, gd);
    acc += (i == 0 || i == intervals) ? 0.5 * f : f;
  }
  return acc * dt / t_total;
}

}  // namespace

double time_avg_qfi(const PauliSum& h_c, const LocalGenerator& g, const CVector& state,
                    double t_total, double dt) {
  require(t_total > 0.0 && dt > 0.0, "time_avg_qfi: T and dt must be positive");
  const CMatrix h = to_dense(h_c);
  require(state.size() == h.rows(), "time_avg_qfi: state dimension mismatch");
  require_normalized(state);
  const CMatrix gd = to_dense(g);
  const Evolver ev(h, state);
  const double emax = ev.max_abs_energy();
  if (emax > 0.0) {
    require(dt <= M_PI / (10.0 * emax) + 1e-15,
            "time_avg_qfi: dt must resolve the fastest Bohr frequency (dt <= pi/(10 ||H||))");
  }
  const int intervals = std::max(2, static_cast<int>(std::ceil(t_total / dt)));
  const double coarse = trapezoid_avg_qfi(ev, gd, t_total, intervals);
  const double fine = trapezoid_avg_qfi(ev, gd, t_total, 2 * intervals);
  if (std::abs(coarse - fine) > 0.01 * std::abs(fine) + 1e-12) {
    throw validation_error("time_avg_qfi: step-halving disagreement above 1%, dt too coarse");
  }
  return fine;
}

namespace {

double degeneracy_tol(const RVector& energies) {
  const double scale = std::max(std::abs(energies.minCoeff()), std::abs(energies.maxCoeff()));
  return 1e-8 * (1.0 + scale);
}

}  // namespace

double time_avg_qfi_limit(const PauliSum& h_c, const LocalGenerator& g, const CVector& state) {
  const CMatrix h = to_dense(h_c);
  require(state.size() == h.rows(), "time_avg_qfi_limit: state dimension mismatch");
  require_normalized(state);
  const CMatrix gd = to_dense(g);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector e = es.eigenvalues();
  const double tol = degeneracy_tol(e);
  const CMatrix gt = es.eigenvectors().adjoint() * gd * es.eigenvectors();
  const CMatrix g2t = gt * gt;
  const CVector pt = es.eigenvectors().adjoint() * state;
  const Eigen::Index d = e.size();

  // <P(G^2)>: matrix elements between (near-)equal energies survive.
  double a_term = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(e(i) - e(j)) <= tol) {
        a_term += (std::conj(pt(i)) * g2t(i, j) * pt(j)).real();
      }
    }
  }

  // Bohr-frequency components of <G(t)>: group the d^2 transition terms by
  // frequency and sum |s_w|^2 over groups (the w = 0 group is <P(G)>^2).
  std::vector<std::pair<double, Complex>> freq_terms;
  freq_terms.reserve(static_cast<std::size_t>(d) * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex b = std::conj(pt(i)) * gt(i, j) * pt(j);
      if (std::abs(b) < 1e-16) continue;
      freq_terms.emplace_back(e(i) - e(j), b);
    }
  }
  std::sort(freq_terms.begin(), freq_terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  double osc = 0.0;
  std::size_t i = 0;
  while (i < freq_terms.size()) {
    Complex s = freq_terms[i].second;
    std::size_t j = i + 1;
    while (j < freq_terms.size() && freq_terms[j].first - freq_terms[j - 1].first <= tol) {
      s += freq_terms[j].second;
      ++j;
    }
    osc += std::norm(s);
    i = j;
  }
  return 4.0 * (a_term - osc);
}

CMatrix centralizer_projection_oracle(const CMatrix& h_c, const CMatrix& g) {
  require(h_c.rows() == g.rows() && h_c.cols() == g.cols(),
          "centralizer_projection_oracle: dimension mismatch");
  require_hermitian(h_c, 1e-8, "centralizer projection Hamiltonian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h_c);
  const RVector e = es.eigenvalues();
  const double tol = degeneracy_tol(e);
  CMatrix gt = es.eigenvectors().adjoint() * g * es.eigenvectors();
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      if (std::abs(e(i) - e(j)) > tol) gt(i, j) = Complex(0.0, 0.0);
    }
  }
  return es.eigenvectors() * gt * es.eigenvectors().adjoint();
}

CMatrix centralizer_projection_oracle(const PauliSum& h_c, const CMatrix& g) {
  return centralizer_projection_oracle(to_dense(h_c), g);
}

ProtocolResult projected_ensemble_protocol(const ProtocolConfig& config) {
  config.validate();
  require(config.ensemble == EnsembleKind::full_unitary,
          "projected_ensemble_protocol: requires the full ensemble");
  const int n = config.n_qubits;
  const int ne = config.n_e;
  const EnsembleSpec spec = config.spec();
  const LocalGenerator g(n);  // S_z
  const RVector gdiag = diagonal_of(g);

  std::vector<int> sites;
  for (int s = n - ne; s < n; ++s) sites.push_back(s);
  const Eigen::Index n_out = Eigen::Index(1) << ne;

  struct SampleOut {
    double weighted = 0.0;
    double excluded = 0.0;
    bool degenerate = false;
    std::vector<double> outcome_p;
    std::vector<double> outcome_f;
    std::vector<double> hist;
  };

  const auto sample = [&](std::size_t idx) -> SampleOut {
    RngStream rng(config.master_seed, idx);
    const CMatrix u = haar_sample(spec, rng);
    SampleOut out;
    if (ne == 0) {
      // no measurement: the protocol is the plain Haar-Ramsey on U|0>
      out.weighted = qfi_pure_diag(u.col(0), gdiag);
      out.outcome_p = {1.0};
      out.outcome_f = {out.weighted};
      return out;
    }
    const CVector psi = u.col(0);
    out.outcome_p.assign(static_cast<std::size_t>(n_out), 0.0);
    out.outcome_f.assign(static_cast<std::size_t>(n_out), std::nan(""));
    double total_p = 0.0;
    for (Eigen::Index z = 0; z < n_out; ++z) {
      std::vector<int> bits(static_cast<std::size_t>(ne));
      for (int b = 0; b < ne; ++b) bits[static_cast<std::size_t>(b)] = (z >> (ne - 1 - b)) & 1;
      const MeasureResult mr = measure_subsystem(psi, sites, bits, config.p_min);
      out.outcome_p[static_cast<std::size_t>(z)] = mr.probability;
      if (!mr.conditional) {
        out.excluded += mr.probability;
        continue;
      }
      // re-prepare the outcome on the measured register, then invert:
      // |phi_z> = U^dag (|psi_z> (x) |z>); measured sites are the least
      // significant dense bits, so the embedding is contiguous.
      CVector embed = CVector::Zero(psi.size());
      const CVector& cond = *mr.conditional;
      for (Eigen::Index a = 0; a < cond.size(); ++a) embed(a * n_out + z) = cond(a);
      const CVector probe = u.adjoint() * embed;
      const double f = qfi_pure_diag(probe, gdiag);
      out.outcome_f[static_cast<std::size_t>(z)] = f;
      out.weighted += mr.probability * f;
      total_p += mr.probability;
    }
    out.degenerate = (total_p == 0.0);
    if (config.collect_class_histogram && n <= kWeightQubitCap) {
      // operator orbit of the first measured projector: (I + U^dag Z_s U)/2
      const CMatrix zs = to_dense(PauliString::single(n, n - ne, PauliLetter::Z));
      const CMatrix orbit =
          0.5 * (CMatrix::Identity(psi.size(), psi.size()) + u.adjoint() * zs * u);
      out.hist = class_weight_distribution(orbit, g).weights;
    }
    return out;
  };

  const auto results = indexed_map<SampleOut>(config.samples, sample, config.force_threads);

  ProtocolResult out;
  std::vector<double> weighted;
  weighted.reserve(results.size());
  std::vector<double> sum_p(static_cast<std::size_t>(std::max<Eigen::Index>(n_out, 1)), 0.0);
  std::vector<double> sum_f(sum_p.size(), 0.0);
  std::vector<std::uint64_t> cnt(sum_p.size(), 0);
  std::vector<double> hist_acc;
  std::uint64_t hist_n = 0;
  double unweighted = 0.0;
  std::uint64_t unweighted_n = 0;
  for (const auto& r : results) {
    if (r.degenerate) {
      ++out.degenerate_samples;
      continue;
    }
    weighted.push_back(r.weighted);
    out.excluded_mass += r.excluded;
    for (std::size_t z = 0; z < r.outcome_p.size(); ++z) {
      sum_p[z] += r.outcome_p[z];
      if (!std::isnan(r.outcome_f[z])) {
        sum_f[z] += r.outcome_f[z];
        cnt[z] += 1;
        unweighted += r.outcome_f[z];
        ++unweighted_n;
      }
    }
    if (!r.hist.empty()) {
      if (hist_acc.empty()) hist_acc.assign(r.hist.size(), 0.0);
      for (std::size_t k = 0; k < r.hist.size(); ++k) hist_acc[k] += r.hist[k];
      ++hist_n;
    }
  }
  require(!weighted.empty(), "projected_ensemble_protocol: every sample was degenerate");
  out.qfi_stats = stats_from_samples(weighted, config,
                                     spec.describe() + ",ne=" + std::to_string(ne));
  out.excluded_mass /= static_cast<double>(weighted.size());
  out.unweighted_outcome_mean = unweighted_n ? unweighted / static_cast<double>(unweighted_n) : 0.0;
  if (config.collect_outcomes) {
    for (std::size_t z = 0; z < sum_p.size(); ++z) {
      OutcomeRecord rec;
      for (int b = 0; b < std::max(ne, 1) && ne > 0; ++b) {
        rec.outcome_bits += ((z >> (ne - 1 - b)) & 1) ? '1' : '0';
      }
      rec.mean_probability = sum_p[z] / static_cast<double>(weighted.size());
      rec.mean_qfi = cnt[z] ? sum_f[z] / static_cast<double>(cnt[z]) : 0.0;
      rec.count = cnt[z];
      out.per_outcome.push_back(std::move(rec));
    }
  }
  if (hist_n > 0) {
    ClassHistogram h;
    h.weights = hist_acc;
    for (double& w : h.weights) w /= static_cast<double>(hist_n);
    h.normalized = true;
    out.class_histogram = std::move(h);
  }
  out.config_echo = config.echo();
  return out;
}

ProtocolResult noisy_protocol(const ProtocolConfig& config, BaseProtocol base,
                              const LocalGenerator& g) {
  require(base == BaseProtocol::haar_ramsey, "noisy_protocol: unsupported base protocol");
  config.validate();
  require(config.loss_k == 0, "noisy_protocol: combine with loss is not supported");
  if (config.noise_p == 0.0) return haar_ramsey_mc(config, g);

  const EnsembleSpec spec = config.spec();
  const Eigen::Index d = spec.dim();
  const bool full = spec.kind == EnsembleKind::full_unitary;
  const CMatrix gmat = full ? to_dense(g) : sector_generator_matrix(g);
  const double p = config.noise_p;

  const auto sample = [&](std::size_t i) -> double {
    RngStream rng(config.master_seed, i);
    const CMatrix u = haar_sample(spec, rng);
    const CVector psi = u.col(0);
    CMatrix rho = (1.0 - p) * (psi * psi.adjoint());
    rho += (p / static_cast<double>(d)) * CMatrix::Identity(d, d);
    return qfi_mixed(rho, gmat);
  };
  const auto vals = indexed_map<double>(config.samples, sample, config.force_threads);

  ProtocolResult out;
  out.qfi_stats = stats_from_samples(
      vals, config, spec.describe() + ",depolarize_p=" + std::to_string(p));
  out.unweighted_outcome_mean = out.qfi_stats.mean;
  out.config_echo = config.echo();
  return out;
}

LossExperimentResult loss_experiment(int n, int k, Complex alpha, Complex beta, LossStage when) {
  require(n >= 2 && n % 2 == 0, "loss_experiment: n must be even and >= 2");
  if (n > kDenseQubitCap) throw cap_exceeded("loss_experiment: n exceeds the dense cap");
  require(k >= 0 && k < n, "loss_experiment: need 0 <= k < n");
  const double a2 = std::norm(alpha), b2 = std::norm(beta);
  require(std::abs(a2 + b2 - 1.0) <= 1e-9, "loss_experiment: |alpha|^2 + |beta|^2 must be 1");
  const int q = n / 2;
  const int r = n - k;

  const Eigen::Index d = Eigen::Index(1) << n;
  CVector psi = CVector::Zero(d);
  psi += alpha * fiducial_state(d);
  psi += beta * dicke_state(n, q);

  if (when == LossStage::after) {
    // encode at a generic probe point first; the reduced family stays
    // unitary under the kept-site generator, so the QFI is phi-independent
    const double phi0 = 0.3;
    const RVector gfull = diagonal_of(LocalGenerator(n));
    for (Eigen::Index m = 0; m < d; ++m) psi(m) *= std::exp(Complex(0.0, -phi0 * gfull(m)));
  }

  std::vector<int> discard;
  for (int s = r; s < n; ++s) discard.push_back(s);
  const CMatrix rho = k > 0 ? partial_trace(psi, discard)
                            : CMatrix(psi * psi.adjoint());
  const CMatrix gr = to_dense(LocalGenerator(r));

  LossExperimentResult res;
  res.numeric = qfi_mixed(rho, gr);
  res.closed_form = loss_qfi_closed_form(n, k, a2, b2);
  return res;
}

QfiStats commuting_sanity(int n, std::uint64_t samples, std::uint64_t seed, bool contrast) {
  require(n >= 1 && n <= 10, "commuting_sanity: n out of range");
  require(samples >= 1, "commuting_sanity: samples must be >= 1");
  const Eigen::Index d = Eigen::Index(1) << n;
  const RVector gdiag = diagonal_of(LocalGenerator(n));

  const auto sample = [&](std::size_t i) -> double {
    RngStream rng(seed, i);
    PauliSum h(n);
    const int terms = 2 * n;
    for (int t = 0; t < terms; ++t) {
      // random string over {I,Z}: anticommute_count against S_z is 0
      std::uint64_t zm = 0;
      do {
        zm = static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(d));
      } while (zm == 0 || zm >= static_cast<std::uint64_t>(d));
      h.add(Complex(rng.gaussian(), 0.0), PauliString(n, 0, zm, 0));
    }
    if (contrast) {
      const std::uint64_t all = (n >= 64) ? ~0ULL : ((1ULL << n) - 1);
      h.add(Complex(1.0, 0.0), PauliString(n, all, 0, 0));
    }
    h.canonicalize();
    const CVector psi = mat_exp_hermitian(to_dense(h), 1.0) * fiducial_state(d);
    return qfi_pure_diag(psi, gdiag);
  };
  const auto vals = indexed_map<double>(samples, sample);
  const MeanStdErr ms = mean_std_error(vals);
  QfiStats s;
  s.mean = ms.mean;
  s.std_error = ms.std_error;
  s.samples = samples;
  s.master_seed = seed;
  s.ensemble = contrast ? "c0-random+Xn" : "c0-random";
  return s;
}

}  // namespace qorbit
