#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qorbit/orbit.hpp"
#include "qorbit/protocols.hpp"
#include "qorbit/sweep.hpp"

using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  qorbit::require(out.good(), "cannot open output path '" + out_path + "'");
  out << text;
  qorbit::require(out.good(), "failed writing '" + out_path + "'");
}

json histogram_report(int n, const qorbit::LocalGenerator& g, const qorbit::ClassHistogram& h,
                      std::optional<int> dla_dimension = std::nullopt) {
  json j;
  j["n"] = n;
  j["generator"] = qorbit::to_string(g);
  if (dla_dimension) j["dla_dimension"] = *dla_dimension;
  j["class_counts"] = h.weights;
  j["normalized_weights"] = h.as_normalized().weights;
  return j;
}

json stats_json(const qorbit::QfiStats& s) {
  return json{{"mean", s.mean},
              {"std_error", s.std_error},
              {"samples", s.samples},
              {"seed", s.master_seed},
              {"ensemble", s.ensemble}};
}

std::vector<qorbit::PauliString> parse_generators(const std::string& gens) {
  std::vector<qorbit::PauliString> out;
  std::stringstream ss(gens);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(qorbit::pauli_from_string(tok));
  }
  qorbit::require(!out.empty(), "dla: no generator strings given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-orbit quantum metrology simulator"};
  app.set_config("--config", "", "key = value config file; flags win over file entries");
  app.require_subcommand(1);

  // shared option storage
  int n = 4;
  int ne = 1;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string ensemble = "full";
  double epsilon = 0.25;
  double p = 0.0;
  int k = 0;
  double theta = 1e-3;
  std::string out_path;
  std::string format = "csv";
  double scale = 0.5;

  auto add_common = [&](CLI::App* cmd, bool with_ensemble = true) {
    cmd->add_option("--n", n, "qubit count");
    cmd->add_option("--samples", samples, "Monte-Carlo samples");
    cmd->add_option("--seed", seed, "master seed");
    if (with_ensemble) {
      cmd->add_option("--ensemble", ensemble, "full|symmetric|orthogonal");
    }
    cmd->add_option("--scale", scale, "generator scale (default 1/2, so G = S_z)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "csv|json (sweep only)");
  };

  // dla
  std::string gens = "XX,ZI";
  std::size_t cap = qorbit::kClosureCap;
  auto* cmd_dla = app.add_subcommand("dla", "Lie closure of a Pauli generating set");
  cmd_dla->add_option("--gens", gens, "comma-separated Pauli strings, e.g. XX,ZI");
  cmd_dla->add_option("--cap", cap, "closure size cap");
  add_common(cmd_dla, false);

  // census
  bool symmetrized = false;
  auto* cmd_census = app.add_subcommand("census", "equivalence-class cardinalities");
  cmd_census->add_flag("--symmetrized", symmetrized, "census of symmetrized strings");
  cmd_census->add_option("--epsilon", epsilon, "compatibility threshold fraction");
  add_common(cmd_census, false);

  // weights
  std::string op_file;
  auto* cmd_weights =
      app.add_subcommand("weights", "class-weight distribution of an operator");
  cmd_weights->add_option("--op", op_file, "PauliSum file; default: Haar-scrambled Z on site 0");
  add_common(cmd_weights, false);

  // haar-ramsey
  bool with_cfi = false;
  auto* cmd_hr = app.add_subcommand("haar-ramsey", "Haar-Ramsey Monte Carlo");
  cmd_hr->add_option("--k", k, "qubits lost before the final measurement");
  cmd_hr->add_option("--theta", theta, "CFI evaluation point (with --cfi)");
  cmd_hr->add_flag("--cfi", with_cfi,
                   "also report the fiducial-projection CFI/QFI saturation ratio");
  add_common(cmd_hr);

  // twist
  double chi = 1.0;
  double t_twist = -1.0;
  auto* cmd_twist = app.add_subcommand("twist", "one-axis twist-untwist scan");
  cmd_twist->add_option("--chi", chi, "twisting strength");
  cmd_twist->add_option("--t", t_twist, "single evolution time (default: scan grid)");
  add_common(cmd_twist, false);

  // time-avg
  std::string hc = "xsum";
  std::string state = "zeros";
  double t_total = 200.0;
  auto* cmd_tavg = app.add_subcommand("time-avg", "time-averaged QFI");
  cmd_tavg->add_option("--hc", hc, "composing Hamiltonian: xall|xsum");
  cmd_tavg->add_option("--state", state, "fiducial: zeros|plus");
  cmd_tavg->add_option("--T", t_total, "averaging window");
  add_common(cmd_tavg, false);

  // projected
  bool emit_outcomes = false;
  bool class_hist = false;
  auto* cmd_proj = app.add_subcommand("projected", "projected-ensemble protocol");
  cmd_proj->add_option("--ne", ne, "measured-subsystem size");
  cmd_proj->add_flag("--emit-outcomes", emit_outcomes, "include per-outcome aggregates");
  cmd_proj->add_flag("--class-histogram", class_hist, "collect orbit class weights (n <= 8)");
  add_common(cmd_proj, false);

  // noise
  auto* cmd_noise = app.add_subcommand("noise", "depolarized Haar-Ramsey");
  cmd_noise->add_option("--p", p, "depolarizing strength");
  add_common(cmd_noise);

  // loss
  double alpha2 = 0.5;
  std::string when = "before";
  auto* cmd_loss = app.add_subcommand("loss", "Dicke-superposition particle loss");
  cmd_loss->add_option("--k", k, "lost qubits");
  cmd_loss->add_option("--alpha2", alpha2, "|alpha|^2 of the superposition");
  cmd_loss->add_option("--when", when, "loss stage: before|after encoding");
  add_common(cmd_loss, false);

  // sweep
  qorbit::SweepSpec sweep;
  bool fit = false;
  bool timing = false;
  auto* cmd_sweep = app.add_subcommand("sweep", "scaling sweep over n");
  cmd_sweep->add_option("--experiment", sweep.experiment,
                        "haar-ramsey|twist|time-avg|projected|noise|loss")
      ->required();
  cmd_sweep->add_option("--n", sweep.n_values, "system sizes (strictly increasing)")->required();
  cmd_sweep->add_option("--ne", sweep.n_e, "measured-subsystem size (projected)");
  cmd_sweep->add_option("--k", sweep.loss_k, "lost qubits");
  cmd_sweep->add_option("--p", sweep.noise_p, "depolarizing strength");
  cmd_sweep->add_option("--epsilon", sweep.epsilon, "compatibility threshold fraction");
  cmd_sweep->add_option("--theta", sweep.theta, "CFI probe point");
  cmd_sweep->add_option("--chi", sweep.chi, "twist strength");
  cmd_sweep->add_option("--T", sweep.t_total, "time-avg window");
  cmd_sweep->add_option("--hc", sweep.hamiltonian, "time-avg Hamiltonian: xall|xsum");
  cmd_sweep->add_option("--state", sweep.state, "time-avg fiducial: zeros|plus");
  cmd_sweep->add_option("--ensemble", ensemble, "full|symmetric|orthogonal");
  cmd_sweep->add_option("--samples", sweep.samples, "Monte-Carlo samples");
  cmd_sweep->add_option("--seed", sweep.master_seed, "master seed");
  cmd_sweep->add_option("--scale", sweep.scale, "generator scale");
  cmd_sweep->add_option("--out", sweep.out_path, "output file (default stdout)");
  cmd_sweep->add_option("--format", sweep.format, "csv|json");
  cmd_sweep->add_flag("--fit", fit, "print log-log scaling fit to stderr");
  cmd_sweep->add_flag("--timing", timing, "emit real wall times (breaks byte determinism)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_dla) {
      const auto generators = parse_generators(gens);
      const qorbit::LocalGenerator g(generators.front().n_qubits, qorbit::PauliLetter::Z, scale);
      const qorbit::DlaResult r = qorbit::dla_closure(generators, cap, &g);
      json j = histogram_report(g.n_qubits, g, r.class_histogram, r.dimension);
      json basis = json::array();
      for (const auto& ps : r.basis) basis.push_back(qorbit::to_string(ps));
      j["basis"] = std::move(basis);
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_census) {
      const qorbit::LocalGenerator g(n, qorbit::PauliLetter::Z, scale);
      const qorbit::ClassHistogram h =
          symmetrized ? qorbit::symmetrized_class_census(n) : qorbit::full_class_census(n, g);
      json j = histogram_report(n, g, h);
      j["symmetrized"] = symmetrized;
      j["total"] = h.total();
      // classes metrologically compatible with the identity reference (C_0)
      json compat = json::array();
      for (int k = 0; k <= n; ++k) {
        if (qorbit::compatibility_test(k, 0, n, epsilon).compatible) compat.push_back(k);
      }
      j["epsilon"] = epsilon;
      j["compatible_classes"] = std::move(compat);
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_weights) {
      const qorbit::LocalGenerator g(n, qorbit::PauliLetter::Z, scale);
      qorbit::ClassHistogram h;
      std::string source;
      if (!op_file.empty()) {
        std::ifstream in(op_file);
        qorbit::require(in.good(), "weights: cannot open '" + op_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        qorbit::PauliSum op = qorbit::pauli_sum_from_string(buf.str());
        n = op.n_qubits();
        const qorbit::LocalGenerator gg(n, qorbit::PauliLetter::Z, scale);
        h = qorbit::class_weight_distribution(qorbit::to_dense(op), gg);
        source = op_file;
      } else {
        // mean distribution of U^dag Z_0 U over Haar draws
        const qorbit::EnsembleSpec spec{qorbit::EnsembleKind::full_unitary, n};
        const qorbit::CMatrix z0 =
            qorbit::to_dense(qorbit::PauliString::single(n, 0, qorbit::PauliLetter::Z));
        std::vector<double> acc(static_cast<std::size_t>(n) + 1, 0.0);
        for (std::uint64_t s = 0; s < samples; ++s) {
          qorbit::RngStream rng(seed, s);
          const qorbit::CMatrix u = qorbit::haar_sample(spec, rng);
          const auto w = qorbit::class_weight_distribution(u.adjoint() * z0 * u, g);
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w.weights[i];
        }
        for (double& x : acc) x /= static_cast<double>(samples);
        h.weights = std::move(acc);
        h.normalized = true;
        source = "haar-scrambled Z0";
      }
      json j = histogram_report(n, g, h);
      j["operator"] = source;
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_hr) {
      qorbit::ProtocolConfig cfg;
      cfg.n_qubits = n;
      cfg.ensemble = qorbit::ensemble_kind_from_string(ensemble);
      cfg.samples = samples;
      cfg.master_seed = seed;
      cfg.loss_k = k;
      const qorbit::LocalGenerator g(n, qorbit::PauliLetter::Z, scale);
      const qorbit::ProtocolResult r = qorbit::haar_ramsey_mc(cfg, g);
      json j = stats_json(r.qfi_stats);
      j["analytic_oracle"] = k > 0 ? qorbit::haar_ramsey_loss_avg(n, k)
                                   : qorbit::analytic_haar_avg(cfg.spec(), g);
      if (with_cfi) {
        qorbit::require(cfg.ensemble == qorbit::EnsembleKind::full_unitary && k == 0,
                        "haar-ramsey --cfi: full ensemble without loss only");
        const qorbit::CMatrix gd = qorbit::to_dense(g);
        const qorbit::CVector psi0 = qorbit::fiducial_state(gd.rows());
        double ratio_sum = 0.0;
        const std::uint64_t cfi_draws = std::min<std::uint64_t>(samples, 50);
        for (std::uint64_t i = 0; i < cfi_draws; ++i) {
          qorbit::RngStream rng(seed, i);
          const qorbit::CMatrix u = qorbit::haar_sample(cfg.spec(), rng);
          const qorbit::CMatrix gp = u.adjoint() * gd * u;
          ratio_sum += qorbit::cfi_fiducial_measurement(gp, psi0, theta) /
                       qorbit::qfi_pure(u * psi0, gd);
        }
        j["theta"] = theta;
        j["cfi_qfi_ratio_mean"] = ratio_sum / static_cast<double>(cfi_draws);
      }
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_twist) {
      json j;
      j["n"] = n;
      j["chi"] = chi;
      if (t_twist >= 0.0) {
        j["t"] = t_twist;
        j["qfi"] = qorbit::twist_untwist(n, chi, t_twist);
      } else {
        const auto scan = qorbit::twist_untwist_scan(n, chi);
        json pts = json::array();
        double best_f = -1.0, best_t = 0.0;
        for (const auto& pt : scan) {
          pts.push_back(json{{"t", pt.t}, {"qfi", pt.qfi}});
          if (pt.qfi > best_f) {
            best_f = pt.qfi;
            best_t = pt.t;
          }
        }
        j["scan"] = std::move(pts);
        j["best_t"] = best_t;
        j["best_qfi"] = best_f;
      }
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_tavg) {
      const qorbit::PauliSum h = [&] {
        qorbit::SweepSpec s;
        s.hamiltonian = hc;
        qorbit::PauliSum sum(n);
        if (hc == "xall") {
          sum.add(1.0, qorbit::PauliString(n, (1ULL << n) - 1, 0, 0));
        } else if (hc == "xsum") {
          for (int i = 0; i < n; ++i) {
            sum.add(1.0, qorbit::PauliString::single(n, i, qorbit::PauliLetter::X));
          }
        } else {
          throw qorbit::validation_error("time-avg: unknown --hc '" + hc + "'");
        }
        return sum;
      }();
      qorbit::CVector psi;
      if (state == "zeros") {
        psi = qorbit::fiducial_state(Eigen::Index(1) << n);
      } else if (state == "plus") {
        const Eigen::Index d = Eigen::Index(1) << n;
        psi = qorbit::CVector::Constant(d, qorbit::Complex(1.0 / std::sqrt(double(d)), 0.0));
      } else {
        throw qorbit::validation_error("time-avg: unknown --state '" + state + "'");
      }
      const qorbit::LocalGenerator g(n, qorbit::PauliLetter::Z, scale);
      const qorbit::CMatrix hd = qorbit::to_dense(h);
      Eigen::SelfAdjointEigenSolver<qorbit::CMatrix> es(hd, Eigen::EigenvaluesOnly);
      const double emax = std::max(std::abs(es.eigenvalues().minCoeff()),
                                   std::abs(es.eigenvalues().maxCoeff()));
      const double dt = emax > 0.0 ? M_PI / (10.0 * emax) : 0.1;
      json j;
      j["n"] = n;
      j["hc"] = hc;
      j["state"] = state;
      j["T"] = t_total;
      j["time_avg_qfi"] = qorbit::time_avg_qfi(h, g, psi, t_total, dt);
      j["infinite_T_limit"] = qorbit::time_avg_qfi_limit(h, g, psi);
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_proj) {
      qorbit::ProtocolConfig cfg;
      cfg.n_qubits = n;
      cfg.n_e = ne;
      cfg.samples = samples;
      cfg.master_seed = seed;
      cfg.collect_outcomes = emit_outcomes;
      cfg.collect_class_histogram = class_hist;
      const qorbit::ProtocolResult r = qorbit::projected_ensemble_protocol(cfg);
      json j = stats_json(r.qfi_stats);
      j["weighted_mean"] = r.qfi_stats.mean;
      j["unweighted_outcome_mean"] = r.unweighted_outcome_mean;
      j["excluded_mass"] = r.excluded_mass;
      j["degenerate_samples"] = r.degenerate_samples;
      if (emit_outcomes) {
        json arr = json::array();
        for (const auto& o : r.per_outcome) {
          arr.push_back(json{{"outcome", o.outcome_bits},
                             {"mean_probability", o.mean_probability},
                             {"mean_qfi", o.mean_qfi},
                             {"count", o.count}});
        }
        j["per_outcome"] = std::move(arr);
      }
      if (r.class_histogram) j["class_weights"] = r.class_histogram->weights;
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_noise) {
      qorbit::ProtocolConfig cfg;
      cfg.n_qubits = n;
      cfg.ensemble = qorbit::ensemble_kind_from_string(ensemble);
      cfg.samples = samples;
      cfg.master_seed = seed;
      cfg.noise_p = p;
      const qorbit::LocalGenerator g(n, qorbit::PauliLetter::Z, scale);
      const qorbit::ProtocolResult r =
          qorbit::noisy_protocol(cfg, qorbit::BaseProtocol::haar_ramsey, g);
      json j = stats_json(r.qfi_stats);
      j["suppression_factor"] =
          qorbit::depolarize_factor(p, static_cast<int>(cfg.spec().dim()));
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_loss) {
      qorbit::require(alpha2 >= 0.0 && alpha2 <= 1.0, "loss: alpha2 must be in [0,1]");
      const qorbit::Complex a(std::sqrt(alpha2), 0.0);
      const qorbit::Complex b(std::sqrt(1.0 - alpha2), 0.0);
      const qorbit::LossStage stage = [&] {
        if (when == "before") return qorbit::LossStage::before;
        if (when == "after") return qorbit::LossStage::after;
        throw qorbit::validation_error("loss: --when must be before|after");
      }();
      const qorbit::LossExperimentResult r = qorbit::loss_experiment(n, k, a, b, stage);
      json j{{"n", n},       {"k", k},
             {"alpha2", alpha2}, {"when", when},
             {"numeric", r.numeric}, {"closed_form", r.closed_form}};
      emit(j.dump(2) + "\n", out_path);
    } else if (*cmd_sweep) {
      sweep.ensemble = qorbit::ensemble_kind_from_string(ensemble);
      sweep.timing = timing;
      const auto rows = qorbit::run_sweep(sweep);
      qorbit::write_sweep_output(sweep, rows);
      if (fit) {
        const qorbit::FitResult f = qorbit::fit_scaling(rows);
        std::fprintf(stderr, "fit: exponent=%.6f halfwidth=%.6f\n", f.exponent,
                     f.confidence_halfwidth);
      }
    }
  } catch (const qorbit::cap_exceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const qorbit::validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
