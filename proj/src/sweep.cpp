#include "qorbit/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qorbit {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const std::vector<std::string> kExperiments = {"haar-ramsey", "twist", "time-avg",
                                               "projected", "noise", "loss"};

CVector sweep_state(const std::string& name, int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  if (name == "zeros") return fiducial_state(d);
  if (name == "plus") {
    CVector v = CVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    return v;
  }
  throw validation_error("unknown sweep state '" + name + "' (expected zeros|plus)");
}

PauliSum sweep_hamiltonian(const std::string& name, int n) {
  PauliSum h(n);
  if (name == "xall") {
    const std::uint64_t all = (1ULL << n) - 1;
    h.add(1.0, PauliString(n, all, 0, 0));
    return h;
  }
  if (name == "xsum") {
    for (int i = 0; i < n; ++i) h.add(1.0, PauliString::single(n, i, PauliLetter::X));
    return h;
  }
  throw validation_error("unknown sweep hamiltonian '" + name + "' (expected xall|xsum)");
}

SweepRow run_one(const SweepSpec& spec, int n) {
  SweepRow row;
  row.experiment = spec.experiment;
  row.n = n;
  row.samples = spec.samples;
  row.seed = spec.master_seed;

  ProtocolConfig cfg;
  cfg.n_qubits = n;
  cfg.ensemble = spec.ensemble;
  cfg.samples = spec.samples;
  cfg.master_seed = spec.master_seed;
  cfg.epsilon = spec.epsilon;
  cfg.theta_probe = spec.theta;
  const LocalGenerator g(n, PauliLetter::Z, spec.scale);

  if (spec.experiment == "haar-ramsey") {
    cfg.loss_k = spec.loss_k;
    const ProtocolResult r = haar_ramsey_mc(cfg, g);
    row.mean = r.qfi_stats.mean;
    row.std_error = r.qfi_stats.std_error;
    row.analytic_oracle = spec.loss_k > 0 ? haar_ramsey_loss_avg(n, spec.loss_k)
                                          : analytic_haar_avg(cfg.spec(), g);
    row.params = r.config_echo;
  } else if (spec.experiment == "twist") {
    const auto scan = twist_untwist_scan(n, spec.chi);
    const auto best = std::max_element(scan.begin(), scan.end(),
                                       [](const auto& a, const auto& b) { return a.qfi < b.qfi; });
    row.mean = best->qfi;
    row.std_error = 0.0;
    row.params = "chi=" + fmt17(spec.chi) + ";t_best=" + fmt17(best->t);
  } else if (spec.experiment == "time-avg") {
    const PauliSum h = sweep_hamiltonian(spec.hamiltonian, n);
    const CVector psi = sweep_state(spec.state, n);
    const CMatrix hd = to_dense(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hd, Eigen::EigenvaluesOnly);
    const double emax =
        std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
    const double dt = emax > 0.0 ? M_PI / (10.0 * emax) : 0.1;
    row.mean = time_avg_qfi(h, g, psi, spec.t_total, dt);
    row.std_error = 0.0;
    row.analytic_oracle = time_avg_qfi_limit(h, g, psi);
    row.params = "hc=" + spec.hamiltonian + ";state=" + spec.state + ";T=" + fmt17(spec.t_total);
  } else if (spec.experiment == "projected") {
    cfg.n_e = spec.n_e;
    const ProtocolResult r = projected_ensemble_protocol(cfg);
    row.mean = r.qfi_stats.mean;
    row.std_error = r.qfi_stats.std_error;
    row.params = r.config_echo;
  } else if (spec.experiment == "noise") {
    cfg.noise_p = spec.noise_p;
    const ProtocolResult r = noisy_protocol(cfg, BaseProtocol::haar_ramsey, g);
    row.mean = r.qfi_stats.mean;
    row.std_error = r.qfi_stats.std_error;
    row.analytic_oracle = depolarize_factor(spec.noise_p, static_cast<int>(cfg.spec().dim())) *
                          analytic_haar_avg(cfg.spec(), g);
    row.params = r.config_echo;
  } else if (spec.experiment == "loss") {
    const Complex amp(1.0 / std::sqrt(2.0), 0.0);
    const LossExperimentResult r = loss_experiment(n, spec.loss_k, amp, amp, LossStage::before);
    row.mean = r.numeric;
    row.std_error = 0.0;
    row.analytic_oracle = r.closed_form;
    row.params = "k=" + std::to_string(spec.loss_k) + ";alpha2=0.5";
  } else {
    throw validation_error("unknown experiment '" + spec.experiment + "'");
  }
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  require(std::find(kExperiments.begin(), kExperiments.end(), experiment) != kExperiments.end(),
          "sweep: unknown experiment '" + experiment + "'");
  require(!n_values.empty(), "sweep: empty n list");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    require(n_values[i] > n_values[i - 1], "sweep: n values must be strictly increasing");
  }
  require(samples >= 1, "sweep: samples must be >= 1");
  require(format == "csv" || format == "json", "sweep: format must be csv or json");
  // validate eagerly so a bad spec fails before any output file is created;
  // only the ensemble-driven experiments go through ProtocolConfig
  for (int n : n_values) {
    if (experiment == "haar-ramsey" || experiment == "projected" || experiment == "noise") {
      ProtocolConfig cfg;
      cfg.n_qubits = n;
      cfg.ensemble = experiment == "projected" ? EnsembleKind::full_unitary : ensemble;
      cfg.samples = samples;
      if (experiment == "projected") cfg.n_e = n_e;
      if (experiment == "haar-ramsey") cfg.loss_k = loss_k;
      if (experiment == "noise") cfg.noise_p = noise_p;
      cfg.validate();
    } else if (experiment == "twist") {
      require(n >= 1, "sweep: twist n must be positive");
      if (n > 4000) throw cap_exceeded("sweep: twist n exceeds the sector cap");
    } else if (experiment == "time-avg") {
      require(n >= 1, "sweep: time-avg n must be positive");
      if (n > kDenseQubitCap) throw cap_exceeded("sweep: time-avg n above dense cap");
      (void)sweep_state(state, 1);         // name check
      (void)sweep_hamiltonian(hamiltonian, 1);
    } else if (experiment == "loss") {
      require(n % 2 == 0, "sweep: loss experiment needs even n");
      if (n > kDenseQubitCap) throw cap_exceeded("sweep: loss n above dense cap");
      require(loss_k >= 0 && loss_k < n, "sweep: loss_k out of range");
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.n_values.size());
  for (int n : spec.n_values) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRow row = run_one(spec, n);
    if (spec.timing) {
      const auto t1 = std::chrono::steady_clock::now();
      row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FitResult fit_scaling(const std::vector<SweepRow>& rows) {
  require(rows.size() >= 3, "fit_scaling: need at least 3 rows");
  const std::size_t m = rows.size();
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    require(rows[i].mean > 0.0, "fit_scaling: nonpositive mean");
    require(rows[i].n >= 1, "fit_scaling: invalid n");
    xs[i] = std::log(static_cast<double>(rows[i].n));
    ys[i] = std::log(rows[i].mean);
  }
  double xb = 0.0, yb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xb += xs[i];
    yb += ys[i];
  }
  xb /= static_cast<double>(m);
  yb /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xb) * (xs[i] - xb);
    sxy += (xs[i] - xb) * (ys[i] - yb);
  }
  require(sxx > 0.0, "fit_scaling: degenerate n values");
  const double slope = sxy / sxx;
  const double intercept = yb - slope * xb;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ssr += r * r;
  }
  const double var = m > 2 ? ssr / static_cast<double>(m - 2) : 0.0;
  return FitResult{slope, std::sqrt(var / sxx)};
}

static const char* kCsvHeader =
    "experiment,n,params,mean,std_error,analytic_oracle,samples,seed,wall_time_ms";

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.experiment;
    out += ',' + std::to_string(r.n);
    out += ',' + r.params;
    out += ',' + fmt17(r.mean);
    out += ',' + fmt17(r.std_error);
    out += ',';
    if (r.analytic_oracle) out += fmt17(*r.analytic_oracle);
    out += ',' + std::to_string(r.samples);
    out += ',' + std::to_string(r.seed);
    out += ',' + fmt17(r.wall_time_ms);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "rows_from_csv: empty input");
  require(line == kCsvHeader, "rows_from_csv: unexpected header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const std::size_t c = line.find(',', pos);
      if (c == std::string::npos) {
        f.push_back(line.substr(pos));
        break;
      }
      f.push_back(line.substr(pos, c - pos));
      pos = c + 1;
    }
    require(f.size() == 9, "rows_from_csv: wrong column count");
    SweepRow r;
    r.experiment = f[0];
    r.n = std::stoi(f[1]);
    r.params = f[2];
    r.mean = std::stod(f[3]);
    r.std_error = std::stod(f[4]);
    if (!f[5].empty()) r.analytic_oracle = std::stod(f[5]);
    r.samples = std::stoull(f[6]);
    r.seed = std::stoull(f[7]);
    r.wall_time_ms = std::stod(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"experiment", r.experiment}, {"n", r.n},       {"params", r.params},
                     {"mean", r.mean},             {"std_error", r.std_error},
                     {"samples", r.samples},       {"seed", r.seed},
                     {"wall_time_ms", r.wall_time_ms}};
    if (r.analytic_oracle) {
      j["analytic_oracle"] = *r.analytic_oracle;
    } else {
      j["analytic_oracle"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<SweepRow> rows_from_json(const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  require(arr.is_array(), "rows_from_json: expected an array");
  std::vector<SweepRow> rows;
  for (const auto& j : arr) {
    SweepRow r;
    r.experiment = j.at("experiment").get<std::string>();
    r.n = j.at("n").get<int>();
    r.params = j.at("params").get<std::string>();
    r.mean = j.at("mean").get<double>();
    r.std_error = j.at("std_error").get<double>();
    if (!j.at("analytic_oracle").is_null()) r.analytic_oracle = j.at("analytic_oracle").get<double>();
    r.samples = j.at("samples").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  return spec.format == "json" ? to_json(rows) : to_csv(rows);
}

void write_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const std::string text = render_sweep_output(spec, rows);
  if (spec.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(spec.out_path, std::ios::binary);
  require(out.good(), "sweep: cannot open output path '" + spec.out_path + "'");
  out << text;
  require(out.good(), "sweep: failed writing output path '" + spec.out_path + "'");
}

}  // namespace qorbit
