#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qorbit/sweep.hpp"

using namespace qorbit;

TEST_CASE("fit_scaling on synthetic power laws") {
  auto rows_for = [](double expo) {
    std::vector<SweepRow> rows;
    for (int n : {4, 8, 16, 32}) {
      SweepRow r;
      r.n = n;
      r.mean = 3.0 * std::pow(n, expo);
      rows.push_back(r);
    }
    return rows;
  };
  CHECK(fit_scaling(rows_for(2.0)).exponent == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit_scaling(rows_for(1.0)).exponent == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit_scaling(rows_for(2.0)).confidence_halfwidth == doctest::Approx(0.0).epsilon(1e-9));

  auto bad = rows_for(1.0);
  bad[1].mean = -1.0;
  CHECK_THROWS_AS((void)fit_scaling(bad), validation_error);
  bad.resize(2);
  CHECK_THROWS_AS((void)fit_scaling(bad), validation_error);
}

TEST_CASE("symmetric haar-ramsey sweep carries the stated oracle values") {
  SweepSpec spec;
  spec.experiment = "haar-ramsey";
  spec.ensemble = EnsembleKind::symmetric_unitary;
  spec.n_values = {10, 20};
  spec.samples = 50;
  spec.master_seed = 7;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].analytic_oracle.has_value());
  REQUIRE(rows[1].analytic_oracle.has_value());
  CHECK(*rows[0].analytic_oracle == doctest::Approx(1000.0 / 33.0).epsilon(1e-12));
  CHECK(*rows[1].analytic_oracle == doctest::Approx(8000.0 / 63.0).epsilon(1e-12));
  CHECK(rows[0].seed == 7);
  CHECK(rows[0].samples == 50);
}

TEST_CASE("malformed sweep specs fail validation before any output") {
  SweepSpec spec;
  spec.experiment = "projected";
  spec.n_values = {4};
  spec.n_e = 4;  // n_e >= n
  spec.out_path = "/tmp/qorbit_should_not_exist.csv";
  std::filesystem::remove(spec.out_path);
  CHECK_THROWS_AS((void)run_sweep(spec), validation_error);
  CHECK(!std::filesystem::exists(spec.out_path));

  SweepSpec dec;
  dec.experiment = "haar-ramsey";
  dec.n_values = {6, 4};
  CHECK_THROWS_AS((void)run_sweep(dec), validation_error);

  SweepSpec unk;
  unk.experiment = "mystery";
  unk.n_values = {4};
  CHECK_THROWS_AS((void)run_sweep(unk), validation_error);
}

TEST_CASE("sweep output is byte-for-byte deterministic") {
  SweepSpec spec;
  spec.experiment = "haar-ramsey";
  spec.n_values = {3, 4};
  spec.samples = 25;
  spec.master_seed = 12;
  const std::string a = render_sweep_output(spec, run_sweep(spec));
  const std::string b = render_sweep_output(spec, run_sweep(spec));
  CHECK(a == b);
  spec.format = "json";
  const std::string ja = render_sweep_output(spec, run_sweep(spec));
  const std::string jb = render_sweep_output(spec, run_sweep(spec));
  CHECK(ja == jb);
}

TEST_CASE("csv and json round trip") {
  SweepSpec spec;
  spec.experiment = "loss";
  spec.loss_k = 2;
  spec.n_values = {4, 6, 8};
  const auto rows = run_sweep(spec);

  const auto csv_back = rows_from_csv(to_csv(rows));
  REQUIRE(csv_back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(csv_back[i].experiment == rows[i].experiment);
    CHECK(csv_back[i].n == rows[i].n);
    CHECK(csv_back[i].params == rows[i].params);
    CHECK(csv_back[i].mean == rows[i].mean);  // 17 digits round-trip exactly
    CHECK(csv_back[i].std_error == rows[i].std_error);
    CHECK(csv_back[i].analytic_oracle.has_value() == rows[i].analytic_oracle.has_value());
    if (rows[i].analytic_oracle) CHECK(*csv_back[i].analytic_oracle == *rows[i].analytic_oracle);
  }

  const auto json_back = rows_from_json(to_json(rows));
  REQUIRE(json_back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(json_back[i].mean == rows[i].mean);
    CHECK(json_back[i].seed == rows[i].seed);
  }
}

TEST_CASE("unwritable output paths are reported") {
  SweepSpec spec;
  spec.experiment = "loss";
  spec.loss_k = 1;
  spec.n_values = {4};
  spec.out_path = "/nonexistent_dir/qorbit_out.csv";
  const auto rows = run_sweep(spec);
  CHECK_THROWS_AS(write_sweep_output(spec, rows), validation_error);
}

TEST_CASE("sweep writes the requested output file") {
  SweepSpec spec;
  spec.experiment = "twist";
  spec.n_values = {8, 16};
  spec.out_path = "/tmp/qorbit_twist_test.csv";
  const auto rows = run_sweep(spec);
  write_sweep_output(spec, rows);
  std::ifstream in(spec.out_path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "experiment,n,params,mean,std_error,analytic_oracle,samples,seed,wall_time_ms");
  std::filesystem::remove(spec.out_path);
}

TEST_CASE("time-avg sweep rows carry the exact limit oracle") {
  SweepSpec spec;
  spec.experiment = "time-avg";
  spec.hamiltonian = "xall";
  spec.state = "zeros";
  spec.t_total = 50.0;
  spec.n_values = {2, 3};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    REQUIRE(r.analytic_oracle.has_value());
    CHECK(*r.analytic_oracle == doctest::Approx(r.n * r.n / 2.0).epsilon(1e-9));
    CHECK(r.mean == doctest::Approx(*r.analytic_oracle).epsilon(0.02));
  }
}

TEST_CASE("projected sweep reaches a beyond-shot-noise fit on small sizes") {
  SweepSpec spec;
  spec.experiment = "projected";
  spec.n_e = 1;
  spec.n_values = {4, 5, 6};
  spec.samples = 60;
  spec.master_seed = 21;
  const auto rows = run_sweep(spec);
  const FitResult fit = fit_scaling(rows);
  CHECK(fit.exponent > 1.3);  // full check at production sizes lives in acceptance
}
