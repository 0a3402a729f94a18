#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qorbit/protocols.hpp"

namespace qorbit {

/// One scaling-sweep request: an experiment evaluated over a strictly
/// increasing list of system sizes with shared parameters and seed.
struct SweepSpec {
  std::string experiment;  // haar-ramsey | twist | time-avg | projected | noise | loss
  std::vector<int> n_values;
  EnsembleKind ensemble = EnsembleKind::full_unitary;
  int n_e = 1;             // projected
  int loss_k = 0;          // haar-ramsey / loss
  double noise_p = 0.0;    // noise
  double epsilon = 0.25;
  double theta = 1e-3;
  double chi = 1.0;        // twist
  double t_total = 200.0;  // time-avg
  std::string hamiltonian = "xsum";  // time-avg: xall (X on every site) | xsum (sum X_j)
  std::string state = "zeros";       // time-avg fiducial: zeros | plus
  double scale = 0.5;      // generator scale
  std::uint64_t samples = 1000;
  std::uint64_t master_seed = 1;
  std::string out_path;    // empty = stdout
  std::string format = "csv";
  /// Real wall times are only emitted on request; with timing off the
  /// output is byte-for-byte deterministic for identical specs.
  bool timing = false;

  void validate() const;
};

struct SweepRow {
  std::string experiment;
  int n = 0;
  std::string params;  // parameter echo, ';'-separated key=value
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> analytic_oracle;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct FitResult {
  double exponent = 0.0;
  double confidence_halfwidth = 0.0;
};

/// Least-squares slope of log(mean) against log(n), with the slope's
/// standard-error halfwidth. Requires >= 3 rows with positive means.
FitResult fit_scaling(const std::vector<SweepRow>& rows);

/// CSV with a fixed header and column order, 17 significant digits
/// (round-trip exact for doubles).
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_csv(const std::string& text);

std::string to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_json(const std::string& text);

/// Serializes per spec.format and writes to spec.out_path (or returns the
/// text when out_path is empty).
std::string render_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows);
void write_sweep_output(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace qorbit
