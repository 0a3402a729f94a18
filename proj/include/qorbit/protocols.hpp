#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qorbit/orbit.hpp"
#include "qorbit/pauli.hpp"
#include "qorbit/qfi.hpp"
#include "qorbit/quantum.hpp"

namespace qorbit {

struct ProtocolConfig {
  int n_qubits = 4;
  EnsembleKind ensemble = EnsembleKind::full_unitary;
  int n_e = 0;                    // measured-subsystem size (projected protocol)
  std::uint64_t samples = 1000;
  std::uint64_t master_seed = 1;
  double epsilon = 0.25;          // compatibility threshold fraction
  double p_min = kDefaultPMin;    // measurement-outcome cutoff
  double noise_p = 0.0;           // depolarizing strength
  int loss_k = 0;                 // discarded sites
  double theta_probe = 1e-3;      // CFI evaluation point
  bool collect_outcomes = false;
  bool collect_class_histogram = false;
  unsigned force_threads = 0;     // 0 = auto; reductions are worker-count independent

  EnsembleSpec spec() const { return EnsembleSpec{ensemble, n_qubits}; }
  void validate() const;
  std::string echo() const;
};

/// Aggregate over samples for one measurement outcome pattern.
struct OutcomeRecord {
  std::string outcome_bits;
  double mean_probability = 0.0;
  double mean_qfi = 0.0;  // unweighted mean of per-outcome QFI
  std::uint64_t count = 0;
};

struct ProtocolResult {
  QfiStats qfi_stats;  // probability-weighted figure of merit
  std::vector<OutcomeRecord> per_outcome;
  std::optional<ClassHistogram> class_histogram;
  /// Mean per-sample probability mass excluded by the p_min cutoff.
  double excluded_mass = 0.0;
  std::uint64_t degenerate_samples = 0;
  /// Unweighted mean of per-outcome QFI values (projected protocol emits
  /// both conventions; they coincide for the Haar-Ramsey protocols).
  double unweighted_outcome_mean = 0.0;
  std::string config_echo;
};

/// Haar-Ramsey protocol: draw U from the configured ensemble, form U|0>,
/// and record the pure-state QFI of the phase embedding generated by g
/// (symmetric ensembles run natively in the (n+1)-dimensional sector with
/// the sector-restricted generator). With loss_k > 0 the recorded value is
/// the mixed-state QFI after tracing out the last loss_k qubits.
ProtocolResult haar_ramsey_mc(const ProtocolConfig& config, const LocalGenerator& g);

/// One-axis-twisting probe exp(-i chi Sx^2 t)|S,S> phase-embedded by -S_y,
/// natively in the spin-(n/2) sector.
double twist_untwist(int n, double chi, double t);

struct TwistScanPoint {
  double t = 0.0;
  double qfi = 0.0;
};

/// twist_untwist over a uniform t-grid (single eigendecomposition), plus the
/// argmax point. Default grid spans [0, 4/sqrt(n)] with 64 points.
std::vector<TwistScanPoint> twist_untwist_scan(int n, double chi, int points = 64,
                                               double t_max = -1.0);

/// Time-averaged QFI (1/T) int_0^T 4 Var_psi(G(t)) dt by trapezoidal
/// quadrature with G(t) = e^{iHt} G e^{-iHt}. The step is refined once and
/// a >1% disagreement between the two quadratures raises validation_error.
double time_avg_qfi(const PauliSum& h_c, const LocalGenerator& g, const CVector& state,
                    double t_total, double dt);

/// Exact T -> infinity limit of time_avg_qfi from the Bohr-frequency
/// decomposition: 4 [ <P(G^2)> - sum_w |<G_w>|^2 ], with P the projection
/// onto ker(ad_H) and G_w the frequency-w component of G.
double time_avg_qfi_limit(const PauliSum& h_c, const LocalGenerator& g, const CVector& state);

/// Dephases g in the eigenbasis of h_c, keeping matrix elements between
/// (near-)degenerate energies: the projection of g onto the centralizer of
/// h_c. Returns g unchanged when [h_c, g] = 0.
CMatrix centralizer_projection_oracle(const CMatrix& h_c, const CMatrix& g);
CMatrix centralizer_projection_oracle(const PauliSum& h_c, const CMatrix& g);

/// Projected-ensemble protocol: draw U from the full ensemble, measure the
/// last n_e qubits of U|0> in the computational basis, re-prepare each
/// outcome on the measured register, apply U^dag to the full system, and
/// record per-outcome pure-state QFI under S_z. The figure of merit is the
/// outcome-probability-weighted mean; the unweighted per-outcome mean is
/// also reported. n_e = 0 reduces to the full-ensemble Haar-Ramsey.
ProtocolResult projected_ensemble_protocol(const ProtocolConfig& config);

enum class BaseProtocol { haar_ramsey };

/// Runs the base protocol with a depolarizing channel of strength noise_p
/// applied to the probe state: rho = (1-p) |psi><psi| + p I/d, evaluated
/// with the mixed-state QFI. noise_p = 0 reproduces the noiseless run
/// bit for bit.
ProtocolResult noisy_protocol(const ProtocolConfig& config, BaseProtocol base,
                              const LocalGenerator& g);

enum class LossStage { before, after };

struct LossExperimentResult {
  double numeric = 0.0;
  double closed_form = 0.0;
};

/// Dicke-superposition loss experiment: builds alpha|0_n> + beta|q_n>
/// (q = n/2), traces out k qubits before or after the phase encoding, and
/// compares the numeric mixed-state QFI against loss_qfi_closed_form.
LossExperimentResult loss_experiment(int n, int k, Complex alpha, Complex beta,
                                     LossStage when);

/// Draws random composing Hamiltonians supported on class C_0 (letters in
/// {I,Z} only, hence commuting with S_z), evolves |0...0>, and reports the
/// QFI statistics under S_z; the mean must vanish. With `contrast` a single
/// C_n string (X on every site) is added to each draw, which makes the
/// orbit leave C_0 and the mean QFI macroscopic.
QfiStats commuting_sanity(int n, std::uint64_t samples, std::uint64_t seed,
                          bool contrast = false);

}  // namespace qorbit
