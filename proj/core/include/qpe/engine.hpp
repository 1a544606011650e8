#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpe/matrix.hpp"
#include "qpe/spectrum.hpp"

namespace qpe {

/// Probability tables with 2^N entries are materialized; beyond this N the
/// engine refuses rather than swaps.
inline constexpr int kMaxPhaseQubits = 24;

/// Inputs of the analytic outcome distribution: eigenphases theta_j in
/// [0, 1), their weights |c_j|^2 (summing to 1), the time step and N.
struct PhaseTable {
  std::vector<double> thetas;
  std::vector<double> weights;
  double t = 0.0;
  int n_phase = 0;
};

PhaseTable make_phase_table(const Spectrum& s, const InitialState& init, double t, int n_phase);

/// Throws ValidationError unless thetas lie in [0,1), weights sum to 1
/// within 1e-10 and N is in range.
void validate_phase_table(const PhaseTable& pt);

struct PerStatePeak {
  std::size_t j = 0;
  std::int64_t l_j = 0;  // nearest bin, mod 2^N
  double kappa = 0.0;    // |theta_j - l_j/2^N| = kappa / 2^{N+1}
  double peak = 0.0;     // |f|^2 at the bin, in [4/pi^2, 1]
};

/// P(l) = sum_j |c_j|^2 |f(theta_j - l/2^N)|^2 for every l, with the peak
/// diagnostics the initial-state conditions build on.
struct PhaseDistribution {
  std::vector<double> probs;  // length 2^N
  std::int64_t l_star = 0;    // argmax, smallest index on ties
  double delta_gap = 0.0;     // P(l*) - max_{l != l*} P(l)
  int n_phase = 0;
  std::vector<PerStatePeak> per_state;

  /// Wraps an externally built probability vector (tests, synthetic
  /// sampler inputs); computes l_star and delta_gap, leaves per_state empty.
  static PhaseDistribution from_probs(std::vector<double> probs);
};

PhaseDistribution phase_distribution(const PhaseTable& pt);

/// sum_{|l - center| <= e} P(l), indices mod 2^N. A window covering the
/// whole ring sums every bin once.
double window_probability(const PhaseDistribution& pd, std::int64_t center, long long e);

/// Window mass together with its guaranteed floor
/// |c_0|^2 (1/pi^2) sum_{k=-e}^{e} (1/2 - k)^{-2} (valid when `center` is the
/// ground state's nearest bin).
struct WindowProbability {
  double sum = 0.0;
  double lower_bound = 0.0;
};
WindowProbability window_probability_with_bound(const PhaseDistribution& pd, std::int64_t center,
                                                long long e, double c0_sq);

/// System-register state after the phase register reads l:
/// c_j^{(l)} = c_j f(theta_j - l/2^N) / sqrt(P(l)), complex kernel included.
struct PostMeasurementState {
  std::int64_t l = 0;
  std::vector<cplx> coeffs;
  double ground_weight = 0.0;  // |c_0^{(l)}|^2
};

PostMeasurementState post_measurement(const PhaseTable& pt, std::span<const cplx> c,
                                      std::int64_t l);

/// Kernel ratios Lambda_j = |f(theta_j - l0/2^N)|^2 / |f(theta_0 - l0/2^N)|^2
/// for j >= 1, each classified by whether theta_j sits further than one bin
/// from l0/2^N (the far set, where the kernel is at most ~0.05). The far/near
/// constants assume N >= 3; below that the classification is not meaningful.
struct LambdaRatio {
  std::size_t j = 0;
  double lambda = 0.0;
  bool far_from_l0 = false;
};
struct LambdaReport {
  std::int64_t l0 = 0;
  double ground_peak = 0.0;
  std::vector<LambdaRatio> ratios;
  bool classification_valid = false;
};

LambdaReport lambda_ratios(const PhaseTable& pt, std::int64_t l0);

/// Initial-state quality checks evaluated at the ground bin l0.
struct InitialStateReport {
  std::int64_t l0 = 0;
  double c0_sq = 0.0;
  double threshold = 0.0;      // 0.5/peak0 - sum_{j>=1} |c_j|^2 Lambda_j
  bool exceeds_threshold = false;
  bool average_energy_ok = false;      // |c0|^2 >= 0.6
  bool average_projection_ok = false;  // |c0|^2 >= 3 |c_j|^2 for all j >= 1
  bool strong_projection = false;      // |c0^{(l0)}|^2 >= 10 |c_j^{(l0)}|^2 for all j >= 1
  bool weak_projection = false;        // |c0^{(l0)}|^2 > |c0|^2
  std::vector<std::vector<std::size_t>> phase_degenerate_groups;  // j's sharing a bin
};

InitialStateReport initial_state_diagnostics(const PhaseTable& pt, std::span<const cplx> c);

}  // namespace qpe
