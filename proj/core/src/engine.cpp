#include "qpe/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qpe/errors.hpp"
#include "qpe/kernel.hpp"

namespace qpe {

PhaseTable make_phase_table(const Spectrum& s, const InitialState& init, double t, int n_phase) {
  PhaseTable pt;
  pt.t = t;
  pt.n_phase = n_phase;
  pt.thetas.reserve(s.energies.size());
  pt.weights.reserve(s.energies.size());
  for (std::size_t j = 0; j < s.energies.size(); ++j) {
    pt.thetas.push_back(phase_of_energy(s.energies[j], t));
    pt.weights.push_back(std::norm(init.overlaps[j]));
  }
  validate_phase_table(pt);
  return pt;
}

void validate_phase_table(const PhaseTable& pt) {
  if (pt.n_phase < 1) throw ValidationError("phase table needs at least one phase qubit");
  if (pt.n_phase > kMaxPhaseQubits)
    throw CapacityError("phase table of 2^" + std::to_string(pt.n_phase) +
                        " bins exceeds the 2^" + std::to_string(kMaxPhaseQubits) + " cap");
  if (pt.thetas.size() != pt.weights.size() || pt.thetas.empty())
    throw ValidationError("phase table needs matching, non-empty theta/weight lists");
  for (double theta : pt.thetas)
    if (!(theta >= 0.0 && theta < 1.0)) throw ValidationError("phases must lie in [0, 1)");
  double sum = 0.0;
  for (double w : pt.weights) {
    if (!(w >= 0.0)) throw ValidationError("weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("weights must sum to 1 within 1e-10");
}

PhaseDistribution PhaseDistribution::from_probs(std::vector<double> probs) {
  PhaseDistribution pd;
  pd.probs = std::move(probs);
  if (pd.probs.empty()) throw ValidationError("empty probability table");
  pd.n_phase = 0;
  while ((std::size_t{1} << pd.n_phase) < pd.probs.size()) ++pd.n_phase;
  pd.l_star = 0;
  for (std::size_t l = 1; l < pd.probs.size(); ++l)
    if (pd.probs[l] > pd.probs[pd.l_star]) pd.l_star = static_cast<std::int64_t>(l);
  double runner_up = 0.0;
  for (std::size_t l = 0; l < pd.probs.size(); ++l)
    if (static_cast<std::int64_t>(l) != pd.l_star) runner_up = std::max(runner_up, pd.probs[l]);
  pd.delta_gap = pd.probs.size() > 1 ? pd.probs[pd.l_star] - runner_up : 1.0;
  return pd;
}

PhaseDistribution phase_distribution(const PhaseTable& pt) {
  validate_phase_table(pt);
  const std::size_t bins = std::size_t{1} << pt.n_phase;
  const std::size_t n_states = pt.thetas.size();

  PhaseDistribution pd;
  pd.n_phase = pt.n_phase;
  pd.probs.resize(bins);

  std::vector<double> contributions(n_states);
  const double inv_bins = std::ldexp(1.0, -pt.n_phase);
  for (std::size_t l = 0; l < bins; ++l) {
    const double grid = static_cast<double>(l) * inv_bins;
    for (std::size_t j = 0; j < n_states; ++j)
      contributions[j] = pt.weights[j] * f_kernel_sq(pt.thetas[j] - grid, pt.n_phase);
    pd.probs[l] = pairwise_sum(contributions);
  }

  pd.l_star = 0;
  for (std::size_t l = 1; l < bins; ++l)
    if (pd.probs[l] > pd.probs[pd.l_star]) pd.l_star = static_cast<std::int64_t>(l);
  double runner_up = 0.0;
  for (std::size_t l = 0; l < bins; ++l)
    if (static_cast<std::int64_t>(l) != pd.l_star) runner_up = std::max(runner_up, pd.probs[l]);
  pd.delta_gap = bins > 1 ? pd.probs[pd.l_star] - runner_up : 1.0;

  pd.per_state.reserve(n_states);
  for (std::size_t j = 0; j < n_states; ++j) {
    const NearestBin bin = nearest_bin(pt.thetas[j], pt.n_phase);
    PerStatePeak peak;
    peak.j = j;
    peak.l_j = bin.index;
    peak.kappa = bin.kappa;
    peak.peak = f_kernel_sq(pt.thetas[j] - static_cast<double>(bin.index) * inv_bins, pt.n_phase);
    pd.per_state.push_back(peak);
  }
  return pd;
}

double window_probability(const PhaseDistribution& pd, std::int64_t center, long long e) {
  if (e < 0) throw DomainError("window half-width must be non-negative");
  const std::int64_t bins = static_cast<std::int64_t>(pd.probs.size());
  if (2 * e + 1 >= bins) {
    std::vector<double> all(pd.probs.begin(), pd.probs.end());
    return pairwise_sum(all);
  }
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(2 * e + 1));
  for (long long k = -e; k <= e; ++k) {
    std::int64_t l = (center + k) % bins;
    if (l < 0) l += bins;
    window.push_back(pd.probs[static_cast<std::size_t>(l)]);
  }
  return pairwise_sum(window);
}

WindowProbability window_probability_with_bound(const PhaseDistribution& pd, std::int64_t center,
                                                long long e, double c0_sq) {
  WindowProbability out;
  out.sum = window_probability(pd, center, e);
  out.lower_bound = c0_sq * window_lower_bound_constant(e);
  return out;
}

PostMeasurementState post_measurement(const PhaseTable& pt, std::span<const cplx> c,
                                      std::int64_t l) {
  validate_phase_table(pt);
  if (c.size() != pt.thetas.size())
    throw ValidationError("overlap count does not match the phase table");
  const std::int64_t bins = std::int64_t{1} << pt.n_phase;
  if (l < 0 || l >= bins) throw DomainError("measured phase out of range");

  const double grid = std::ldexp(static_cast<double>(l), -pt.n_phase);
  std::vector<cplx> unnormalized(c.size());
  std::vector<double> mags(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    unnormalized[j] = c[j] * f_kernel(pt.thetas[j] - grid, pt.n_phase);
    mags[j] = std::norm(unnormalized[j]);
  }
  const double prob = pairwise_sum(mags);
  if (prob < 1e-300) throw DomainError("P(l) is numerically zero; no post-measurement state");

  PostMeasurementState out;
  out.l = l;
  out.coeffs.resize(c.size());
  const double inv = 1.0 / std::sqrt(prob);
  for (std::size_t j = 0; j < c.size(); ++j) out.coeffs[j] = unnormalized[j] * inv;
  out.ground_weight = std::norm(out.coeffs[0]);
  return out;
}

LambdaReport lambda_ratios(const PhaseTable& pt, std::int64_t l0) {
  validate_phase_table(pt);
  const double grid = std::ldexp(static_cast<double>(l0), -pt.n_phase);
  const double denom = f_kernel_sq(pt.thetas[0] - grid, pt.n_phase);
  if (denom <= 0.0) throw DomainError("ground-state kernel vanishes at l0");

  LambdaReport report;
  report.l0 = l0;
  report.ground_peak = denom;
  report.classification_valid = pt.n_phase >= 3;
  const double one_bin = std::ldexp(1.0, -pt.n_phase);
  for (std::size_t j = 1; j < pt.thetas.size(); ++j) {
    LambdaRatio ratio;
    ratio.j = j;
    ratio.lambda = f_kernel_sq(pt.thetas[j] - grid, pt.n_phase) / denom;
    double dist = pt.thetas[j] - grid;
    dist -= std::round(dist);
    ratio.far_from_l0 = std::abs(dist) > one_bin;
    report.ratios.push_back(ratio);
  }
  return report;
}

InitialStateReport initial_state_diagnostics(const PhaseTable& pt, std::span<const cplx> c) {
  validate_phase_table(pt);
  if (c.size() != pt.thetas.size())
    throw ValidationError("overlap count does not match the phase table");

  InitialStateReport report;
  const NearestBin ground_bin = nearest_bin(pt.thetas[0], pt.n_phase);
  report.l0 = ground_bin.index;
  report.c0_sq = std::norm(c[0]);

  const LambdaReport lambdas = lambda_ratios(pt, report.l0);
  double excited_mass = 0.0;
  for (const auto& ratio : lambdas.ratios) excited_mass += std::norm(c[ratio.j]) * ratio.lambda;
  report.threshold = 0.5 / lambdas.ground_peak - excited_mass;
  report.exceeds_threshold = report.c0_sq > report.threshold;

  report.average_energy_ok = report.c0_sq >= 0.6;
  report.average_projection_ok = true;
  for (std::size_t j = 1; j < c.size(); ++j)
    if (report.c0_sq < 3.0 * std::norm(c[j])) report.average_projection_ok = false;

  const PostMeasurementState post = post_measurement(pt, c, report.l0);
  report.strong_projection = true;
  for (std::size_t j = 1; j < post.coeffs.size(); ++j)
    if (post.ground_weight < 10.0 * std::norm(post.coeffs[j])) report.strong_projection = false;
  report.weak_projection = post.ground_weight > report.c0_sq;

  std::map<std::int64_t, std::vector<std::size_t>> by_bin;
  for (std::size_t j = 0; j < pt.thetas.size(); ++j) {
    if (pt.weights[j] <= 1e-12) continue;
    by_bin[nearest_bin(pt.thetas[j], pt.n_phase).index].push_back(j);
  }
  for (auto& [bin, members] : by_bin)
    if (members.size() > 1) report.phase_degenerate_groups.push_back(std::move(members));
  return report;
}

}  // namespace qpe
