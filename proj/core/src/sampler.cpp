#include "qpe/sampler.hpp"

#include <algorithm>

#include "qpe/errors.hpp"
#include "qpe/planner.hpp"

namespace qpe {

ShotRecord sample_shots(const PhaseDistribution& pd, long long m, std::uint64_t seed) {
  if (m < 1) throw DomainError("shot count must be at least 1");
  const std::size_t bins = pd.probs.size();

  std::vector<double> cdf(bins);
  double acc = 0.0;
  for (std::size_t l = 0; l < bins; ++l) {
    acc += pd.probs[l];
    cdf[l] = acc;
  }
  cdf[bins - 1] = 1.0;  // close the table against round-off

  ShotRecord rec;
  rec.seed = seed;
  rec.shots = m;
  rec.counts.assign(bins, 0);
  SplitMix64 rng(seed);
  for (long long k = 0; k < m; ++k) {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t l = std::min<std::size_t>(it - cdf.begin(), bins - 1);
    ++rec.counts[l];
  }
  rec.empirical_top = 0;
  for (std::size_t l = 1; l < bins; ++l)
    if (rec.counts[l] > rec.counts[rec.empirical_top])
      rec.empirical_top = static_cast<std::int64_t>(l);
  return rec;
}

double empirical_estimator(const ShotRecord& rec, std::int64_t l) {
  if (l < 0 || l >= static_cast<std::int64_t>(rec.counts.size()))
    throw DomainError("phase value out of range");
  return static_cast<double>(rec.counts[l]) / static_cast<double>(rec.shots);
}

long long z_statistic(const ShotRecord& rec, std::int64_t l, std::int64_t j) {
  if (l == j) throw DomainError("z statistic compares two distinct phase values");
  if (l < 0 || j < 0 || l >= static_cast<std::int64_t>(rec.counts.size()) ||
      j >= static_cast<std::int64_t>(rec.counts.size()))
    throw DomainError("phase value out of range");
  return rec.counts[l] - rec.counts[j];
}

HoeffdingResult hoeffding_trial(const PhaseDistribution& pd, double epsilon, long long trials,
                                std::uint64_t seed) {
  if (trials < 1) throw DomainError("trial count must be at least 1");
  HoeffdingResult result;
  result.m_eps = shot_budget(epsilon, pd.delta_gap);
  result.trials = trials;
  for (long long trial = 0; trial < trials; ++trial) {
    const ShotRecord rec = sample_shots(pd, result.m_eps, seed + static_cast<std::uint64_t>(trial));
    const long long top = rec.counts[pd.l_star];
    bool failed = false;
    for (std::size_t j = 0; j < rec.counts.size(); ++j) {
      if (static_cast<std::int64_t>(j) == pd.l_star) continue;
      if (rec.counts[j] >= top) {  // a tie already defeats the readout
        failed = true;
        break;
      }
    }
    if (failed) ++result.failures;
  }
  result.failure_rate = static_cast<double>(result.failures) / static_cast<double>(trials);
  return result;
}

}  // namespace qpe
