#pragma once

#include <cstdint>
#include <vector>

#include "qpe/engine.hpp"

namespace qpe {

/// splitmix64: the 64-bit counter generator used for every draw in this
/// toolkit. Chosen for its published, platform-independent definition, so
/// a (distribution, m, seed) triple reproduces bit-identically anywhere.
inline constexpr const char* kGeneratorName = "splitmix64";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct ShotRecord {
  std::uint64_t seed = 0;
  long long shots = 0;                  // m
  std::vector<long long> counts;        // per phase value l
  std::int64_t empirical_top = 0;       // smallest index among maximal counts
};

/// m inverse-CDF draws from P(l); deterministic given the seed.
ShotRecord sample_shots(const PhaseDistribution& pd, long long m, std::uint64_t seed);

/// counts[l] / m.
double empirical_estimator(const ShotRecord& rec, std::int64_t l);

/// counts[l] - counts[j]: how many more times l was read than j.
long long z_statistic(const ShotRecord& rec, std::int64_t l, std::int64_t j);

/// Runs `trials` experiments of m_eps = shot_budget(epsilon, delta_gap)
/// shots each (per-trial seed = seed + trial index); a trial fails when some
/// j != l* is read at least as often as l*. Returns the failure fraction,
/// which the Hoeffding bound keeps at or below epsilon.
struct HoeffdingResult {
  long long m_eps = 0;
  long long trials = 0;
  long long failures = 0;
  double failure_rate = 0.0;
};
HoeffdingResult hoeffding_trial(const PhaseDistribution& pd, double epsilon, long long trials,
                                std::uint64_t seed);

}  // namespace qpe
