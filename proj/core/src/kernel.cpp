#include "qpe/kernel.hpp"

#include <cmath>
#include <numbers>

namespace qpe {

namespace {
constexpr double kPi = std::numbers::pi;

struct KernelRatio {
  double value;  // sin(pi 2^N d) / (2^N sin(pi d)), sign included
  double d;      // delta reduced to [-1/2, 1/2]
};

KernelRatio kernel_ratio(double delta, int n_phase) {
  double d = delta - std::round(delta);
  if (d == 0.0) return {1.0, 0.0};
  const double scale = std::ldexp(1.0, n_phase);
  const double y = std::remainder(scale * d, 2.0);  // both steps exact
  if (y == std::round(y)) return {0.0, d};          // numerator vanishes, denominator does not
  const double numerator = std::sin(kPi * y);
  const double s = std::sin(kPi * d);
  if (std::abs(s) < 1e-8) {
    const double x = kPi * d;
    return {numerator / (scale * x * (1.0 - x * x / 6.0)), d};
  }
  return {numerator / (scale * s), d};
}

}  // namespace

double phase_of_energy(double energy, double t) {
  const double x = -energy * t;
  double theta = x - std::floor(x);
  if (theta >= 1.0) theta = 0.0;
  return theta;
}

double f_kernel_sq(double delta, int n_phase) {
  const double r = kernel_ratio(delta, n_phase).value;
  return r * r;
}

cplx f_kernel(double delta, int n_phase) {
  const auto [r, d] = kernel_ratio(delta, n_phase);
  if (d == 0.0) return cplx{1.0, 0.0};
  const double angle = kPi * (std::ldexp(1.0, n_phase) - 1.0) * d;
  return r * cplx{std::cos(angle), std::sin(angle)};
}

double window_lower_bound_constant(long long e) {
  double sum = 0.0;
  for (long long k = -e; k <= e; ++k) {
    const double half_minus_k = 0.5 - static_cast<double>(k);
    sum += 1.0 / (half_minus_k * half_minus_k);
  }
  return sum / (kPi * kPi);
}

NearestBin nearest_bin(double theta, int n_phase) {
  const double scaled = std::ldexp(1.0, n_phase) * theta;
  const double unwrapped = std::floor(scaled + 0.5);  // round half up: bins are [l-1/2, l+1/2)
  const double offset = scaled - unwrapped;
  const std::int64_t bins = std::int64_t{1} << n_phase;
  std::int64_t index = static_cast<std::int64_t>(unwrapped) % bins;
  if (index < 0) index += bins;
  return {index, 2.0 * std::abs(offset), offset};
}

}  // namespace qpe
