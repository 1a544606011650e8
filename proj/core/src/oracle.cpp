#include "qpe/oracle.hpp"

#include <cmath>
#include <numbers>

#include "qpe/errors.hpp"
#include "qpe/trotter.hpp"

namespace qpe {

FullState run_qpe_circuit(const Spectrum& s, const std::vector<cplx>& init, double t,
                          int n_phase) {
  const std::size_t dim_s = s.energies.size();
  int n_system = 0;
  while ((std::size_t{1} << n_system) < dim_s) ++n_system;
  if ((std::size_t{1} << n_system) != dim_s)
    throw ValidationError("system dimension must be a power of two");
  if (n_phase < 1 || n_phase > kOracleMaxPhaseQubits || n_system > kOracleMaxSystemQubits)
    throw CapacityError("oracle capacity is N <= 4 phase qubits on <= 2 system qubits");
  if (init.size() != dim_s) throw ValidationError("initial state has the wrong dimension");

  const std::size_t bins = std::size_t{1} << n_phase;

  FullState fs;
  fs.n_phase = n_phase;
  fs.n_system = n_system;
  fs.amplitudes.assign(bins * dim_s, cplx{0.0, 0.0});

  // |0>^N tensor psi, then H on every phase qubit: uniform over k.
  const double h_scale = std::pow(2.0, -0.5 * n_phase);
  for (std::size_t k = 0; k < bins; ++k)
    for (std::size_t r = 0; r < dim_s; ++r) fs.amplitudes[k * dim_s + r] = h_scale * init[r];

  // Controlled U^{2^q}, one ladder rung per phase qubit.
  for (int q = 0; q < n_phase; ++q) {
    const CMatrix u_pow = exact_unitary(s, t, q);
    for (std::size_t k = 0; k < bins; ++k) {
      if (((k >> q) & 1u) == 0) continue;
      std::vector<cplx> slice(dim_s);
      for (std::size_t r = 0; r < dim_s; ++r) slice[r] = fs.amplitudes[k * dim_s + r];
      slice = u_pow * slice;
      for (std::size_t r = 0; r < dim_s; ++r) fs.amplitudes[k * dim_s + r] = slice[r];
    }
  }

  // Inverse QFT applied as a dense matrix on the phase index.
  const double inv_sqrt = std::pow(2.0, -0.5 * n_phase);
  const double unit = -2.0 * std::numbers::pi / static_cast<double>(bins);
  std::vector<cplx> transformed(bins * dim_s, cplx{0.0, 0.0});
  for (std::size_t l = 0; l < bins; ++l) {
    for (std::size_t k = 0; k < bins; ++k) {
      const double angle = unit * static_cast<double>((l * k) % bins);
      const cplx kernel = inv_sqrt * cplx{std::cos(angle), std::sin(angle)};
      for (std::size_t r = 0; r < dim_s; ++r)
        transformed[l * dim_s + r] += kernel * fs.amplitudes[k * dim_s + r];
    }
  }
  fs.amplitudes = std::move(transformed);
  return fs;
}

std::vector<double> marginal_distribution(const FullState& fs) {
  const std::size_t bins = std::size_t{1} << fs.n_phase;
  const std::size_t dim_s = std::size_t{1} << fs.n_system;
  std::vector<double> probs(bins, 0.0);
  for (std::size_t l = 0; l < bins; ++l) {
    std::vector<double> parts(dim_s);
    for (std::size_t r = 0; r < dim_s; ++r) parts[r] = std::norm(fs.amplitudes[l * dim_s + r]);
    probs[l] = pairwise_sum(parts);
  }
  return probs;
}

std::vector<cplx> conditional_state(const FullState& fs, std::int64_t l) {
  const std::size_t bins = std::size_t{1} << fs.n_phase;
  const std::size_t dim_s = std::size_t{1} << fs.n_system;
  if (l < 0 || static_cast<std::size_t>(l) >= bins) throw DomainError("phase value out of range");
  double prob = 0.0;
  for (std::size_t r = 0; r < dim_s; ++r) prob += std::norm(fs.amplitudes[l * dim_s + r]);
  if (prob <= 1e-12) throw DomainError("measure-zero phase value; no conditional state");
  std::vector<cplx> state(dim_s);
  const double inv = 1.0 / std::sqrt(prob);
  for (std::size_t r = 0; r < dim_s; ++r) state[r] = inv * fs.amplitudes[l * dim_s + r];
  return state;
}

}  // namespace qpe
