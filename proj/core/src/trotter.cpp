#include "qpe/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qpe/eigen.hpp"
#include "qpe/errors.hpp"
#include "qpe/kernel.hpp"

namespace qpe {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_spec(const LCUHamiltonian& h, const TrotterSpec& spec) {
  if (spec.order != 1 && spec.order != 2) throw DomainError("Trotter order must be 1 or 2");
  if (spec.steps < 1) throw DomainError("Trotter step count must be at least 1");
  if (spec.power < 0 || spec.power > 40) throw DomainError("controlled power q out of range");
  if (h.n_qubits > kMaxSystemQubits)
    throw CapacityError("Trotterization needs dense matrices; " + std::to_string(h.n_qubits) +
                        " qubits exceed the cap");
  std::vector<bool> seen(h.terms.size(), false);
  if (spec.term_order.size() != h.terms.size())
    throw ValidationError("term_order must be a permutation of the LCU terms");
  for (std::size_t idx : spec.term_order) {
    if (idx >= seen.size() || seen[idx])
      throw ValidationError("term_order must be a permutation of the LCU terms");
    seen[idx] = true;
  }
}

// e^{-i angle P} = cos(angle) I - i sin(angle) P
CMatrix pauli_exponential(const PauliString& string, double angle) {
  const std::size_t dim = std::size_t{1} << string.size();
  CMatrix m(dim, dim);
  const double c = std::cos(angle);
  const cplx minus_i_s{0.0, -std::sin(angle)};
  for (std::size_t col = 0; col < dim; ++col) {
    const auto act = string.apply_to_basis(col);
    m(col, col) += c;
    m(act.row, col) += minus_i_s * act.phase;
  }
  return m;
}

}  // namespace

std::vector<std::size_t> default_term_order(const LCUHamiltonian& h) {
  std::vector<std::size_t> order(h.terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&h](std::size_t a, std::size_t b) {
    return std::abs(h.terms[a].coefficient) > std::abs(h.terms[b].coefficient);
  });
  return order;
}

TrotterSpec make_trotter_spec(const LCUHamiltonian& h, int order, long long steps, int power,
                              double t) {
  TrotterSpec spec;
  spec.order = order;
  spec.steps = steps;
  spec.power = power;
  spec.t = t;
  spec.term_order = default_term_order(h);
  validate_spec(h, spec);
  return spec;
}

CMatrix exact_unitary(const Spectrum& s, double t, int power) {
  if (power < 0 || power > 40) throw DomainError("controlled power q out of range");
  const std::size_t dim = s.energies.size();
  const double tau = kTwoPi * t * std::ldexp(1.0, power);
  CMatrix scaled = s.eigenvectors;  // V e^{-i tau Lambda}
  for (std::size_t c = 0; c < dim; ++c) {
    const double angle = -tau * s.energies[c];
    const cplx phase{std::cos(angle), std::sin(angle)};
    for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= phase;
  }
  return scaled * s.eigenvectors.adjoint();
}

CMatrix trotter_step(const LCUHamiltonian& h, const TrotterSpec& spec) {
  validate_spec(h, spec);
  const double tau = kTwoPi * spec.t * std::ldexp(1.0, spec.power);
  const double per_step = tau / static_cast<double>(spec.steps);
  const std::size_t dim = std::size_t{1} << h.n_qubits;

  CMatrix pass = CMatrix::identity(dim);
  if (spec.order == 1) {
    for (std::size_t idx : spec.term_order)
      pass = pass * pauli_exponential(h.terms[idx].string, h.terms[idx].coefficient * per_step);
  } else {
    for (std::size_t idx : spec.term_order)
      pass = pass *
             pauli_exponential(h.terms[idx].string, h.terms[idx].coefficient * per_step * 0.5);
    for (auto it = spec.term_order.rbegin(); it != spec.term_order.rend(); ++it)
      pass = pass * pauli_exponential(h.terms[*it].string, h.terms[*it].coefficient * per_step * 0.5);
  }
  return matrix_power(pass, static_cast<unsigned long long>(spec.steps));
}

TrotterErrorReport trotter_error(const LCUHamiltonian& h, const Spectrum& s,
                                 const TrotterSpec& spec, double c_p) {
  const CMatrix u = exact_unitary(s, spec.t, spec.power);
  const CMatrix approx = trotter_step(h, spec);
  TrotterErrorReport report;
  report.error = spectral_norm(u - approx);
  if (c_p < 0.0) {
    if (spec.order == 1)
      c_p = commutator_constant_c1(h);
    else
      c_p = std::numeric_limits<double>::quiet_NaN();  // |C_2| is user-supplied
  }
  const double tau = kTwoPi * spec.t * std::ldexp(1.0, spec.power);
  report.bound =
      c_p * std::pow(tau, spec.order + 1) / std::pow(static_cast<double>(spec.steps), spec.order);
  return report;
}

EffectiveSpectrum effective_spectrum(const LCUHamiltonian& h, const Spectrum& s,
                                     const TrotterSpec& spec) {
  if (spec.power != 0)
    throw DomainError("effective spectrum is extracted from the q = 0 step unitary");
  const CMatrix step = trotter_step(h, spec);
  const UnitaryEig eig = eigendecompose_unitary(step);
  const std::size_t dim = s.energies.size();

  const CMatrix all_overlaps = s.eigenvectors.adjoint() * eig.eigenvectors;

  // Greedy maximum-overlap assignment of effective columns to exact states.
  std::vector<std::size_t> match(dim, dim);
  std::vector<bool> row_done(dim, false), col_done(dim, false);
  for (std::size_t pick = 0; pick < dim; ++pick) {
    double best = -1.0;
    std::size_t best_r = 0, best_c = 0;
    for (std::size_t r = 0; r < dim; ++r) {
      if (row_done[r]) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        if (col_done[c]) continue;
        const double mag = std::abs(all_overlaps(r, c));
        if (mag > best) {
          best = mag;
          best_r = r;
          best_c = c;
        }
      }
    }
    match[best_r] = best_c;
    row_done[best_r] = true;
    col_done[best_c] = true;
  }

  EffectiveSpectrum out;
  out.phases.resize(dim);
  out.eigenvectors = CMatrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const cplx lambda = eig.eigenvalues[match[j]];
    double phi = std::arg(lambda) / kTwoPi;
    phi -= std::floor(phi);
    if (phi >= 1.0) phi = 0.0;
    out.phases[j] = phi;
    for (std::size_t r = 0; r < dim; ++r) out.eigenvectors(r, j) = eig.eigenvectors(r, match[j]);
  }
  out.overlaps = s.eigenvectors.adjoint() * out.eigenvectors;

  for (std::size_t j = 0; j < dim; ++j) {
    double top = 0.0, second = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double mag = std::abs(all_overlaps(j, c));
      if (mag > top) {
        second = top;
        top = mag;
      } else if (mag > second) {
        second = mag;
      }
    }
    if (second > 0.0 && top / second < 1.2) out.matching_ambiguous = true;
    if (std::abs(s.energies[j]) * spec.t >= 0.5) out.unwrap_ambiguous = true;
  }
  return out;
}

TrotterizedQPE trotterized_qpe(const LCUHamiltonian& h, const Spectrum& s,
                               const InitialState& init, const TrotterSpec& spec, int n_phase) {
  TrotterizedQPE out;
  out.spectrum = effective_spectrum(h, s, spec);
  const std::size_t dim = s.energies.size();

  // c_eff = W' psi_init = O' c
  out.overlaps_eff.assign(dim, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < dim; ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < dim; ++j)
      acc += std::conj(out.spectrum.overlaps(j, k)) * init.overlaps[j];
    out.overlaps_eff[k] = acc;
  }

  out.table.t = spec.t;
  out.table.n_phase = n_phase;
  out.table.thetas = out.spectrum.phases;
  out.table.weights.resize(dim);
  double total = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    out.table.weights[k] = std::norm(out.overlaps_eff[k]);
    total += out.table.weights[k];
  }
  for (auto& w : out.table.weights) w /= total;  // strip unitary round-off
  validate_phase_table(out.table);
  return out;
}

PhaseTable trotterized_phase_table(const LCUHamiltonian& h, const Spectrum& s,
                                   const InitialState& init, const TrotterSpec& spec,
                                   int n_phase) {
  return trotterized_qpe(h, s, init, spec, n_phase).table;
}

double max_phase_error(const EffectiveSpectrum& eff, const Spectrum& s, double t) {
  double worst = 0.0;
  for (std::size_t j = 0; j < eff.phases.size(); ++j) {
    const double exact = phase_of_energy(s.energies[j], t);
    double d = std::abs(eff.phases[j] - exact);
    d = std::min(d, 1.0 - d);
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace qpe
