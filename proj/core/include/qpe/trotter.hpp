#pragma once

#include <vector>

#include "qpe/engine.hpp"
#include "qpe/hamiltonian.hpp"
#include "qpe/matrix.hpp"
#include "qpe/spectrum.hpp"

namespace qpe {

/// One product-formula configuration: order p in {1,2}, n Trotter steps,
/// controlled-power exponent q, time step t, and the term permutation the
/// factors follow (Trotter error depends on it, so it is always recorded).
struct TrotterSpec {
  int order = 1;
  long long steps = 1;
  int power = 0;
  double t = 0.0;
  std::vector<std::size_t> term_order;
};

/// The default factor ordering: descending |gamma|, stable.
std::vector<std::size_t> default_term_order(const LCUHamiltonian& h);

TrotterSpec make_trotter_spec(const LCUHamiltonian& h, int order, long long steps, int power,
                              double t);

/// U^{2^q} = V e^{-i 2 pi Lambda t 2^q} V'.
CMatrix exact_unitary(const Spectrum& s, double t, int power);

/// S(U^{2^q}, p): order-1 is the plain ordered product of per-term
/// exponentials raised to n; order-2 the symmetric half-angle product.
CMatrix trotter_step(const LCUHamiltonian& h, const TrotterSpec& spec);

/// ||U^{2^q} - S|| measured with the spectral norm, next to the commutator
/// bound |C_p| (2 pi t 2^q)^{p+1} / n^p. C_1 is computed from the LCU;
/// for p=2 pass the constant explicitly or the bound is reported as NaN.
struct TrotterErrorReport {
  double error = 0.0;
  double bound = 0.0;
};
TrotterErrorReport trotter_error(const LCUHamiltonian& h, const Spectrum& s,
                                 const TrotterSpec& spec, double c_p = -1.0);

/// Eigen-phases of the single-step (q = 0) Trotter unitary, matched to the
/// exact eigenstates by maximum overlap. overlaps(j, k) = <psi_j | w_k>
/// with columns already in matched order, so the diagonal carries the
/// per-state fidelities.
struct EffectiveSpectrum {
  std::vector<double> phases;  // phi_j in [0, 1)
  CMatrix eigenvectors;        // matched effective eigenvectors, columns
  CMatrix overlaps;            // V_exact' W_eff, matched column order
  bool matching_ambiguous = false;  // two candidates within ratio 1.2
  bool unwrap_ambiguous = false;    // some |E_j| t >= 1/2: energies only mod 1/t
};
EffectiveSpectrum effective_spectrum(const LCUHamiltonian& h, const Spectrum& s,
                                     const TrotterSpec& spec);

/// Everything Trotterized QPE needs: the effective phases, the initial
/// state re-expressed in the effective eigenbasis, and the phase table that
/// feeds the spectral engine unchanged.
struct TrotterizedQPE {
  EffectiveSpectrum spectrum;
  std::vector<cplx> overlaps_eff;  // <w_k | psi_init>
  PhaseTable table;
};
TrotterizedQPE trotterized_qpe(const LCUHamiltonian& h, const Spectrum& s,
                               const InitialState& init, const TrotterSpec& spec, int n_phase);

PhaseTable trotterized_phase_table(const LCUHamiltonian& h, const Spectrum& s,
                                   const InitialState& init, const TrotterSpec& spec, int n_phase);

/// max_j of the mod-1 distance between effective and exact phases.
double max_phase_error(const EffectiveSpectrum& eff, const Spectrum& s, double t);

}  // namespace qpe
