#pragma once

#include <cstdint>
#include <vector>

#include "qpe/matrix.hpp"
#include "qpe/spectrum.hpp"

namespace qpe {

/// Brute-force reference caps. The oracle materializes the full register
/// product space and only exists to validate the analytic engine at small
/// sizes.
inline constexpr int kOracleMaxPhaseQubits = 4;
inline constexpr int kOracleMaxSystemQubits = 2;

/// Full (N + N_S)-qubit statevector; the phase register occupies the
/// high-order bits, the system register the low-order bits.
struct FullState {
  std::vector<cplx> amplitudes;
  int n_phase = 0;
  int n_system = 0;
};

/// Runs the explicit circuit: Hadamards on the phase register, the
/// controlled-U^{2^q} ladder (phase qubit q controls U^{2^q}), and the
/// dense inverse QFT with kernel 2^{-N/2} e^{-2 pi i k l / 2^N}. Returns the
/// pre-measurement state.
FullState run_qpe_circuit(const Spectrum& s, const std::vector<cplx>& init, double t, int n_phase);

/// P(l) = sum over system indices of |amplitude|^2.
std::vector<double> marginal_distribution(const FullState& fs);

/// Renormalized system-register slice at phase value l.
std::vector<cplx> conditional_state(const FullState& fs, std::int64_t l);

}  // namespace qpe
