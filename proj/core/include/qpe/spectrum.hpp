#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qpe/matrix.hpp"

namespace qpe {

/// Exact eigensystem of the system Hamiltonian: ascending energies E_j in
/// Hartree and the unitary matrix of eigenvector columns.
struct Spectrum {
  std::vector<double> energies;
  CMatrix eigenvectors;
};

/// Hermitian eigendecomposition with reproducible eigenvectors: ascending
/// eigenvalue order, canonical column phases, and eigenvectors inside a
/// degenerate block re-derived by Gram-Schmidt over projected basis vectors
/// in ascending basis-index order (so reruns and different sweep orders
/// agree). Throws ValidationError when the input is not Hermitian to 1e-10.
Spectrum diagonalize(const CMatrix& hermitian);

enum class StateSource { BasisIndex, ComputationalAmplitudes, EigenbasisAmplitudes };

const char* state_source_name(StateSource source);

/// Initial-state file contents before dimension resolution. `basis <k>`
/// selects one computational basis state; `amp <i> <re> <im>` lines give
/// computational amplitudes; `eig <j> <re> <im>` lines give eigenbasis
/// overlaps directly.
struct StateSpec {
  StateSource source = StateSource::BasisIndex;
  std::size_t basis_index = 0;
  std::vector<std::pair<std::size_t, cplx>> entries;
};

StateSpec parse_state_spec(std::istream& text);
StateSpec load_state_spec(const std::string& path);

/// Overlaps c_j of the initial state with the eigenbasis; sum |c_j|^2 = 1.
struct InitialState {
  std::vector<cplx> overlaps;
  StateSource source = StateSource::BasisIndex;
};

/// Dense computational-basis vector for a basis-index or amplitude spec.
/// Amplitude lists whose norm deviates from 1 by more than 1e-6 are
/// rejected; smaller deviations are renormalized exactly.
std::vector<cplx> make_state_vector(const StateSpec& spec, std::size_t dim);

/// c_j = <psi_j | psi_init>. Eigenbasis specs skip the projection.
InitialState overlaps(const Spectrum& s, const StateSpec& spec);

/// E_init = sum_j |c_j|^2 E_j.
double expectation_energy(const Spectrum& s, const InitialState& init);

/// Back to the computational basis: V c.
std::vector<cplx> to_computational(const Spectrum& s, const InitialState& init);

}  // namespace qpe
