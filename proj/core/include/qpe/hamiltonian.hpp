#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "qpe/matrix.hpp"
#include "qpe/pauli.hpp"

namespace qpe {

struct LCUTerm {
  double coefficient = 0.0;  // Hartree
  PauliString string;
};

/// A Hamiltonian given as a real linear combination of Pauli words.
/// Terms are unique (parsing merges duplicates) and at least one carries a
/// non-zero coefficient.
struct LCUHamiltonian {
  std::vector<LCUTerm> terms;
  int n_qubits = 0;
};

/// Parses the Hamiltonian text format: one `<coefficient> <pauli-word>` per
/// line, `#` starts a comment, blank lines ignored. Duplicate words are
/// summed and exact cancellations dropped. Throws ParseError (with the line
/// number) on malformed input and ValidationError when nothing remains.
LCUHamiltonian parse_lcu(std::istream& text);
LCUHamiltonian parse_lcu(std::string_view text);
LCUHamiltonian load_hamiltonian(const std::string& path);

/// Sum_b gamma_b P_b as a dense 2^n x 2^n Hermitian matrix.
CMatrix dense_matrix(const LCUHamiltonian& h);

/// Sum_b |gamma_b|. Upper-bounds the spectral norm, strictly so whenever two
/// non-collinear terms are present.
double one_norm(const LCUHamiltonian& h);

/// First-order Trotter commutator constant
///   |C_1| = 1/2 sum_s sum_{r>s} |gamma_r gamma_s| * ||[P_r, P_s]||.
/// Pauli words either commute or anticommute, and anticommuting words have
/// commutator spectral norm exactly 2, so no dense algebra is needed.
double commutator_constant_c1(const LCUHamiltonian& h);

/// Splits off the all-identity term: returns its coefficient (the constant
/// energy shift) and the Hamiltonian without it. The planner's
/// drop-identity mode runs phase evolution on the remainder and reports the
/// shift separately.
struct IdentitySplit {
  double shift = 0.0;
  LCUHamiltonian remainder;
};
IdentitySplit split_identity(const LCUHamiltonian& h);

}  // namespace qpe
