#pragma once

// Deterministic random instances for property tests. Everything funnels
// through splitmix64 so failures reproduce from the seed alone.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qpe/hamiltonian.hpp"
#include "qpe/matrix.hpp"
#include "qpe/sampler.hpp"

namespace qpe::testing {

inline double uniform(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

inline CMatrix random_hermitian(SplitMix64& rng, std::size_t n, double scale = 1.0) {
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = uniform(rng, -scale, scale);
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx v{uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

inline std::vector<cplx> random_state(SplitMix64& rng, std::size_t n) {
  std::vector<cplx> v(n);
  double norm_sq = 0.0;
  for (auto& x : v) {
    x = cplx{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    norm_sq += std::norm(x);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& x : v) x *= inv;
  return v;
}

inline PauliString random_pauli_string(SplitMix64& rng, int n_qubits, bool allow_identity = true) {
  for (;;) {
    std::string word;
    for (int k = 0; k < n_qubits; ++k) word.push_back("IXYZ"[rng.next() % 4]);
    PauliString p = PauliString::parse(word);
    if (allow_identity || !p.is_identity()) return p;
  }
}

/// Random LCU with at least one anticommuting pair (so C_1 > 0).
inline LCUHamiltonian random_noncommuting_lcu(SplitMix64& rng, int n_qubits, int n_terms,
                                              double coeff_scale = 1.0) {
  for (;;) {
    LCUHamiltonian h;
    h.n_qubits = n_qubits;
    for (int i = 0; i < n_terms; ++i) {
      LCUTerm term;
      term.string = random_pauli_string(rng, n_qubits, false);
      bool duplicate = false;
      for (const auto& other : h.terms)
        if (other.string == term.string) duplicate = true;
      if (duplicate) {
        --i;
        continue;
      }
      double mag = uniform(rng, 0.2, 1.0) * coeff_scale;
      term.coefficient = (rng.next() & 1u) ? mag : -mag;
      h.terms.push_back(term);
    }
    if (commutator_constant_c1(h) > 0.01 * coeff_scale * coeff_scale) return h;
  }
}

}  // namespace qpe::testing
