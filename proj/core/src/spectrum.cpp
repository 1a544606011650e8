#include "qpe/spectrum.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "qpe/eigen.hpp"
#include "qpe/errors.hpp"

namespace qpe {

namespace {

// Re-derives an orthonormal basis of a degenerate eigenspace from the
// spectral projector, seeded by computational basis vectors in index order.
// The result depends only on the subspace, not on the Jacobi sweep history.
void canonicalize_block(CMatrix& vectors, std::size_t lo, std::size_t hi) {
  const std::size_t n = vectors.rows();
  const std::size_t k = hi - lo;
  std::vector<std::vector<cplx>> accepted;
  accepted.reserve(k);
  for (std::size_t seed = 0; seed < n && accepted.size() < k; ++seed) {
    // w = P e_seed with P = sum_block v v'
    std::vector<cplx> w(n, cplx{0.0, 0.0});
    for (std::size_t c = lo; c < hi; ++c) {
      const cplx amp = std::conj(vectors(seed, c));
      for (std::size_t r = 0; r < n; ++r) w[r] += vectors(r, c) * amp;
    }
    for (const auto& prev : accepted) {
      cplx proj{0.0, 0.0};
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(prev[r]) * w[r];
      for (std::size_t r = 0; r < n; ++r) w[r] -= proj * prev[r];
    }
    double norm_sq = 0.0;
    for (const auto& x : w) norm_sq += std::norm(x);
    if (norm_sq < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& x : w) x *= inv;
    accepted.push_back(std::move(w));
  }
  if (accepted.size() != k) return;  // projector too noisy; keep Jacobi basis
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) vectors(r, lo + c) = accepted[c][r];
}

void fix_phases(CMatrix& vectors, std::size_t lo, std::size_t hi) {
  for (std::size_t c = lo; c < hi; ++c) {
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best + 1e-14) {
        best = mag;
        arg_max = r;
      }
    }
    const cplx pivot = vectors(arg_max, c);
    if (std::abs(pivot) == 0.0) continue;
    const cplx phase = std::conj(pivot) / std::abs(pivot);
    for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) *= phase;
  }
}

}  // namespace

Spectrum diagonalize(const CMatrix& hermitian) {
  EigResult eig = jacobi_hermitian(hermitian, 1e-10);
  const std::size_t n = eig.eigenvalues.size();

  double scale = 1.0;
  for (double e : eig.eigenvalues) scale = std::max(scale, std::abs(e));
  const double degeneracy_tol = 1e-9 * scale;

  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && eig.eigenvalues[hi] - eig.eigenvalues[hi - 1] <= degeneracy_tol) ++hi;
    if (hi - lo > 1) {
      canonicalize_block(eig.eigenvectors, lo, hi);
      fix_phases(eig.eigenvectors, lo, hi);
    }
    lo = hi;
  }
  return Spectrum{std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
}

const char* state_source_name(StateSource source) {
  switch (source) {
    case StateSource::BasisIndex: return "computational-basis-index";
    case StateSource::ComputationalAmplitudes: return "computational-amplitudes";
    case StateSource::EigenbasisAmplitudes: return "eigenbasis-amplitudes";
  }
  return "?";
}

StateSpec parse_state_spec(std::istream& text) {
  StateSpec spec;
  bool saw_any = false;
  std::set<std::size_t> seen;
  long line_no = 0;
  std::string line;
  while (std::getline(text, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;

    if (tag == "basis") {
      long long index = -1;
      std::string extra;
      if (!(fields >> index) || index < 0 || (fields >> extra))
        throw ParseError("expected `basis <index>`", line_no);
      if (saw_any) throw ParseError("`basis` must be the only entry", line_no);
      spec.source = StateSource::BasisIndex;
      spec.basis_index = static_cast<std::size_t>(index);
      saw_any = true;
      continue;
    }
    if (tag != "amp" && tag != "eig")
      throw ParseError("unknown entry '" + tag + "' (expected basis, amp or eig)", line_no);
    const StateSource source =
        tag == "amp" ? StateSource::ComputationalAmplitudes : StateSource::EigenbasisAmplitudes;
    if (!saw_any) {
      spec.source = source;
    } else if (spec.source != source) {
      throw ParseError("cannot mix basis/amp/eig entries", line_no);
    }
    long long index = -1;
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> index >> re >> im) || index < 0 || (fields >> extra))
      throw ParseError("expected `" + tag + " <index> <re> <im>`", line_no);
    if (!seen.insert(static_cast<std::size_t>(index)).second)
      throw ParseError("duplicate index " + std::to_string(index), line_no);
    spec.entries.emplace_back(static_cast<std::size_t>(index), cplx{re, im});
    saw_any = true;
  }
  if (!saw_any) throw ParseError("empty initial-state specification");
  return spec;
}

StateSpec load_state_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open initial-state file: " + path);
  return parse_state_spec(in);
}

namespace {

std::vector<cplx> dense_entries(const StateSpec& spec, std::size_t dim) {
  std::vector<cplx> vec(dim, cplx{0.0, 0.0});
  for (const auto& [index, value] : spec.entries) {
    if (index >= dim)
      throw ValidationError("state index " + std::to_string(index) + " out of range for dimension " +
                            std::to_string(dim));
    vec[index] = value;
  }
  double norm_sq = 0.0;
  for (const auto& x : vec) norm_sq += std::norm(x);
  const double norm = std::sqrt(norm_sq);
  if (std::abs(norm - 1.0) > 1e-6)
    throw ValidationError("state amplitudes have norm " + std::to_string(norm) +
                          "; expected 1 within 1e-6");
  for (auto& x : vec) x /= norm;
  return vec;
}

}  // namespace

std::vector<cplx> make_state_vector(const StateSpec& spec, std::size_t dim) {
  if (spec.source == StateSource::BasisIndex) {
    if (spec.basis_index >= dim)
      throw ValidationError("basis index " + std::to_string(spec.basis_index) +
                            " out of range for dimension " + std::to_string(dim));
    std::vector<cplx> vec(dim, cplx{0.0, 0.0});
    vec[spec.basis_index] = 1.0;
    return vec;
  }
  if (spec.source == StateSource::EigenbasisAmplitudes)
    throw ValidationError("eigenbasis overlaps have no computational-basis vector");
  return dense_entries(spec, dim);
}

InitialState overlaps(const Spectrum& s, const StateSpec& spec) {
  const std::size_t dim = s.energies.size();
  InitialState init;
  init.source = spec.source;
  if (spec.source == StateSource::EigenbasisAmplitudes) {
    init.overlaps = dense_entries(spec, dim);
    return init;
  }
  const std::vector<cplx> psi = make_state_vector(spec, dim);
  init.overlaps.assign(dim, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < dim; ++j) {
    cplx c{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r) c += std::conj(s.eigenvectors(r, j)) * psi[r];
    init.overlaps[j] = c;
  }
  return init;
}

double expectation_energy(const Spectrum& s, const InitialState& init) {
  double e = 0.0;
  for (std::size_t j = 0; j < s.energies.size(); ++j)
    e += std::norm(init.overlaps[j]) * s.energies[j];
  return e;
}

std::vector<cplx> to_computational(const Spectrum& s, const InitialState& init) {
  return s.eigenvectors * init.overlaps;
}

}  // namespace qpe
