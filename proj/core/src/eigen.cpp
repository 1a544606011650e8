#include "qpe/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpe/errors.hpp"

namespace qpe {

namespace {

double off_diagonal_norm_sq(const CMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r + 1; c < a.cols(); ++c) sum += std::norm(a(r, c));
  return 2.0 * sum;
}

// One two-sided rotation zeroing a(p,q). The complex pivot is reduced to a
// real one by a phase, then the classic symmetric Jacobi angle applies.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const cplx u = apq / b;  // e^{i phi}

  const double alpha = a(p, p).real();
  const double delta = a(q, q).real();
  const double tau = (delta - alpha) / (2.0 * b);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J columns: col_p = (c, -s e^{-i phi}), col_q = (s, c e^{-i phi}).
  const cplx jqp = -s * std::conj(u);
  const cplx jqq = c * std::conj(u);

  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) {  // A <- A J
    const cplx arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * c + arq * jqp;
    a(r, q) = arp * s + arq * jqq;
  }
  for (std::size_t col = 0; col < n; ++col) {  // A <- J' A
    const cplx apc = a(p, col), aqc = a(q, col);
    a(p, col) = c * apc + std::conj(jqp) * aqc;
    a(q, col) = s * apc + std::conj(jqq) * aqc;
  }
  for (std::size_t r = 0; r < n; ++r) {  // V <- V J
    const cplx vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * c + vrq * jqp;
    v(r, q) = vrp * s + vrq * jqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cplx{a(p, p).real(), 0.0};
  a(q, q) = cplx{a(q, q).real(), 0.0};
}

void fix_column_phases(CMatrix& vectors) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best + 1e-14) {  // small slack keeps ties deterministic
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

EigResult jacobi_hermitian(const CMatrix& m, double hermiticity_tol) {
  if (m.rows() != m.cols()) throw ValidationError("eigendecomposition needs a square matrix");
  if (hermiticity_defect(m) > hermiticity_tol)
    throw ValidationError("matrix is not Hermitian within tolerance");

  const std::size_t n = m.rows();
  CMatrix a = m;
  // Symmetrize away representation noise below the tolerance.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = cplx{a(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx sym = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = sym;
      a(c, r) = std::conj(sym);
    }
  }

  CMatrix v = CMatrix::identity(n);
  double scale_sq = 0.0;
  for (const auto& x : a.data()) scale_sq += std::norm(x);
  const double stop = scale_sq * 1e-28 + 1e-300;

  for (int sweep = 0; sweep < 60 && n > 1; ++sweep) {
    if (off_diagonal_norm_sq(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  fix_column_phases(out.eigenvectors);
  return out;
}

double spectral_norm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("spectral_norm needs a square matrix");
  if (m.rows() == 0) return 0.0;
  const CMatrix gram = m.adjoint() * m;
  const EigResult eig = jacobi_hermitian(gram, 1e-8 * std::max(1.0, max_abs(gram)));
  const double top = eig.eigenvalues.back();
  return std::sqrt(std::max(top, 0.0));
}

UnitaryEig eigendecompose_unitary(const CMatrix& u) {
  if (u.rows() != u.cols()) throw ValidationError("unitary eigendecomposition needs a square matrix");
  if (unitarity_defect(u) > 1e-8) throw ValidationError("matrix is not unitary within tolerance");

  const std::size_t n = u.rows();
  const CMatrix ud = u.adjoint();
  CMatrix re(n, n), im(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      re(r, c) = 0.5 * (u(r, c) + ud(r, c));
      im(r, c) = cplx{0.0, -0.5} * (u(r, c) - ud(r, c));
    }
  }

  EigResult stage1 = jacobi_hermitian(re, 1e-9);
  CMatrix vectors = stage1.eigenvectors;

  // Split each cos-degenerate cluster with the imaginary part; clusters wide
  // enough to hide genuinely distinct phases do not survive this stage.
  const double cluster_tol = 1e-8;
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && stage1.eigenvalues[hi] - stage1.eigenvalues[hi - 1] <= cluster_tol) ++hi;
    if (hi - lo > 1) {
      const std::size_t k = hi - lo;
      CMatrix block(n, k);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) block(r, c) = vectors(r, lo + c);
      const CMatrix im_small = block.adjoint() * (im * block);
      const EigResult stage2 = jacobi_hermitian(im_small, 1e-7);
      const CMatrix rotated = block * stage2.eigenvectors;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) vectors(r, lo + c) = rotated(r, c);
    }
    lo = hi;
  }

  UnitaryEig out;
  out.eigenvectors = vectors;
  out.eigenvalues.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    cplx lambda{0.0, 0.0};  // Rayleigh quotient v' U v
    for (std::size_t r = 0; r < n; ++r) {
      cplx uv{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) uv += u(r, k) * vectors(k, c);
      lambda += std::conj(vectors(r, c)) * uv;
    }
    out.eigenvalues[c] = lambda / std::abs(lambda);
  }
  return out;
}

}  // namespace qpe
