#include "qpe/matrix.hpp"

#include <cassert>
#include <cmath>

namespace qpe {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  assert(lhs.cols() == rhs.rows());
  CMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cplx lrk = lhs(r, k);
      if (lrk == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += lrk * rhs(k, c);
    }
  }
  return out;
}

CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs) {
  assert(lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols());
  CMatrix out = lhs;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += rhs.data()[i];
  return out;
}

CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs) {
  assert(lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols());
  CMatrix out = lhs;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= rhs.data()[i];
  return out;
}

CMatrix operator*(cplx scale, const CMatrix& m) {
  CMatrix out = m;
  for (auto& v : out.data()) v *= scale;
  return out;
}

std::vector<cplx> operator*(const CMatrix& m, const std::vector<cplx>& v) {
  assert(m.cols() == v.size());
  std::vector<cplx> out(m.rows(), cplx{0.0, 0.0});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cplx acc{0.0, 0.0};
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

double max_abs(const CMatrix& m) {
  double mx = 0.0;
  for (const auto& v : m.data()) mx = std::max(mx, std::abs(v));
  return mx;
}

double hermiticity_defect(const CMatrix& m) {
  assert(m.rows() == m.cols());
  double mx = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c <= r; ++c)
      mx = std::max(mx, std::abs(m(r, c) - std::conj(m(c, r))));
  return mx;
}

double unitarity_defect(const CMatrix& m) {
  CMatrix g = m.adjoint() * m;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return max_abs(g);
}

CMatrix matrix_power(const CMatrix& m, unsigned long long exponent) {
  assert(m.rows() == m.cols());
  CMatrix result = CMatrix::identity(m.rows());
  CMatrix base = m;
  while (exponent > 0) {
    if (exponent & 1ull) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace qpe
