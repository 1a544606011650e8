#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qpe {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for desk-scale quantum problems
/// (dimensions up to a few thousand); no sparse or blocked storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }

  std::vector<cplx>& data() { return a_; }
  const std::vector<cplx>& data() const { return a_; }

  CMatrix adjoint() const;

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator+(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator-(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(cplx scale, const CMatrix& m);

std::vector<cplx> operator*(const CMatrix& m, const std::vector<cplx>& v);

/// max_ij |A_ij|
double max_abs(const CMatrix& m);

/// max_ij |A_ij - (A†)_ij|; zero for Hermitian input.
double hermiticity_defect(const CMatrix& m);

/// max_ij |(M†M - I)_ij|; zero for unitary input.
double unitarity_defect(const CMatrix& m);

/// Matrix power by repeated squaring (exponent >= 0).
CMatrix matrix_power(const CMatrix& m, unsigned long long exponent);

/// Numerically stable sum with pairwise splitting; deterministic for a
/// fixed input order regardless of how callers partition outer loops.
double pairwise_sum(std::span<const double> values);

}  // namespace qpe
