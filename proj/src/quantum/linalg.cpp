#include "locc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locc/kernels.hpp"

namespace locc::quantum {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("CMatrix: data size does not match shape");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  CMatrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

CMatrix CMatrix::bra(std::span<const cplx> v) {
  CMatrix m(1, v.size());
  for (std::size_t c = 0; c < v.size(); ++c) m(0, c) = std::conj(v[c]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

CMatrix CMatrix::conjugate() const {
  CMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

CMatrix CMatrix::kron(const CMatrix& rhs) const {
  CMatrix m(rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (std::size_t r1 = 0; r1 < rows_; ++r1)
    for (std::size_t c1 = 0; c1 < cols_; ++c1) {
      const cplx s = (*this)(r1, c1);
      if (s == cplx{}) continue;
      for (std::size_t r2 = 0; r2 < rhs.rows_; ++r2)
        for (std::size_t c2 = 0; c2 < rhs.cols_; ++c2)
          m(r1 * rhs.rows_ + r2, c1 * rhs.cols_ + c2) = s * rhs(r2, c2);
    }
  return m;
}

cplx CMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != cols_) throw std::invalid_argument("CMatrix::apply: dimension mismatch");
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = kernels::dotu(row(r), v);
  return out;
}

void CMatrix::add_projector(double alpha, std::span<const cplx> v) {
  if (!square() || v.size() != rows_) throw std::invalid_argument("add_projector: dimension mismatch");
  kernels::her(alpha, v, data_);
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("CMatrix +=: shape mismatch");
  kernels::axpy(1.0, rhs.data_, data_);
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("CMatrix -=: shape mismatch");
  kernels::axpy(-1.0, rhs.data_, data_);
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("CMatrix *: shape mismatch");
  CMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const cplx s = lhs(i, k);
      if (s != cplx{}) kernels::axpy(s, rhs.row(k), out.row(i));
    }
  return out;
}

double CMatrix::max_abs_diff(const CMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - rhs.data_[i]));
  return m;
}

double unitarity_residual(const CMatrix& u) {
  return (u * u.adjoint()).max_abs_diff(CMatrix::identity(u.rows()));
}

CMatrix matrix_power(const CMatrix& m, unsigned power) {
  if (!m.square()) throw std::invalid_argument("matrix_power: matrix must be square");
  CMatrix out = CMatrix::identity(m.rows());
  for (unsigned i = 0; i < power; ++i) out = out * m;
  return out;
}

}  // namespace locc::quantum
