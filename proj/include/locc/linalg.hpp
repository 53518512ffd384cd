#pragma once
// Small dense complex matrices for few-qudit registers.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace locc::quantum {

using cplx = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  /// Row-major literal, e.g. CMatrix{{1, 0}, {0, 1}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  /// |ket><bra|
  static CMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);
  /// A single row holding conj(v), i.e. the bra <v|.
  static CMatrix bra(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix kron(const CMatrix& rhs) const;
  cplx trace() const;
  std::vector<cplx> apply(std::span<const cplx> v) const;

  /// this += alpha * v v^dagger
  void add_projector(double alpha, std::span<const cplx> v);

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(cplx s, CMatrix m) { return m *= s; }

  /// Largest entrywise modulus of (this - rhs).
  double max_abs_diff(const CMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Largest entrywise deviation of u u^dagger from the identity.
double unitarity_residual(const CMatrix& u);

/// Power of a square matrix; power may be any nonnegative integer.
CMatrix matrix_power(const CMatrix& m, unsigned power);

}  // namespace locc::quantum
