#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sigb/errors.hpp"

namespace sigb {

using cplx = std::complex<double>;

// One explicit entry used to assemble a sparse matrix.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  cplx value{0.0, 0.0};
};

// Row and column sums of the modulus matrix |A|.
struct MarginSums {
  std::vector<double> row_sums;  // r_i = sum_j |a_ij|
  std::vector<double> col_sums;  // c_j = sum_i |a_ij|
};

// Immutable dense (row-major) or CSR matrix with a real/complex mode flag.
//
// Sparse storage is canonical: column indices strictly increasing within
// each row, duplicate coordinates summed and exact-zero values dropped at
// construction. All row reductions run in stored index order, so repeated
// runs produce bit-identical results. Real-mode matrices never allocate
// an imaginary array and take pure-real code paths throughout.
class Matrix {
public:
  static Matrix dense(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Matrix dense(std::size_t rows, std::size_t cols, std::vector<cplx> values);
  static Matrix sparse_real(std::size_t rows, std::size_t cols, std::vector<Entry> entries);
  static Matrix sparse_complex(std::size_t rows, std::size_t cols, std::vector<Entry> entries);
  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_complex() const noexcept { return complex_; }
  bool is_sparse() const noexcept { return sparse_; }

  // Stored value count: rows*cols when dense, CSR entry count when sparse.
  std::size_t stored_count() const noexcept { return re_.size(); }
  // Count of logically nonzero entries.
  std::size_t nonzero_count() const noexcept;
  bool is_zero() const noexcept { return nonzero_count() == 0; }
  double frobenius_norm() const noexcept;

  // Logical entry value; zero when the position is not stored.
  cplx at(std::size_t i, std::size_t j) const;

  // Raw storage views for kernels. row_ptr/col_idx are empty when dense;
  // values_im is empty in real mode.
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values_re() const noexcept { return re_; }
  std::span<const double> values_im() const noexcept { return im_; }

  // Strict equality: same shape, mode, storage kind, and stored values.
  bool operator==(const Matrix& other) const noexcept;

private:
  Matrix() = default;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool complex_ = false;
  bool sparse_ = false;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Entrywise modulus |A|; output is real-mode with the same storage kind
// and sparsity pattern.
Matrix modulus_matrix(const Matrix& a);

// Row and column sums of |A|.
MarginSums margin_sums(const Matrix& a);

// y = A x. The real overload requires a real-mode matrix.
std::vector<double> apply(const Matrix& a, std::span<const double> x);
std::vector<cplx> apply(const Matrix& a, std::span<const cplx> x);

// z = A* x (conjugate transpose). The real overload requires real mode.
std::vector<double> apply_adjoint(const Matrix& a, std::span<const double> x);
std::vector<cplx> apply_adjoint(const Matrix& a, std::span<const cplx> x);

// y = A (A* x), two mat-vec passes; AA* is never formed.
std::vector<double> gram_apply(const Matrix& a, std::span<const double> x);
std::vector<cplx> gram_apply(const Matrix& a, std::span<const cplx> x);

// Sigma(AA*) = |A* j_m|^2, the total entry sum of the Gram matrix.
// Always real and nonnegative.
double entry_sum_gram(const Matrix& a);

}  // namespace sigb
