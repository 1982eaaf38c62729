#include "sigb/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sigb {

namespace {

void require_positive_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) +
                     " x " + std::to_string(cols));
  }
}

void require_finite(double v) {
  if (!std::isfinite(v)) {
    throw ValueError("non-finite matrix entry");
  }
}

}  // namespace

Matrix Matrix::dense(std::size_t rows, std::size_t cols, std::vector<double> values) {
  require_positive_shape(rows, cols);
  if (values.size() != rows * cols) {
    throw ShapeError("dense storage length " + std::to_string(values.size()) +
                     " does not match " + std::to_string(rows) + " x " + std::to_string(cols));
  }
  for (double v : values) require_finite(v);
  Matrix a;
  a.rows_ = rows;
  a.cols_ = cols;
  a.re_ = std::move(values);
  return a;
}

Matrix Matrix::dense(std::size_t rows, std::size_t cols, std::vector<cplx> values) {
  require_positive_shape(rows, cols);
  if (values.size() != rows * cols) {
    throw ShapeError("dense storage length " + std::to_string(values.size()) +
                     " does not match " + std::to_string(rows) + " x " + std::to_string(cols));
  }
  Matrix a;
  a.rows_ = rows;
  a.cols_ = cols;
  a.complex_ = true;
  a.re_.resize(values.size());
  a.im_.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    require_finite(values[k].real());
    require_finite(values[k].imag());
    a.re_[k] = values[k].real();
    a.im_[k] = values[k].imag();
  }
  return a;
}

namespace {

struct CsrParts {
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col_idx;
  std::vector<double> re;
  std::vector<double> im;
};

// Shared CSR assembly: sort by (row, col), sum duplicates, drop zeros.
CsrParts assemble_sparse(std::size_t rows, std::size_t cols, std::vector<Entry> entries,
                         bool complex_mode) {
  require_positive_shape(rows, cols);
  for (const Entry& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw ShapeError("sparse entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") outside " + std::to_string(rows) + " x " + std::to_string(cols));
    }
    require_finite(e.value.real());
    require_finite(e.value.imag());
    if (!complex_mode && e.value.imag() != 0.0) {
      throw ValueError("imaginary entry in a real-mode matrix");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });

  CsrParts parts;
  parts.row_ptr.assign(rows + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    parts.row_ptr[i] = parts.col_idx.size();
    while (k < entries.size() && entries[k].row == i) {
      cplx v = entries[k].value;
      std::size_t col = entries[k].col;
      ++k;
      while (k < entries.size() && entries[k].row == i && entries[k].col == col) {
        v += entries[k].value;
        ++k;
      }
      if (v != cplx{0.0, 0.0}) {
        parts.col_idx.push_back(col);
        parts.re.push_back(v.real());
        if (complex_mode) parts.im.push_back(v.imag());
      }
    }
  }
  parts.row_ptr[rows] = parts.col_idx.size();
  return parts;
}

}  // namespace

Matrix Matrix::sparse_real(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
  CsrParts parts = assemble_sparse(rows, cols, std::move(entries), false);
  Matrix a;
  a.rows_ = rows;
  a.cols_ = cols;
  a.sparse_ = true;
  a.row_ptr_ = std::move(parts.row_ptr);
  a.col_idx_ = std::move(parts.col_idx);
  a.re_ = std::move(parts.re);
  return a;
}

Matrix Matrix::sparse_complex(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
  CsrParts parts = assemble_sparse(rows, cols, std::move(entries), true);
  Matrix a;
  a.rows_ = rows;
  a.cols_ = cols;
  a.complex_ = true;
  a.sparse_ = true;
  a.row_ptr_ = std::move(parts.row_ptr);
  a.col_idx_ = std::move(parts.col_idx);
  a.re_ = std::move(parts.re);
  a.im_ = std::move(parts.im);
  return a;
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<Entry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, cplx{1.0, 0.0}});
  return sparse_real(n, n, std::move(entries));
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) {
  return dense(rows, cols, std::vector<double>(rows * cols, 0.0));
}

std::size_t Matrix::nonzero_count() const noexcept {
  if (sparse_) return re_.size();  // canonical form stores no zeros
  std::size_t count = 0;
  for (std::size_t k = 0; k < re_.size(); ++k) {
    if (re_[k] != 0.0 || (complex_ && im_[k] != 0.0)) ++count;
  }
  return count;
}

double Matrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < re_.size(); ++k) {
    s += re_[k] * re_[k];
    if (complex_) s += im_[k] * im_[k];
  }
  return std::sqrt(s);
}

cplx Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw ShapeError("entry index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside " + std::to_string(rows_) + " x " + std::to_string(cols_));
  }
  if (!sparse_) {
    std::size_t k = i * cols_ + j;
    return {re_[k], complex_ ? im_[k] : 0.0};
  }
  auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return {0.0, 0.0};
  std::size_t k = static_cast<std::size_t>(it - col_idx_.begin());
  return {re_[k], complex_ ? im_[k] : 0.0};
}

bool Matrix::operator==(const Matrix& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_ && complex_ == other.complex_ &&
         sparse_ == other.sparse_ && row_ptr_ == other.row_ptr_ && col_idx_ == other.col_idx_ &&
         re_ == other.re_ && im_ == other.im_;
}

Matrix modulus_matrix(const Matrix& a) {
  std::vector<double> mods(a.stored_count());
  auto re = a.values_re();
  auto im = a.values_im();
  if (a.is_complex()) {
    for (std::size_t k = 0; k < mods.size(); ++k) mods[k] = std::abs(cplx{re[k], im[k]});
  } else {
    for (std::size_t k = 0; k < mods.size(); ++k) mods[k] = std::abs(re[k]);
  }
  if (!a.is_sparse()) return Matrix::dense(a.rows(), a.cols(), std::move(mods));
  std::vector<Entry> entries(mods.size());
  auto rp = a.row_ptr();
  auto ci = a.col_idx();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) entries[k] = {i, ci[k], cplx{mods[k], 0.0}};
  }
  return Matrix::sparse_real(a.rows(), a.cols(), std::move(entries));
}

MarginSums margin_sums(const Matrix& a) {
  MarginSums ms;
  ms.row_sums.assign(a.rows(), 0.0);
  ms.col_sums.assign(a.cols(), 0.0);
  auto re = a.values_re();
  auto im = a.values_im();
  auto mod = [&](std::size_t k) {
    return a.is_complex() ? std::abs(cplx{re[k], im[k]}) : std::abs(re[k]);
  };
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
        double m = mod(k);
        ms.row_sums[i] += m;
        ms.col_sums[ci[k]] += m;
      }
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        double m = mod(i * a.cols() + j);
        ms.row_sums[i] += m;
        ms.col_sums[j] += m;
      }
    }
  }
  return ms;
}

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ShapeError(std::string(what) + " has length " + std::to_string(got) + ", expected " +
                     std::to_string(want));
  }
}

}  // namespace

std::vector<double> apply(const Matrix& a, std::span<const double> x) {
  if (a.is_complex()) throw ValueError("real apply on a complex-mode matrix");
  require_length(x.size(), a.cols(), "input vector");
  std::vector<double> y(a.rows(), 0.0);
  auto re = a.values_re();
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += re[k] * x[ci[k]];
      y[i] = s;
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      const double* row = re.data() + i * a.cols();
      for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
      y[i] = s;
    }
  }
  return y;
}

std::vector<cplx> apply(const Matrix& a, std::span<const cplx> x) {
  require_length(x.size(), a.cols(), "input vector");
  std::vector<cplx> y(a.rows(), cplx{0.0, 0.0});
  auto re = a.values_re();
  auto im = a.values_im();
  auto val = [&](std::size_t k) { return a.is_complex() ? cplx{re[k], im[k]} : cplx{re[k], 0.0}; };
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      cplx s{0.0, 0.0};
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += val(k) * x[ci[k]];
      y[i] = s;
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      cplx s{0.0, 0.0};
      for (std::size_t j = 0; j < a.cols(); ++j) s += val(i * a.cols() + j) * x[j];
      y[i] = s;
    }
  }
  return y;
}

std::vector<double> apply_adjoint(const Matrix& a, std::span<const double> x) {
  if (a.is_complex()) throw ValueError("real apply_adjoint on a complex-mode matrix");
  require_length(x.size(), a.rows(), "input vector");
  std::vector<double> z(a.cols(), 0.0);
  auto re = a.values_re();
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) z[ci[k]] += re[k] * x[i];
    }
  } else {
    // Column gather accumulates contributions in ascending row order,
    // matching the sparse scatter order exactly.
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) s += re[i * a.cols() + j] * x[i];
      z[j] = s;
    }
  }
  return z;
}

std::vector<cplx> apply_adjoint(const Matrix& a, std::span<const cplx> x) {
  require_length(x.size(), a.rows(), "input vector");
  std::vector<cplx> z(a.cols(), cplx{0.0, 0.0});
  auto re = a.values_re();
  auto im = a.values_im();
  auto conj_val = [&](std::size_t k) {
    return a.is_complex() ? cplx{re[k], -im[k]} : cplx{re[k], 0.0};
  };
  if (a.is_sparse()) {
    auto rp = a.row_ptr();
    auto ci = a.col_idx();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) z[ci[k]] += conj_val(k) * x[i];
    }
  } else {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < a.rows(); ++i) s += conj_val(i * a.cols() + j) * x[i];
      z[j] = s;
    }
  }
  return z;
}

std::vector<double> gram_apply(const Matrix& a, std::span<const double> x) {
  std::vector<double> z = apply_adjoint(a, x);
  return apply(a, std::span<const double>(z));
}

std::vector<cplx> gram_apply(const Matrix& a, std::span<const cplx> x) {
  std::vector<cplx> z = apply_adjoint(a, x);
  return apply(a, std::span<const cplx>(z));
}

double entry_sum_gram(const Matrix& a) {
  if (a.is_complex()) {
    std::vector<cplx> ones(a.rows(), cplx{1.0, 0.0});
    std::vector<cplx> z = apply_adjoint(a, std::span<const cplx>(ones));
    double s = 0.0;
    for (const cplx& v : z) s += v.real() * v.real() + v.imag() * v.imag();
    return s;
  }
  std::vector<double> ones(a.rows(), 1.0);
  std::vector<double> z = apply_adjoint(a, std::span<const double>(ones));
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

}  // namespace sigb
