#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/laurent.hpp"

namespace twalex {

/// Dense row-major matrix over Z[t^{+-1}].
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  LaurentPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    PolyMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    }
    return m;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void place(std::size_t r0, std::size_t c0, const PolyMatrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) throw DomainError("block does not fit");
    for (std::size_t i = 0; i < block.rows(); ++i) {
      for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r0 + i, c0 + j) = block(i, j);
    }
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
    PolyMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
        }
      }
    }
    return m;
  }

  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference dimension mismatch");
    PolyMatrix m = a;
    for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] -= b.entries_[i];
    return m;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Every division
/// by the previous pivot is remainder-checked; a failure raises
/// InternalError. The 0x0 determinant is 1.
inline LaurentPoly determinant(const PolyMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::constant(1);

  std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  }

  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(1);
  for (std::size_t k = 0; k < n; ++k) {
    // Shortest nonzero entry in column k keeps intermediate growth down.
    std::size_t pivot = n;
    for (std::size_t r = k; r < n; ++r) {
      if (a[r][k].is_zero()) continue;
      if (pivot == n || a[r][k].length() < a[pivot][k].length()) pivot = r;
    }
    if (pivot == n) return {};
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      negate = !negate;
    }
    const LaurentPoly& akk = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const LaurentPoly aik = a[i][k];
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = akk * a[i][j];
        if (!aik.is_zero() && !a[k][j].is_zero()) v -= aik * a[k][j];
        auto q = exact_divide(v, prev);
        if (!q) throw InternalError("Bareiss step left a remainder");
        a[i][j] = std::move(*q);
      }
      a[i][k] = {};
    }
    prev = akk;
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Removes columns [block*n, block*n + n).
inline PolyMatrix delete_block_column(const PolyMatrix& m, std::size_t block, std::size_t n) {
  if (n == 0 || m.cols() % n != 0) throw DomainError("column count is not a multiple of the block size");
  if (block >= m.cols() / n) throw DomainError("block column index out of range");
  std::vector<std::size_t> rows(m.rows()), cols;
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = i;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j / n != block) cols.push_back(j);
  }
  return m.submatrix(rows, cols);
}

namespace detail {

/// Advances a sorted k-subset of {0..n-1} to its lexicographic successor.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace detail

/// Determinants of every k x k submatrix, ordered lexicographically by
/// (row set, column set).
inline std::vector<LaurentPoly> all_maximal_minors(const PolyMatrix& m, std::size_t k) {
  if (k == 0 || k > m.rows() || k > m.cols()) throw DomainError("minor order out of range");
  std::vector<LaurentPoly> out;
  auto rows = detail::first_combination(k);
  do {
    auto cols = detail::first_combination(k);
    do {
      out.push_back(determinant(m.submatrix(rows, cols)));
    } while (detail::next_combination(cols, m.cols()));
  } while (detail::next_combination(rows, m.rows()));
  return out;
}

}  // namespace twalex
