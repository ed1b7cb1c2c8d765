#pragma once

// Matrices over a division ring with the left-module conventions used
// throughout: vectors are rows, scalars act on the left, and a linear map acts
// on the right, so the matrix of "apply A, then B" is A * B.

#include <affcomp/algebra.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affcomp {

class shape_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using RowVector = std::vector<Scalar>;

inline RowVector zero_vector(const ScalarDomain& d, std::size_t n) { return RowVector(n, d.zero()); }

inline RowVector unit_vector(const ScalarDomain& d, std::size_t n, std::size_t i) {
  RowVector v = zero_vector(d, n);
  v.at(i) = d.one();
  return v;
}

inline bool is_zero_vector(const RowVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline RowVector operator+(const RowVector& x, const RowVector& y) {
  if (x.size() != y.size()) throw shape_mismatch("vector lengths differ");
  RowVector out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] + y[i]);
  return out;
}

inline RowVector operator-(const RowVector& x, const RowVector& y) {
  if (x.size() != y.size()) throw shape_mismatch("vector lengths differ");
  RowVector out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] - y[i]);
  return out;
}

/// Left scalar multiple k * v.
inline RowVector operator*(const Scalar& k, const RowVector& v) {
  RowVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(k * x);
  return out;
}

class Matrix {
 public:
  Matrix(const ScalarDomain& d, std::size_t rows, std::size_t cols)
      : domain_(&d), rows_(rows), cols_(cols), data_(rows * cols, d.zero()) {}

  static Matrix identity(const ScalarDomain& d, std::size_t n) {
    Matrix m(d, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = d.one();
    return m;
  }

  /// All rows must have length `cols`.
  static Matrix from_rows(const ScalarDomain& d, const std::vector<RowVector>& rows, std::size_t cols) {
    Matrix m(d, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  static Matrix from_ints(const ScalarDomain& d, const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(d, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw shape_mismatch("ragged integer matrix");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = d.from_int(rows[i][j]);
    }
    return m;
  }

  static Matrix diagonal(const std::vector<Scalar>& entries) {
    if (entries.empty()) throw shape_mismatch("diagonal of nothing");
    Matrix m(entries.front().domain(), entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  const ScalarDomain& domain() const { return *domain_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RowVector row(std::size_t i) const {
    return RowVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<RowVector> row_list() const {
    std::vector<RowVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  void set_row(std::size_t i, const RowVector& v) {
    if (v.size() != cols_) throw shape_mismatch("row length " + std::to_string(v.size()) + " != " + std::to_string(cols_));
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Rows `first..first+count` as a new matrix.
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix out(*domain_, count, cols_);
    for (std::size_t i = 0; i < count; ++i) out.set_row(i, row(first + i));
    return out;
  }
  Matrix col_block(std::size_t first, std::size_t count) const {
    Matrix out(*domain_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  /// Composition "a then b".
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.domain_ != b.domain_)
      throw shape_mismatch("cannot compose " + a.shape() + " with " + b.shape());
    Matrix out(*a.domain_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const Scalar& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(l, j);
      }
    return out;
  }
  /// Entrywise left multiple k * M.
  friend Matrix operator*(const Scalar& k, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x = k * x;
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (auto c = a.data_[i] <=> b.data_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || domain_ != b.domain_)
      throw shape_mismatch("shape mismatch " + shape() + " vs " + b.shape());
  }

  const ScalarDomain* domain_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

/// (v M)_j = sum_i v_i M_ij, with v_i multiplying on the left.
inline RowVector act(const RowVector& v, const Matrix& m) {
  if (v.size() != m.rows()) throw shape_mismatch("vector of length " + std::to_string(v.size()) + " against " + m.shape());
  RowVector out = zero_vector(m.domain(), m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

/// Matrix of "apply a, then b".
inline Matrix compose(const Matrix& a, const Matrix& b) { return a * b; }

inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw shape_mismatch("stack: column counts differ");
  Matrix out(top.domain(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) out.set_row(i, top.row(i));
  for (std::size_t i = 0; i < bottom.rows(); ++i) out.set_row(top.rows() + i, bottom.row(i));
  return out;
}

inline Matrix side_by_side(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw shape_mismatch("side_by_side: row counts differ");
  Matrix out(left.domain(), left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Row reduction under left row operations.

struct EchelonForm {
  Matrix reduced;  ///< nonzero rows only; rank x cols
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

namespace detail {

/// Gauss-Jordan on all columns of `m` (in place), choosing pivots among the
/// first `pivot_cols` columns. Rows are scaled and combined from the left.
/// Returns the pivot columns; pivot row r ends up at index r.
inline std::vector<std::size_t> reduce_in_place(Matrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      RowVector tmp = m.row(p);
      m.set_row(p, m.row(r));
      m.set_row(r, tmp);
    }
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Unique left-reduced row echelon form of the row space of `m`.
inline EchelonForm rref_left(const Matrix& m) {
  Matrix work = m;
  auto pivots = detail::reduce_in_place(work, work.cols());
  std::size_t rank = pivots.size();
  return {work.row_block(0, rank), std::move(pivots), rank};
}

inline std::size_t rank(const Matrix& m) { return rref_left(m).rank; }

/// Echelon basis of {v : v m = 0}; a dim x rows(m) matrix.
inline Matrix kernel(const Matrix& m) {
  Matrix aug = side_by_side(m, Matrix::identity(m.domain(), m.rows()));
  auto pivots = detail::reduce_in_place(aug, m.cols());
  std::size_t r = pivots.size();
  Matrix ker = aug.row_block(r, m.rows() - r).col_block(m.cols(), m.rows());
  return rref_left(ker).reduced;
}

/// Echelon basis of the row space of `m`.
inline Matrix image(const Matrix& m) { return rref_left(m).reduced; }

/// Exact inverse, or nullopt when `m` is singular or not square.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug = side_by_side(m, Matrix::identity(m.domain(), n));
  auto pivots = detail::reduce_in_place(aug, n);
  if (pivots.size() != n) return std::nullopt;
  return aug.col_block(n, n);
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// Coefficients x with x * basis = v, when v lies in the row space of `basis`
/// (whose rows must be linearly independent).
inline std::optional<RowVector> solve_left(const Matrix& basis, const RowVector& v) {
  if (v.size() != basis.cols()) throw shape_mismatch("solve_left: vector length mismatch");
  // [basis | I] reduces to [R | T] with R = T * basis.
  Matrix aug = side_by_side(basis, Matrix::identity(basis.domain(), basis.rows()));
  auto pivots = detail::reduce_in_place(aug, basis.cols());
  if (pivots.size() != basis.rows()) throw std::invalid_argument("solve_left: basis rows are dependent");
  RowVector y;
  for (std::size_t r = 0; r < pivots.size(); ++r) y.push_back(v[pivots[r]]);
  Matrix reduced = aug.col_block(0, basis.cols());
  if (act(y, reduced) != v) return std::nullopt;
  return act(y, aug.col_block(basis.cols(), basis.rows()));
}

}  // namespace affcomp
