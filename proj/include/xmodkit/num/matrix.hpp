// Dense rational matrices and the elimination routines every rank and
// lift computation in the Lie layer goes through. Pivoting is plain
// left-to-right with free variables set to zero, so every lift choice
// made from a linear system is deterministic.

#ifndef XMODKIT_NUM_MATRIX_HPP_
#define XMODKIT_NUM_MATRIX_HPP_

#include <optional>
#include <vector>

#include "xmodkit/num/rational.hpp"

namespace xmodkit::num {

using Vec = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) fail("DimensionMismatch", "matrix apply");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!at(r, c).is_zero()) out[r] += at(r, c) * v[c];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail("DimensionMismatch", "matrix product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!a.at(r, k).is_zero())
          for (std::size_t c = 0; c < b.cols_; ++c)
            out.at(r, c) += a.at(r, k) * b.at(k, c);
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail("DimensionMismatch", "matrix sum");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix nb = b;
    for (auto& x : nb.data_) x = -x;
    return a + nb;
  }
  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_) if (!x.is_zero()) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct Rref {
  Matrix mat;                      // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column per nonzero row
};

inline Rref rref(Matrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(row, c), m.at(sel, c));
    Rational inv = Rational(1) / m.at(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Rational f = m.at(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.mat = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Solves A x = b; free variables are set to zero. Returns nullopt when
// inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) fail("DimensionMismatch", "solve");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  Rref rr = rref(std::move(aug));
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    if (rr.pivots[i] == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    x[rr.pivots[i]] = rr.mat.at(i, a.cols());
  return x;
}

// Basis of the nullspace of A, one vector per free column, in column order.
inline std::vector<Vec> nullspace(const Matrix& a) {
  Rref rr = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t col = 0; col < a.cols(); ++col) {
    if (is_pivot[col]) continue;
    Vec v(a.cols());
    v[col] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      v[rr.pivots[i]] = -rr.mat.at(i, col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Columns of `basis` span a subspace; returns coordinates of v in that
// spanning set (free coordinates zero) or nullopt if v is outside it.
inline std::optional<Vec> coordinates_in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    for (const auto& x : v) if (!x.is_zero()) return std::nullopt;
    return Vec{};
  }
  Matrix m(v.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (basis[c].size() != v.size()) fail("DimensionMismatch", "span coordinates");
    for (std::size_t r = 0; r < v.size(); ++r) m.at(r, c) = basis[c][r];
  }
  return solve(m, v);
}

}  // namespace xmodkit::num

#endif  // XMODKIT_NUM_MATRIX_HPP_
