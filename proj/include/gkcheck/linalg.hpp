#pragma once

#include "gkcheck/scalar.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gkcheck {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over an exact field (Scalar or CScalar).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Fraction-free (Bareiss) forward elimination. Returns the rank and leaves
/// `m` in row-echelon form; with polynomial entries every intermediate entry
/// stays a polynomial because each division is exact.
template <class T>
std::size_t bareiss_eliminate(Matrix<T>& m, T* determinant_out = nullptr) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  T prev(1L);
  std::size_t r = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      sign = -sign;
    }
    const T pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const T lead = m(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        T v = pivot * m(i, j);
        if (!lead.is_zero()) v -= lead * m(r, j);
        m(i, j) = v / prev;
      }
      m(i, c) = T();
    }
    prev = pivot;
    ++r;
  }
  if (determinant_out != nullptr) {
    if (rows == cols && r == rows) {
      *determinant_out = sign > 0 ? prev : -prev;
    } else {
      *determinant_out = T();
    }
  }
  return r;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return bareiss_eliminate(m);
}

/// Size of an entry, used to prefer simple pivots.
template <class T>
std::size_t entry_cost(const T&) {
  return 1;
}
inline std::size_t entry_cost(const Scalar& s) { return s.numerator().size() + s.denominator().size(); }

/// Rank by sparse Gaussian elimination over the field of the entries, with a
/// Markowitz pivot choice (least fill, then the simplest entry). Much faster
/// than Bareiss on sparse matrices with rational function entries.
template <class T>
std::size_t sparse_rank(const Matrix<T>& m) {
  std::vector<std::map<std::size_t, T>> rows(m.rows());
  std::map<std::size_t, std::set<std::size_t>> cols;  // column -> rows holding it
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) {
        rows[i].emplace(j, m(i, j));
        cols[j].insert(i);
      }
  std::size_t rank = 0;
  while (true) {
    std::size_t best_row = 0, best_col = 0, best_fill = 0, best_cost = 0;
    bool found = false;
    for (const auto& [j, in] : cols) {
      for (std::size_t i : in) {
        const std::size_t fill = (rows[i].size() - 1) * (in.size() - 1);
        const std::size_t cost = entry_cost(rows[i].at(j));
        if (!found || fill < best_fill || (fill == best_fill && cost < best_cost)) {
          found = true;
          best_row = i, best_col = j, best_fill = fill, best_cost = cost;
        }
      }
    }
    if (!found) return rank;
    ++rank;
    auto pivot_row = std::move(rows[best_row]);
    rows[best_row].clear();
    for (const auto& [j, v] : pivot_row) cols[j].erase(best_row);
    const T inv = T(1L) / pivot_row.at(best_col);
    const std::set<std::size_t> targets = cols[best_col];
    for (std::size_t i : targets) {
      const T f = rows[i].at(best_col) * inv;
      for (const auto& [j, v] : pivot_row) {
        auto it = rows[i].find(j);
        if (it == rows[i].end()) {
          rows[i].emplace(j, -(f * v));
          cols[j].insert(i);
        } else {
          it->second -= f * v;
          if (j == best_col || it->second.is_zero()) {
            rows[i].erase(it);
            cols[j].erase(i);
          }
        }
      }
    }
    for (auto it = cols.begin(); it != cols.end();) it = it->second.empty() ? cols.erase(it) : std::next(it);
  }
}

template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (m.rows() == 0) return T(1L);
  T det;
  bareiss_eliminate(m, &det);
  return det;
}

/// Reduced row-echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const T inv = T(1L) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right kernel {x : m x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1L);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = rhs, or nothing when the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1L);
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DivisionByZero("singular matrix");
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

inline Matrix<CScalar> complexify(const Matrix<Scalar>& m) {
  return m.map([](const Scalar& x) { return CScalar(x); });
}

}  // namespace gkcheck
