#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hcsa/scalar_field.hpp"

namespace hcsa {

/// Row-compressed sparse matrix; each row keeps (column, value) pairs sorted by column.
template <class T>
class SparseMatrix {
 public:
  using Entry = std::pair<int, T>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

  static SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, T(1));
    return m;
  }

  static SparseMatrix diagonal(const std::vector<T>& d) {
    SparseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows_; ++i)
      if (!d[i].is_exact_zero()) m.data_[i].emplace_back(i, d[i]);
    return m;
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] const std::vector<Entry>& row(int r) const { return data_[r]; }

  /// Adds v to entry (r, c).
  void add(int r, int c, const T& v) {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c)
      it->second += v;
    else
      row.insert(it, Entry(c, v));
  }

  void set(int r, int c, const T& v) {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c)
      it->second = v;
    else
      row.insert(it, Entry(c, v));
  }

  [[nodiscard]] T get(int r, int c) const {
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return T(0);
  }

  [[nodiscard]] std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  /// Drops exact zeros.
  void prune() {
    for (auto& row : data_)
      row.erase(std::remove_if(row.begin(), row.end(), [](const Entry& e) { return e.second.is_exact_zero(); }),
                row.end());
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows_, b.cols_);
    std::vector<T> acc(static_cast<std::size_t>(b.cols_));
    std::vector<char> touched(static_cast<std::size_t>(b.cols_), 0);
    std::vector<int> cols;
    for (int i = 0; i < a.rows_; ++i) {
      cols.clear();
      for (const auto& [k, av] : a.data_[i]) {
        for (const auto& [j, bv] : b.data_[k]) {
          if (!touched[j]) {
            touched[j] = 1;
            acc[j] = av * bv;
            cols.push_back(j);
          } else {
            acc[j] += av * bv;
          }
        }
      }
      std::sort(cols.begin(), cols.end());
      auto& row = out.data_[i];
      row.reserve(cols.size());
      for (int j : cols) {
        row.emplace_back(j, std::move(acc[j]));
        touched[j] = 0;
      }
    }
    return out;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }

  friend SparseMatrix operator*(const T& s, SparseMatrix m) {
    for (auto& row : m.data_)
      for (auto& e : row) e.second = s * e.second;
    return m;
  }

  [[nodiscard]] std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, x] : data_[i]) out[i] += x * v[j];
    return out;
  }

  [[nodiscard]] SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, x] : data_[i]) t.data_[j].emplace_back(i, x);
    return t;
  }

  /// Sub-matrix of rows [r0, r0+nr) and columns [c0, c0+nc).
  [[nodiscard]] SparseMatrix block(int r0, int c0, int nr, int nc) const {
    SparseMatrix out(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (const auto& [j, x] : data_[r0 + i])
        if (j >= c0 && j < c0 + nc) out.data_[i].emplace_back(j - c0, x);
    return out;
  }

  template <class F>
  [[nodiscard]] auto map(F&& f) const -> SparseMatrix<decltype(f(std::declval<const T&>()))> {
    SparseMatrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, x] : data_[i]) out.add(i, j, f(x));
    return out;
  }

 private:
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    SparseMatrix out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      const auto& ra = a.data_[i];
      const auto& rb = b.data_[i];
      auto& ro = out.data_[i];
      std::size_t p = 0, q = 0;
      while (p < ra.size() || q < rb.size()) {
        if (q == rb.size() || (p < ra.size() && ra[p].first < rb[q].first)) {
          ro.push_back(ra[p++]);
        } else if (p == ra.size() || rb[q].first < ra[p].first) {
          ro.emplace_back(rb[q].first, subtract ? T(-rb[q].second) : rb[q].second);
          ++q;
        } else {
          ro.emplace_back(ra[p].first, subtract ? T(ra[p].second - rb[q].second) : T(ra[p].second + rb[q].second));
          ++p;
          ++q;
        }
      }
    }
    return out;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

using Matrix = SparseMatrix<Scalar>;

inline Real max_abs(const Matrix& m) {
  Real best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i)) {
      Real a = abs(e.second);
      if (a > best) best = a;
    }
  return best;
}

inline Real max_abs_difference(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

/// Block diagonal assembly.
inline Matrix direct_sum(const std::vector<const Matrix*>& parts) {
  int n = 0;
  for (const auto* p : parts) n += p->rows();
  Matrix out(n, n);
  int offset = 0;
  for (const auto* p : parts) {
    for (int i = 0; i < p->rows(); ++i)
      for (const auto& [j, x] : p->row(i)) out.add(offset + i, offset + j, x);
    offset += p->rows();
  }
  return out;
}

/// Kronecker product.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [j, x] : a.row(i))
      for (int k = 0; k < b.rows(); ++k)
        for (const auto& [l, y] : b.row(k)) out.add(i * b.rows() + k, j * b.cols() + l, x * y);
  return out;
}

/// Incrementally maintained row echelon basis; decides linear independence of new rows.
template <class T, class Mag>
class EchelonBasis {
 public:
  EchelonBasis(int width, Mag tolerance) : width_(width), tolerance_(std::move(tolerance)) {}

  /// Returns true and keeps the reduced row iff it is independent of the rows seen so far.
  bool insert(std::vector<T> v) {
    Mag scale = 0;
    for (const auto& x : v) {
      Mag a = abs(x);
      if (a > scale) scale = a;
    }
    if (scale == 0) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int p = pivots_[r];
      if (v[p].is_exact_zero()) continue;
      T f = v[p];
      const auto& row = rows_[r];
      for (int j = 0; j < width_; ++j)
        if (!row[j].is_exact_zero()) v[j] -= f * row[j];
      v[p] = T(0);
    }
    int best = -1;
    Mag best_mag = 0;
    for (int j = 0; j < width_; ++j) {
      Mag a = abs(v[j]);
      if (a > best_mag) {
        best_mag = a;
        best = j;
      }
    }
    if (best < 0 || best_mag <= tolerance_ * scale) return false;
    T inv = T(1) / v[best];
    for (auto& x : v) x = x * inv;
    v[best] = T(1);
    rows_.push_back(std::move(v));
    pivots_.push_back(best);
    return true;
  }

  [[nodiscard]] int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int width_;
  Mag tolerance_;
  std::vector<std::vector<T>> rows_;
  std::vector<int> pivots_;
};

/// Null space of a dense row-major system (rows x width) by Gauss-Jordan with partial pivoting.
/// Entries below tolerance * (row scale) count as zero.
inline std::vector<std::vector<Scalar>> null_space(std::vector<std::vector<Scalar>> rows, int width,
                                                   const Real& tolerance) {
  std::vector<int> pivot_col;
  std::vector<std::vector<Scalar>> basis_rows;
  for (auto& v : rows) {
    Real scale = 0;
    for (const auto& x : v) {
      Real a = abs(x);
      if (a > scale) scale = a;
    }
    if (scale == 0) continue;
    for (std::size_t r = 0; r < basis_rows.size(); ++r) {
      const int p = pivot_col[r];
      if (v[p].is_exact_zero()) continue;
      Scalar f = v[p];
      for (int j = 0; j < width; ++j)
        if (!basis_rows[r][j].is_exact_zero()) v[j] -= f * basis_rows[r][j];
      v[p] = Scalar(0);
    }
    int best = -1;
    Real best_mag = 0;
    for (int j = 0; j < width; ++j) {
      Real a = abs(v[j]);
      if (a > best_mag) {
        best_mag = a;
        best = j;
      }
    }
    if (best < 0 || best_mag <= tolerance * scale) continue;
    Scalar inv = Scalar(1) / v[best];
    for (auto& x : v) {
      if (abs(x) <= tolerance * scale)
        x = Scalar(0);
      else
        x = x * inv;
    }
    v[best] = Scalar(1);
    // Keep reduced form: clear the new pivot column from earlier rows.
    for (auto& other : basis_rows) {
      if (other[best].is_exact_zero()) continue;
      Scalar f = other[best];
      for (int j = 0; j < width; ++j)
        if (!v[j].is_exact_zero()) other[j] -= f * v[j];
      other[best] = Scalar(0);
    }
    basis_rows.push_back(std::move(v));
    pivot_col.push_back(best);
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(width), 0);
  for (int p : pivot_col) is_pivot[p] = 1;
  std::vector<std::vector<Scalar>> kernel;
  for (int free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> k(static_cast<std::size_t>(width));
    k[free] = Scalar(1);
    for (std::size_t r = 0; r < basis_rows.size(); ++r) k[pivot_col[r]] = -basis_rows[r][free];
    kernel.push_back(std::move(k));
  }
  return kernel;
}

}  // namespace hcsa
