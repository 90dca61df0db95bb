#ifndef CHARNUM_LINALG_HPP
#define CHARNUM_LINALG_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "charnum/errors.hpp"
#include "charnum/prime_field.hpp"
#include "charnum/rng.hpp"

namespace charnum {

/// Dense matrix over a field, row-major. Small sizes only; everything here is
/// plain Gaussian elimination.
template <class F>
class Matrix {
public:
  using Elem = typename F::Element;

  Matrix(F field, int rows, int cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        a_(std::size_t(rows) * std::size_t(cols), field_.zero()) {}

  static Matrix identity(F field, int n) {
    Matrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const Elem& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  std::vector<Elem> row(int r) const {
    return std::vector<Elem>(a_.begin() + std::size_t(r) * cols_,
                             a_.begin() + std::size_t(r + 1) * cols_);
  }

  Matrix mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix dimension mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Elem& v = at(i, k);
        if (field_.is_zero(v)) continue;
        for (int j = 0; j < o.cols_; ++j)
          r.at(i, j) = field_.add(r.at(i, j), field_.mul(v, o.at(k, j)));
      }
    return r;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (int(v.size()) != cols_) throw InputError("matrix-vector dimension mismatch");
    std::vector<Elem> r(std::size_t(rows_), field_.zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        r[std::size_t(i)] = field_.add(r[std::size_t(i)], field_.mul(at(i, j), v[std::size_t(j)]));
    return r;
  }

  /// In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int sel = -1;
      for (int i = r; i < rows_; ++i)
        if (!field_.is_zero(at(i, c))) { sel = i; break; }
      if (sel < 0) continue;
      if (sel != r)
        for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
      Elem inv = field_.inv(at(r, c));
      for (int j = 0; j < cols_; ++j) at(r, j) = field_.mul(at(r, j), inv);
      for (int i = 0; i < rows_; ++i) {
        if (i == r || field_.is_zero(at(i, c))) continue;
        Elem f = at(i, c);
        for (int j = 0; j < cols_; ++j)
          at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Matrix copy = *this;
    return int(copy.rref().size());
  }

  /// Basis of the right kernel, one column vector per row of the result.
  std::vector<std::vector<Elem>> kernel_basis() const {
    Matrix copy = *this;
    std::vector<int> pivots = copy.rref();
    std::vector<bool> is_pivot(std::size_t(cols_), false);
    for (int c : pivots) is_pivot[std::size_t(c)] = true;
    std::vector<std::vector<Elem>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[std::size_t(free)]) continue;
      std::vector<Elem> v(std::size_t(cols_), field_.zero());
      v[std::size_t(free)] = field_.one();
      for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        v[std::size_t(pivots[pr])] = field_.neg(copy.at(int(pr), free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw InputError("only square matrices invert");
    Matrix aug(field_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = field_.one();
    }
    std::vector<int> pivots = aug.rref();
    if (int(pivots.size()) != rows_ || pivots[std::size_t(rows_ - 1)] >= cols_)
      throw InputError("matrix is singular");
    Matrix inv(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  static Matrix random_invertible(const F& field, int n, Rng& rng) {
    for (;;) {
      Matrix m(field, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = field.random(rng);
      if (m.is_invertible()) return m;
    }
  }

private:
  F field_;
  int rows_, cols_;
  std::vector<Elem> a_;
};

/// Row space of a set of vectors, kept in reduced echelon form. Supports the
/// subspace bookkeeping for filtrations, socles and span comparisons.
template <class F>
class RowSpace {
public:
  using Elem = typename F::Element;

  RowSpace(F field, int width) : field_(std::move(field)), width_(width) {}

  int width() const { return width_; }
  int dim() const { return int(rows_.size()); }
  const std::vector<std::vector<Elem>>& rows() const { return rows_; }

  /// Inserts a vector; returns true if it enlarged the space.
  bool insert(std::vector<Elem> v) {
    if (int(v.size()) != width_) throw InputError("row width mismatch");
    reduce(v);
    int lead = leading(v);
    if (lead < 0) return false;
    Elem inv = field_.inv(v[std::size_t(lead)]);
    for (auto& x : v) x = field_.mul(x, inv);
    // knock the new pivot out of the existing rows, keep rows sorted by pivot
    for (auto& r : rows_) {
      Elem f = r[std::size_t(lead)];
      if (field_.is_zero(f)) continue;
      for (int j = 0; j < width_; ++j)
        r[std::size_t(j)] = field_.sub(r[std::size_t(j)], field_.mul(f, v[std::size_t(j)]));
    }
    rows_.push_back(std::move(v));
    std::sort(rows_.begin(), rows_.end(), [this](const auto& a, const auto& b) {
      return leading_of(a) < leading_of(b);
    });
    pivots_.clear();
    for (const auto& r : rows_) pivots_.push_back(leading_of(r));
    return true;
  }

  bool contains(std::vector<Elem> v) const {
    reduce(v);
    return leading(v) < 0;
  }

  bool same_space(const RowSpace& o) const {
    if (dim() != o.dim()) return false;
    for (const auto& r : o.rows_)
      if (!contains(r)) return false;
    return true;
  }

private:
  F field_;
  int width_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<int> pivots_;

  int leading(const std::vector<Elem>& v) const { return leading_of(v); }

  int leading_of(const std::vector<Elem>& v) const {
    for (int j = 0; j < width_; ++j)
      if (!field_.is_zero(v[std::size_t(j)])) return j;
    return -1;
  }

  void reduce(std::vector<Elem>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int p = pivots_[i];
      Elem f = v[std::size_t(p)];
      if (field_.is_zero(f)) continue;
      const auto& r = rows_[i];
      for (int j = 0; j < width_; ++j)
        v[std::size_t(j)] = field_.sub(v[std::size_t(j)], field_.mul(f, r[std::size_t(j)]));
    }
  }
};

}  // namespace charnum

#endif
