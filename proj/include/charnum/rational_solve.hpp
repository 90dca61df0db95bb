#ifndef CHARNUM_RATIONAL_SOLVE_HPP
#define CHARNUM_RATIONAL_SOLVE_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "charnum/errors.hpp"

namespace charnum {

/// One equation: sparse coefficient list (column, value) plus right-hand side.
struct SparseRow {
  std::vector<std::pair<int, mpq_class>> terms;
  mpq_class rhs;
};

/// Exact solver for a consistent (possibly overdetermined) sparse linear
/// system over the rationals. Gauss-Jordan with a fewest-nonzeros pivot
/// heuristic. Throws on a singular or inconsistent system.
class SparseRationalSolver {
public:
  SparseRationalSolver(int ncols, std::vector<SparseRow> rows)
      : ncols_(ncols), rows_(std::move(rows)) {
    for (auto& r : rows_) tidy(r);
  }

  std::vector<mpq_class> solve() {
    std::vector<int> pivot_row(std::size_t(ncols_), -1);
    std::vector<bool> used(rows_.size(), false);

    for (int col = 0; col < ncols_; ++col) {
      int best = -1;
      std::size_t best_size = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (used[r]) continue;
        if (coeff_of(rows_[r], col) == 0) continue;
        if (best < 0 || rows_[r].terms.size() < best_size) {
          best = int(r);
          best_size = rows_[r].terms.size();
        }
      }
      if (best < 0) throw DisagreementError("relation system is singular at column " +
                                            std::to_string(col));
      used[std::size_t(best)] = true;
      pivot_row[std::size_t(col)] = best;
      normalize(rows_[std::size_t(best)], col);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (int(r) == best) continue;
        mpq_class f = coeff_of(rows_[r], col);
        if (f == 0) continue;
        axpy(rows_[r], rows_[std::size_t(best)], -f);
      }
    }

    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!used[r] && (!rows_[r].terms.empty() || rows_[r].rhs != 0))
        throw DisagreementError("relation system is inconsistent");

    std::vector<mpq_class> x;
    x.resize(std::size_t(ncols_));
    for (int col = 0; col < ncols_; ++col) {
      const SparseRow& row = rows_[std::size_t(pivot_row[std::size_t(col)])];
      // after full elimination the pivot row is col = rhs
      x[std::size_t(col)] = row.rhs;
    }
    return x;
  }

private:
  int ncols_;
  std::vector<SparseRow> rows_;

  static void tidy(SparseRow& r) {
    std::sort(r.terms.begin(), r.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, mpq_class>> out;
    for (auto& t : r.terms) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(t);
    }
    r.terms.clear();
    for (auto& t : out)
      if (t.second != 0) r.terms.push_back(std::move(t));
  }

  static mpq_class coeff_of(const SparseRow& r, int col) {
    auto it = std::lower_bound(r.terms.begin(), r.terms.end(), col,
                               [](const auto& t, int c) { return t.first < c; });
    if (it != r.terms.end() && it->first == col) return it->second;
    return mpq_class(0);
  }

  static void normalize(SparseRow& r, int col) {
    mpq_class inv = 1 / coeff_of(r, col);
    for (auto& t : r.terms) t.second *= inv;
    r.rhs *= inv;
  }

  // r += f * p
  static void axpy(SparseRow& r, const SparseRow& p, const mpq_class& f) {
    std::vector<std::pair<int, mpq_class>> out;
    out.reserve(r.terms.size() + p.terms.size());
    std::size_t i = 0, j = 0;
    while (i < r.terms.size() && j < p.terms.size()) {
      if (r.terms[i].first < p.terms[j].first) {
        out.push_back(r.terms[i++]);
      } else if (r.terms[i].first > p.terms[j].first) {
        out.push_back({p.terms[j].first, f * p.terms[j].second});
        ++j;
      } else {
        mpq_class v = r.terms[i].second + f * p.terms[j].second;
        if (v != 0) out.push_back({r.terms[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    for (; i < r.terms.size(); ++i) out.push_back(r.terms[i]);
    for (; j < p.terms.size(); ++j) out.push_back({p.terms[j].first, f * p.terms[j].second});
    r.terms = std::move(out);
    r.rhs += f * p.rhs;
  }
};

}  // namespace charnum

#endif
