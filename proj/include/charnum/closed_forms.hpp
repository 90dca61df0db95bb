#ifndef CHARNUM_CLOSED_FORMS_HPP
#define CHARNUM_CLOSED_FORMS_HPP

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "charnum/combinat.hpp"
#include "charnum/errors.hpp"
#include "charnum/rational_solve.hpp"

namespace charnum {

/// Mixed Eulerian numbers e_{a_1..a_n}, computed once per n by solving the
/// defining relation system exactly over the rationals:
///   e_{1,...,1} = n!
///   2e_a = e_{..,a_{k-1}+1,a_k-1,..} + e_{..,a_k-1,a_{k+1}+1,..}   (1<k<n, a_k>=2)
///   2e_a = e_{a_1-1,a_2+1,..}                                      (a_1>=2)
///   2e_a = e_{..,a_{n-1}+1,a_n-1}                                  (a_n>=2)
/// The relations are assembled as one sparse linear system and solved without
/// any rewriting strategy; a singular or inconsistent system, or a
/// non-integer solution, is a fatal error.
class MixedEulerian {
public:
  static constexpr int kMaxN = 9;

  /// Full table for compositions of n into n parts, aligned with
  /// weak_compositions(n, n).
  static const std::vector<mpz_class>& table(int n) {
    if (n < 1 || n > kMaxN)
      throw InputError("mixed Eulerian table supports 1 <= n <= " + std::to_string(kMaxN));
    static std::mutex mu;
    static std::map<int, std::vector<mpz_class>> memo;
    std::scoped_lock lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    memo[n] = compute(n);
    return memo[n];
  }

  static mpz_class value(const std::vector<int>& a) {
    const int n = int(a.size());
    long sum = 0;
    for (int x : a) {
      if (x < 0) throw InputError("mixed Eulerian index must be nonnegative");
      sum += x;
    }
    if (sum != n) throw InputError("mixed Eulerian index must sum to its length");
    const auto& tab = table(n);
    return tab[position(a, n, n)];
  }

  /// Position of a composition inside weak_compositions(total, parts).
  static std::size_t position(const std::vector<int>& a, int total, int parts) {
    // colexicographic rank: count compositions preceding a
    std::size_t rank = 0;
    int remaining = total;
    for (int pos = parts - 1; pos >= 1; --pos) {
      for (int smaller = 0; smaller < a[std::size_t(pos)]; ++smaller)
        rank += count(remaining - smaller, pos);
      remaining -= a[std::size_t(pos)];
    }
    return rank;
  }

private:
  static std::size_t count(int total, int parts) {
    // weak compositions of total into parts
    if (total < 0) return 0;
    mpz_class c = binomial(static_cast<unsigned long>(total + parts - 1),
                           static_cast<unsigned long>(parts - 1));
    return c.get_ui();
  }

  static std::vector<mpz_class> compute(int n) {
    auto comps = weak_compositions(n, n);
    const int N = int(comps.size());
    std::vector<SparseRow> rows;

    std::vector<int> ones(std::size_t(n), 1);
    SparseRow norm;
    norm.terms.push_back({int(position(ones, n, n)), mpq_class(1)});
    norm.rhs = mpq_class(factorial(static_cast<unsigned long>(n)));
    rows.push_back(std::move(norm));

    for (int idx = 0; idx < N; ++idx) {
      const auto& a = comps[std::size_t(idx)];
      for (int k = 0; k < n; ++k) {
        if (a[std::size_t(k)] < 2) continue;
        SparseRow row;
        row.terms.push_back({idx, mpq_class(2)});
        auto moved = [&](int from, int to) {
          std::vector<int> b = a;
          b[std::size_t(from)] -= 1;
          b[std::size_t(to)] += 1;
          return int(position(b, n, n));
        };
        if (k == 0) {
          if (n == 1) continue;  // no relation in the single-variable case
          row.terms.push_back({moved(0, 1), mpq_class(-1)});
        } else if (k == n - 1) {
          row.terms.push_back({moved(n - 1, n - 2), mpq_class(-1)});
        } else {
          row.terms.push_back({moved(k, k - 1), mpq_class(-1)});
          row.terms.push_back({moved(k, k + 1), mpq_class(-1)});
        }
        row.rhs = 0;
        rows.push_back(std::move(row));
      }
    }

    SparseRationalSolver solver(N, std::move(rows));
    std::vector<mpq_class> sol = solver.solve();
    std::vector<mpz_class> out;
    out.reserve(sol.size());
    for (const auto& q : sol) {
      if (q.get_den() != 1)
        throw DisagreementError("mixed Eulerian solution is not an integer");
      out.push_back(q.get_num());
    }
    return out;
  }
};

inline mpz_class mixed_eulerian(const std::vector<int>& a) { return MixedEulerian::value(a); }

/// Characteristic sequence of a dimension-d algebra on the binomial pattern:
/// (binom(d-1, 0), ..., binom(d-1, d-1)).
inline std::vector<mpz_class> binomial_sequence(int d) {
  if (d < 1) throw InputError("binomial_sequence needs d >= 1");
  std::vector<mpz_class> out;
  for (int i = 0; i < d; ++i)
    out.push_back(binomial(static_cast<unsigned long>(d - 1), static_cast<unsigned long>(i)));
  return out;
}

/// Closed form for the characteristic numbers of cw(n) (algebra dimension
/// n+1): a power of two depending on how the index meets the two extreme
/// positions.
inline mpz_class cw_closed_form(int n, const std::vector<int>& a) {
  if (n < 2) throw InputError("cw_closed_form needs n >= 2");
  if (int(a.size()) != n) throw InputError("cw index needs exactly n entries");
  long sum = 0, mid = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw InputError("cw index must be nonnegative");
    sum += a[i];
    if (i > 0 && i + 1 < a.size()) mid += a[i];
  }
  if (sum != n) throw InputError("cw index must sum to n");
  const bool first = a.front() > 0, last = a.back() > 0;
  if (!first && !last) return pow2(static_cast<unsigned long>(mid - 1));
  if (first && last) return pow2(static_cast<unsigned long>(mid + 1));
  return pow2(static_cast<unsigned long>(mid));
}

/// Closed form for the trivial algebra with m nilpotent generators (algebra
/// dimension m+1): 2^(a_2) when a_1 > 0 and a_3 = ... = a_m = 0, else 0.
inline mpz_class trivial_closed_form(int m, const std::vector<int>& a) {
  if (m < 1) throw InputError("trivial_closed_form needs m >= 1");
  if (int(a.size()) != m) throw InputError("trivial index needs exactly m entries");
  long sum = 0;
  for (int x : a) {
    if (x < 0) throw InputError("trivial index must be nonnegative");
    sum += x;
  }
  if (sum != m) throw InputError("trivial index must sum to m");
  if (a[0] <= 0) return 0;
  for (std::size_t i = 2; i < a.size(); ++i)
    if (a[i] != 0) return 0;
  return pow2(m >= 2 ? static_cast<unsigned long>(a[1]) : 0ul);
}

struct BoundViolation {
  std::vector<int> index;
  mpz_class value;
  mpz_class bound;
};

enum class BoundKind { SmoothUpper, CwLower };

struct BoundReport {
  BoundKind kind;
  std::size_t compared = 0;
  std::size_t equalities = 0;
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Compare a complete multidegree table against the smooth upper bound
/// (mixed Eulerian numbers) or the cw lower bound. The table must cover
/// indices of length n summing to n.
inline BoundReport bound_report(const std::vector<std::pair<std::vector<int>, mpz_class>>& values,
                                BoundKind kind) {
  BoundReport report;
  report.kind = kind;
  for (const auto& [index, value] : values) {
    const int n = int(index.size());
    mpz_class bound = (kind == BoundKind::SmoothUpper) ? mixed_eulerian(index)
                                                       : cw_closed_form(n, index);
    ++report.compared;
    if (value == bound) ++report.equalities;
    const bool bad = (kind == BoundKind::SmoothUpper) ? (value > bound) : (value < bound);
    if (bad) report.violations.push_back({index, value, bound});
  }
  return report;
}

}  // namespace charnum

#endif
