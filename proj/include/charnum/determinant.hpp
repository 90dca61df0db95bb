#ifndef CHARNUM_DETERMINANT_HPP
#define CHARNUM_DETERMINANT_HPP

#include <cstdint>
#include <vector>

#include "charnum/errors.hpp"
#include "charnum/polynomial.hpp"

namespace charnum {

/// Exact determinant of a square matrix of polynomials, by cofactor expansion
/// over column subsets with memoization (division-free). The subset table has
/// 2^size entries, so the size is capped at 12.
template <class F>
Polynomial<F> symbolic_determinant(const std::vector<std::vector<Polynomial<F>>>& mat) {
  const std::size_t n = mat.size();
  if (n == 0) throw InputError("symbolic_determinant of an empty matrix");
  if (n > 12) throw InputError("symbolic_determinant size capped at 12");
  for (const auto& row : mat)
    if (row.size() != n) throw InputError("symbolic_determinant needs a square matrix");

  RingPtr<F> ring = mat[0][0].ring();
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);

  // minor(mask) = det of the submatrix on rows 0..popcount(mask)-1 and the
  // columns in mask, filled bottom-up by subset size.
  std::vector<Polynomial<F>> minor(std::size_t(full) + 1);
  std::vector<bool> known(std::size_t(full) + 1, false);
  minor[0] = Polynomial<F>::constant(ring, ring->field.one());
  known[0] = true;

  std::vector<std::uint32_t> frontier = {0};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask : frontier) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t bit = 1u << j;
        if (mask & bit) continue;
        const std::uint32_t m2 = mask | bit;
        if (known[m2]) continue;
        // expand along row |m2|-1 over the columns of m2; the cofactor sign
        // is (-1)^(row + column position within the subset)
        Polynomial<F> acc = Polynomial<F>::zero(ring);
        int pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
          const std::uint32_t cb = 1u << c;
          if (!(m2 & cb)) continue;
          const Polynomial<F>& entry = mat[std::size_t(r)][c];
          if (!entry.is_zero()) {
            Polynomial<F> contrib = entry * minor[m2 ^ cb];
            acc = ((int(r) + pos) % 2 == 0) ? acc + contrib : acc - contrib;
          }
          ++pos;
        }
        minor[m2] = std::move(acc);
        known[m2] = true;
        next.push_back(m2);
      }
    }
    frontier = std::move(next);
  }
  return minor[full];
}

}  // namespace charnum

#endif
