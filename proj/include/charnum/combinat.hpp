#ifndef CHARNUM_COMBINAT_HPP
#define CHARNUM_COMBINAT_HPP

#include <vector>

#include <gmpxx.h>

#include "charnum/errors.hpp"

namespace charnum {

/// Weak compositions of `total` into `parts` nonnegative parts, in
/// colexicographic order: (total,0,...,0) first, (0,...,0,total) last.
inline std::vector<std::vector<int>> weak_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (total < 0 || parts < 0) throw InputError("weak_compositions of negative arguments");
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  if (parts == 1) {
    out.push_back({total});
    return out;
  }
  for (int last = 0; last <= total; ++last)
    for (auto pre : weak_compositions(total - last, parts - 1)) {
      pre.push_back(last);
      out.push_back(std::move(pre));
    }
  return out;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Multinomial coefficient (sum parts)! / prod parts!.
inline mpz_class multinomial(const std::vector<int>& parts) {
  long total = 0;
  for (int p : parts) {
    if (p < 0) throw InputError("multinomial of a negative part");
    total += p;
  }
  mpz_class r = factorial(static_cast<unsigned long>(total));
  for (int p : parts) r /= factorial(static_cast<unsigned long>(p));
  return r;
}

inline mpz_class pow2(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

}  // namespace charnum

#endif
