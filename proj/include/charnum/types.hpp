#ifndef CHARNUM_TYPES_HPP
#define CHARNUM_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "charnum/errors.hpp"

namespace charnum {

/// Exponent vector (b_1, ..., b_{m-1}) selecting how many general hyperplanes
/// to pull back from each minor factor.
using CharIndex = std::vector<int>;

inline long index_sum(const CharIndex& b) {
  long s = 0;
  for (int x : b) {
    if (x < 0) throw InputError("characteristic index entries must be nonnegative");
    s += x;
  }
  return s;
}

/// A computed characteristic number with its provenance.
struct CharValue {
  enum class Method { Engine, ClosedForm, Recursion };

  mpz_class value{0};
  Method method = Method::Engine;
  std::vector<std::uint32_t> primes;  // primes whose runs produced the value
  bool agreement = false;             // >= 2 independent runs matched
  bool truncated = false;             // formally zero under the low-rank rule

  std::string method_name() const {
    switch (method) {
      case Method::Engine: return "engine";
      case Method::ClosedForm: return "closed-form";
      case Method::Recursion: return "recursion";
    }
    return "?";
  }
};

/// The characteristic sequence mu_0..mu_d (indices (d-i, 0, ..., 0, i)).
struct CharSequence {
  std::vector<CharValue> values;

  std::size_t size() const { return values.size(); }

  std::vector<mpz_class> numbers() const {
    std::vector<mpz_class> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.value);
    return out;
  }

  bool symmetric() const {
    const auto n = values.size();
    for (std::size_t i = 0; i < n / 2; ++i)
      if (values[i].value != values[n - 1 - i].value) return false;
    return true;
  }

  bool log_concave() const {
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
      if (values[i].value * values[i].value <
          values[i - 1].value * values[i + 1].value)
        return false;
    return true;
  }

  bool nonnegative() const {
    for (const auto& v : values)
      if (v.value < 0) return false;
    return true;
  }
};

/// Every characteristic number of a pencil, plus the multinomial-weighted
/// polynomial coefficients of the degree form.
struct MultidegreeTable {
  int d = 0;          // common index sum
  int positions = 0;  // index length (pencil size minus one)
  std::vector<std::pair<CharIndex, CharValue>> values;  // colexicographic

  const CharValue& at(const CharIndex& b) const {
    for (const auto& [index, v] : values)
      if (index == b) return v;
    throw InputError("index missing from multidegree table");
  }
};

}  // namespace charnum

#endif
