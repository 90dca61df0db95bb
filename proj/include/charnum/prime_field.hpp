#ifndef CHARNUM_PRIME_FIELD_HPP
#define CHARNUM_PRIME_FIELD_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "charnum/errors.hpp"
#include "charnum/rng.hpp"

namespace charnum {

/// Arithmetic in Z/p for a prime 2^20 < p < 2^31. Elements are the least
/// nonnegative residues; products stay inside 64 bits.
class PrimeField {
public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kMinModulus = (1u << 20) + 1;
  static constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p <= (1u << 20) || p > kMaxModulus)
      throw InputError("prime field modulus out of range: " + std::to_string(p));
    if (!is_prime(p)) throw InputError("modulus is not prime: " + std::to_string(p));
  }

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  Element add(Element a, Element b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return Element(s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : Element(a + p_ - b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return Element((std::uint64_t(a) * b) % p_); }

  Element inv(Element a) const {
    if (a == 0) throw InputError("division by zero in prime field");
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t; new_t = tmp;
      tmp = r - q * new_r;
      r = new_r; new_r = tmp;
    }
    if (t < 0) t += p_;
    return Element(t);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, std::uint64_t e) const {
    Element r = 1, base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Element from_int(long long v) const {
    long long m = v % (long long)p_;
    if (m < 0) m += p_;
    return Element(m);
  }

  Element from_mpz(const mpz_class& v) const {
    mpz_class m = v % p_;
    if (m < 0) m += p_;
    return Element(m.get_ui());
  }

  Element random(Rng& rng) const { return Element(rng.below(p_)); }

  Element random_nonzero(Rng& rng) const { return Element(1 + rng.below(p_ - 1)); }

  std::string to_string(Element a) const { return std::to_string(a); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

  /// Deterministic Miller-Rabin. Bases {2,3,5,7} decide primality for every
  /// n < 3,215,031,751, which covers the full 32-bit modulus range.
  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
      if (n == q) return true;
      if (n % q == 0) return false;
    }
    std::uint32_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
      std::uint64_t x = 1, base = a % n, e = d;
      while (e) {
        if (e & 1) x = (x * base) % n;
        base = (base * base) % n;
        e >>= 1;
      }
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (int i = 0; i < s - 1; ++i) {
        x = (x * x) % n;
        if (x == n - 1) { composite = false; break; }
      }
      if (composite) return false;
    }
    return true;
  }

  /// Uniform random prime in (2^30, 2^31).
  static std::uint32_t random_prime(Rng& rng) {
    for (;;) {
      std::uint32_t c = (1u << 30) | std::uint32_t(rng.below(1u << 30));
      c |= 1;
      if (is_prime(c)) return c;
    }
  }

private:
  std::uint32_t p_;
};

/// Exact rational arithmetic with the same interface as PrimeField, used
/// where modular images are not enough (the relation linear solve).
class RationalField {
public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  bool is_zero(const Element& a) const { return a == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw InputError("division by zero in rational field");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return a / inv_guard(b); }

  Element from_int(long long v) const { return Element((long)v); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }

  Element random(Rng& rng) const { return Element((long)(rng.below(1000)) - 500L); }
  Element random_nonzero(Rng& rng) const { return Element((long)(1 + rng.below(999))); }

  std::string to_string(const Element& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
  bool operator!=(const RationalField&) const { return false; }

private:
  static const Element& inv_guard(const Element& b) {
    if (b == 0) throw InputError("division by zero in rational field");
    return b;
  }
};

}  // namespace charnum

#endif
