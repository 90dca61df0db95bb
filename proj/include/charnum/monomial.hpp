#ifndef CHARNUM_MONOMIAL_HPP
#define CHARNUM_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <string>

#include "charnum/errors.hpp"

namespace charnum {

/// Exponent vector over a fixed variable list. Exponents are 16-bit by
/// contract; any overflow is a hard error, never a silent wrap.
class Monomial {
public:
  static constexpr int kMaxVars = 16;
  static constexpr unsigned kMaxExponent = 0xffffu;

  Monomial() : n_(0), deg_(0) { e_.fill(0); }

  explicit Monomial(int nvars) : n_(nvars), deg_(0) {
    if (nvars < 0 || nvars > kMaxVars) throw InputError("variable count out of range");
    e_.fill(0);
  }

  static Monomial variable(int nvars, int i, unsigned e = 1) {
    Monomial m(nvars);
    m.set_exponent(i, e);
    return m;
  }

  int nvars() const { return n_; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  std::uint16_t exponent(int i) const { return e_[std::size_t(i)]; }

  void set_exponent(int i, unsigned e) {
    if (i < 0 || i >= n_) throw InputError("variable index out of range");
    if (e > kMaxExponent) throw InputError("monomial exponent overflows 16 bits");
    deg_ = deg_ - e_[std::size_t(i)] + e;
    e_[std::size_t(i)] = std::uint16_t(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(n_);
    for (int i = 0; i < n_; ++i) {
      unsigned s = unsigned(e_[std::size_t(i)]) + o.e_[std::size_t(i)];
      if (s > kMaxExponent) throw InputError("monomial exponent overflows 16 bits");
      r.e_[std::size_t(i)] = std::uint16_t(s);
    }
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (int i = 0; i < n_; ++i)
      if (e_[std::size_t(i)] > o.e_[std::size_t(i)]) return false;
    return true;
  }

  /// Quotient this / o; caller guarantees divisibility.
  Monomial divided_by(const Monomial& o) const {
    Monomial r(n_);
    for (int i = 0; i < n_; ++i)
      r.e_[std::size_t(i)] = std::uint16_t(e_[std::size_t(i)] - o.e_[std::size_t(i)]);
    r.deg_ = deg_ - o.deg_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.n_);
    unsigned d = 0;
    for (int i = 0; i < a.n_; ++i) {
      std::uint16_t m = a.e_[std::size_t(i)] > b.e_[std::size_t(i)] ? a.e_[std::size_t(i)]
                                                                    : b.e_[std::size_t(i)];
      r.e_[std::size_t(i)] = m;
      d += m;
    }
    r.deg_ = d;
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < a.n_; ++i)
      if (a.e_[std::size_t(i)] && b.e_[std::size_t(i)]) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return n_ == o.n_ && deg_ == o.deg_ && e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (int i = 0; i < n_; ++i) {
      h ^= e_[std::size_t(i)];
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  std::array<std::uint16_t, kMaxVars> e_;
  std::int8_t n_;
  std::uint32_t deg_;
};

enum class OrderKind { Degrevlex, Block };

/// Monomial order: plain degrevlex (first listed variable is largest), or a
/// block elimination order that compares the front block of variables first
/// and falls back to degrevlex on the remaining block.
struct MonomialOrder {
  OrderKind kind = OrderKind::Degrevlex;
  int front_block = 0;

  static MonomialOrder degrevlex() { return {OrderKind::Degrevlex, 0}; }
  static MonomialOrder block(int front) { return {OrderKind::Block, front}; }

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && (kind == OrderKind::Degrevlex || front_block == o.front_block);
  }

  /// Three-way comparison: negative if a < b, zero if equal, positive if a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    if (kind == OrderKind::Degrevlex) return cmp_range(a, b, 0, a.nvars());
    int c = cmp_range(a, b, 0, front_block);
    if (c) return c;
    return cmp_range(a, b, front_block, a.nvars());
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

private:
  // degrevlex restricted to variables [lo, hi): degree first, then the
  // rightmost differing exponent decides, smaller exponent winning.
  static int cmp_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    unsigned da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += a.exponent(i);
      db += b.exponent(i);
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
      std::uint16_t ea = a.exponent(i), eb = b.exponent(i);
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }
};

}  // namespace charnum

#endif
