#ifndef CHARNUM_POLYNOMIAL_HPP
#define CHARNUM_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "charnum/errors.hpp"
#include "charnum/monomial.hpp"
#include "charnum/prime_field.hpp"
#include "charnum/rng.hpp"

namespace charnum {

/// A polynomial ring: coefficient field, named variables, monomial order.
/// Polynomials hold a shared pointer to their ring; operations require both
/// operands to live in the same ring.
template <class F>
struct PolyRing {
  F field;
  std::vector<std::string> vars;
  MonomialOrder order;

  PolyRing(F f, std::vector<std::string> v, MonomialOrder o = MonomialOrder::degrevlex())
      : field(std::move(f)), vars(std::move(v)), order(o) {
    if (int(vars.size()) > Monomial::kMaxVars)
      throw InputError("too many variables (max " + std::to_string(Monomial::kMaxVars) + ")");
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j)
        if (vars[i] == vars[j]) throw InputError("duplicate variable name: " + vars[i]);
  }

  int nvars() const { return int(vars.size()); }

  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return int(i);
    return -1;
  }

  bool same_as(const PolyRing& o) const {
    return field == o.field && vars == o.vars && order == o.order;
  }
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> vars,
                     MonomialOrder order = MonomialOrder::degrevlex()) {
  return std::make_shared<const PolyRing<F>>(std::move(field), std::move(vars), order);
}

template <class F>
class Polynomial {
public:
  using Coeff = typename F::Element;

  struct Term {
    Monomial mono;
    Coeff coeff;
  };

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr<F> ring) { return Polynomial(std::move(ring)); }

  static Polynomial constant(RingPtr<F> ring, Coeff c) {
    Polynomial p(ring);
    if (!ring->field.is_zero(c)) p.terms_.push_back({Monomial(ring->nvars()), c});
    return p;
  }

  static Polynomial variable(RingPtr<F> ring, int i, unsigned e = 1) {
    if (e == 0) return constant(ring, ring->field.one());
    Polynomial p(ring);
    p.terms_.push_back({Monomial::variable(ring->nvars(), i, e), ring->field.one()});
    return p;
  }

  static Polynomial from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const Term& leading_term() const {
    if (terms_.empty()) throw InputError("zero polynomial has no leading term");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading_term().mono; }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool is_homogeneous_of_degree(unsigned d) const {
    for (const auto& t : terms_)
      if (t.mono.degree() != d) return false;
    return true;
  }

  Polynomial operator+(const Polynomial& o) const { return merged(o, false); }
  Polynomial operator-(const Polynomial& o) const { return merged(o, true); }

  Polynomial operator-() const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, ring_->field.neg(t.coeff)});
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_ring(o);
    Polynomial r(ring_);
    if (is_zero() || o.is_zero()) return r;
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        acc.push_back({a.mono * b.mono, ring_->field.mul(a.coeff, b.coeff)});
    r.terms_ = std::move(acc);
    r.normalize();
    return r;
  }

  Polynomial scaled(const Coeff& c) const {
    Polynomial r(ring_);
    if (ring_->field.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, ring_->field.mul(t.coeff, c)});
    return r;
  }

  /// this * c * m, fused; the building block of polynomial reduction.
  Polynomial scaled_shifted(const Coeff& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (ring_->field.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, ring_->field.mul(t.coeff, c)});
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field.inv(terms_.front().coeff));
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].mono != o.terms_[i].mono) return false;
      if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
    }
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Coeff evaluate(const std::vector<Coeff>& point) const {
    const F& k = ring_->field;
    if (int(point.size()) != ring_->nvars()) throw InputError("evaluation point has wrong arity");
    Coeff acc = k.zero();
    for (const auto& t : terms_) {
      Coeff v = t.coeff;
      for (int i = 0; i < ring_->nvars(); ++i) {
        std::uint16_t e = t.mono.exponent(i);
        if (e) v = k.mul(v, pow_elem(k, point[std::size_t(i)], e));
      }
      acc = k.add(acc, v);
    }
    return acc;
  }

  /// Substitute each variable x_i of this ring by images[i], a polynomial in
  /// the target ring (not necessarily the same ring; this is the restriction
  /// map used for generic hyperplane slicing and for affine charts).
  Polynomial substitute(const RingPtr<F>& target, const std::vector<Polynomial>& images) const {
    if (int(images.size()) != ring_->nvars())
      throw InputError("substitution needs one image per variable");
    for (const auto& g : images)
      if (g.ring() != target && !g.ring()->same_as(*target))
        throw InputError("substitution images live in the wrong ring");
    const F& k = ring_->field;
    Polynomial acc = zero(target);
    // power cache per variable, filled on demand
    std::vector<std::vector<Polynomial>> powers(images.size());
    for (const auto& t : terms_) {
      Polynomial prod = constant(target, t.coeff);
      for (int i = 0; i < ring_->nvars() && !prod.is_zero(); ++i) {
        std::uint16_t e = t.mono.exponent(i);
        if (!e) continue;
        auto& cache = powers[std::size_t(i)];
        if (cache.empty()) cache.push_back(constant(target, k.one()));
        while (cache.size() <= e) cache.push_back(cache.back() * images[std::size_t(i)]);
        prod = prod * cache[e];
      }
      acc = acc + prod;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += " + ";
      out += term_string(terms_[i]);
    }
    return out;
  }

private:
  RingPtr<F> ring_;
  std::vector<Term> terms_;

  void check_ring(const Polynomial& o) const {
    if (ring_ == o.ring_) return;
    if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
      throw InputError("operands live in different polynomial rings");
  }

  static Coeff pow_elem(const F& k, Coeff base, unsigned e) {
    Coeff r = k.one();
    while (e) {
      if (e & 1) r = k.mul(r, base);
      base = k.mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Polynomial merged(const Polynomial& o, bool subtract) const {
    check_ring(o);
    const F& k = ring_->field;
    const MonomialOrder& ord = ring_->order;
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = ord.compare(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        Coeff v = subtract ? k.neg(o.terms_[j].coeff) : o.terms_[j].coeff;
        r.terms_.push_back({o.terms_[j].mono, v});
        ++j;
      } else {
        Coeff v = subtract ? k.sub(terms_[i].coeff, o.terms_[j].coeff)
                           : k.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!k.is_zero(v)) r.terms_.push_back({terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) {
      Coeff v = subtract ? k.neg(o.terms_[j].coeff) : o.terms_[j].coeff;
      r.terms_.push_back({o.terms_[j].mono, v});
    }
    return r;
  }

  void normalize() {
    const F& k = ring_->field;
    const MonomialOrder& ord = ring_->order;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = k.add(out.back().coeff, t.coeff);
      } else {
        out.push_back(std::move(t));
      }
    }
    terms_.clear();
    for (auto& t : out)
      if (!k.is_zero(t.coeff)) terms_.push_back(std::move(t));
  }

  std::string term_string(const Term& t) const {
    std::string mono_part;
    for (int i = 0; i < ring_->nvars(); ++i) {
      std::uint16_t e = t.mono.exponent(i);
      if (!e) continue;
      if (!mono_part.empty()) mono_part += "*";
      mono_part += ring_->vars[std::size_t(i)];
      if (e > 1) mono_part += "^" + std::to_string(e);
    }
    std::string c = ring_->field.to_string(t.coeff);
    if (mono_part.empty()) return c;
    if (ring_->field.is_one(t.coeff)) return mono_part;
    return c + "*" + mono_part;
  }
};

// ---------------------------------------------------------------------------
// Parsing. Grammar: identifiers, nonnegative integer literals, + - * ^ and
// parentheses; implicit multiplication is rejected; whitespace ignored.
// ---------------------------------------------------------------------------

template <class F>
class PolynomialParser {
public:
  PolynomialParser(RingPtr<F> ring, std::string text)
      : ring_(std::move(ring)), text_(std::move(text)) {}

  Polynomial<F> parse() {
    Polynomial<F> p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return p;
  }

private:
  RingPtr<F> ring_;
  std::string text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial<F> parse_expr() {
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = (c == '-');
      ++pos_;
    }
    Polynomial<F> acc = parse_product();
    if (negate) acc = -acc;
    for (;;) {
      c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Polynomial<F> rhs = parse_product();
        acc = (c == '+') ? acc + rhs : acc - rhs;
      } else {
        return acc;
      }
    }
  }

  Polynomial<F> parse_product() {
    Polynomial<F> acc = parse_power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_power();
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_') {
        throw ParseError("implicit multiplication is not allowed", pos_);
      } else {
        return acc;
      }
    }
  }

  Polynomial<F> parse_power() {
    Polynomial<F> base = parse_atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      unsigned long long e = parse_uint();
      if (e > Monomial::kMaxExponent) throw ParseError("exponent overflows 16 bits", at);
      Polynomial<F> r = Polynomial<F>::constant(ring_, ring_->field.one());
      Polynomial<F> b = base;
      unsigned long long k = e;
      while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
      }
      return r;
    }
    return base;
  }

  Polynomial<F> parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial<F> inner = parse_expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = parse_integer();
      return Polynomial<F>::constant(ring_, ring_->field.from_mpz(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      int idx = ring_->var_index(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", at);
      return Polynomial<F>::variable(ring_, idx);
    }
    throw ParseError("expected a term", pos_);
  }

  unsigned long long parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected a nonnegative integer", pos_);
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (unsigned long long)(text_[pos_] - '0');
      if (v > (1ull << 48)) throw ParseError("integer literal too large", pos_);
      ++pos_;
    }
    return v;
  }

  mpz_class parse_integer() {
    skip_ws();
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (digits.empty()) throw ParseError("expected a nonnegative integer", pos_);
    return mpz_class(digits);
  }
};

template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, const std::string& text) {
  return PolynomialParser<F>(ring, text).parse();
}

/// Random field combination of a list of polynomials over the same ring.
/// Coefficients are drawn uniformly and reported back through `lambdas` so a
/// run can be replayed; a zero result is redrawn (only relevant when the
/// inputs are dependent or the list is a singleton hitting lambda = 0).
template <class F>
Polynomial<F> random_combination(const std::vector<Polynomial<F>>& forms, Rng& rng,
                                 std::vector<typename F::Element>* lambdas = nullptr) {
  if (forms.empty()) throw InputError("random_combination of an empty list");
  const RingPtr<F>& ring = forms.front().ring();
  const F& k = ring->field;
  for (const auto& f : forms)
    if (f.ring() != ring && !f.ring()->same_as(*ring))
      throw InputError("random_combination inputs live in different rings");
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<typename F::Element> coeffs;
    coeffs.reserve(forms.size());
    Polynomial<F> acc = Polynomial<F>::zero(ring);
    for (const auto& f : forms) {
      typename F::Element c = k.random(rng);
      coeffs.push_back(c);
      acc = acc + f.scaled(c);
    }
    if (!acc.is_zero()) {
      if (lambdas) *lambdas = std::move(coeffs);
      return acc;
    }
  }
  throw InputError("random_combination kept drawing zero (are all inputs zero?)");
}

}  // namespace charnum

#endif
