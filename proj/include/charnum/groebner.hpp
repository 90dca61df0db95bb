#ifndef CHARNUM_GROEBNER_HPP
#define CHARNUM_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "charnum/errors.hpp"
#include "charnum/polynomial.hpp"

namespace charnum {

/// Resource budget for one Groebner computation. Exceeding it raises
/// ResourceLimitError; there is no silent truncation.
struct Budget {
  std::uint64_t max_pair_reductions = 200'000;
  std::uint64_t max_monomial_ops = 10'000'000;
};

struct BudgetCounter {
  Budget budget;
  std::uint64_t pairs = 0;
  std::uint64_t ops = 0;

  void charge_pair() {
    if (++pairs > budget.max_pair_reductions)
      throw ResourceLimitError("pair reduction budget exceeded (" +
                               std::to_string(budget.max_pair_reductions) + ")");
  }
  void charge_ops(std::uint64_t n) {
    ops += n;
    if (ops > budget.max_monomial_ops)
      throw ResourceLimitError("monomial operation budget exceeded (" +
                               std::to_string(budget.max_monomial_ops) + ")");
  }
};

template <class F>
class Ideal {
public:
  Ideal(RingPtr<F> ring, std::vector<Polynomial<F>> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.ring() != ring_ && !g.ring()->same_as(*ring_))
        throw InputError("ideal generators live in different rings");
      gens_.push_back(std::move(g));
    }
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }

private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
};

// ---------------------------------------------------------------------------
// Division / normal form
// ---------------------------------------------------------------------------

/// Fully reduced remainder of f modulo the (monic) divisors: no term of the
/// result is divisible by any divisor's leading monomial.
template <class F>
Polynomial<F> reduce_modulo(const Polynomial<F>& f, const std::vector<Polynomial<F>>& divisors,
                            BudgetCounter* counter = nullptr) {
  const RingPtr<F>& ring = f.ring();
  Polynomial<F> work = f;
  Polynomial<F> remainder = Polynomial<F>::zero(ring);
  while (!work.is_zero()) {
    const auto& lt = work.leading_term();
    bool reduced = false;
    for (const auto& g : divisors) {
      if (!g.leading_monomial().divides(lt.mono)) continue;
      Monomial shift = lt.mono.divided_by(g.leading_monomial());
      // g is monic, so the cancelling multiple is lt.coeff * shift * g
      if (counter) counter->charge_ops(g.term_count() + work.term_count());
      work = work - g.scaled_shifted(lt.coeff, shift);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder = remainder + Polynomial<F>::from_terms(ring, {lt});
      work = work - Polynomial<F>::from_terms(ring, {lt});
      if (counter) counter->charge_ops(work.term_count() + 1);
    }
  }
  return remainder;
}

template <class F>
class GroebnerBasis {
public:
  GroebnerBasis(RingPtr<F> ring, std::vector<Polynomial<F>> basis)
      : ring_(std::move(ring)), basis_(std::move(basis)) {}

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& elements() const { return basis_; }

  bool contains_one() const {
    return basis_.size() == 1 && basis_[0].leading_monomial().is_one();
  }

  /// True iff every variable has a pure power among the leading terms (the
  /// quotient is a finite-dimensional vector space). The unit ideal counts as
  /// zero-dimensional with an empty quotient.
  bool is_zero_dimensional() const {
    if (contains_one()) return true;
    const int n = ring_->nvars();
    std::vector<bool> covered(std::size_t(n), false);
    for (const auto& g : basis_) {
      const Monomial& m = g.leading_monomial();
      int support = -1;
      for (int i = 0; i < n; ++i) {
        if (m.exponent(i) == 0) continue;
        if (support >= 0) { support = -2; break; }
        support = i;
      }
      if (support >= 0) covered[std::size_t(support)] = true;
    }
    for (bool c : covered)
      if (!c) return false;
    return true;
  }

  /// Monomials not divisible by any leading term; a vector space basis of the
  /// quotient ring. Requires zero-dimensionality.
  std::vector<Monomial> standard_monomials() const {
    if (!is_zero_dimensional())
      throw InputError("standard_monomials: ideal is not zero-dimensional");
    std::vector<Monomial> out;
    if (contains_one()) return out;
    const int n = ring_->nvars();
    // walk the staircase from 1: the standard set is closed under division
    auto exp_less = [n](const Monomial& a, const Monomial& b) {
      for (int i = 0; i < n; ++i)
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
      return false;
    };
    std::set<Monomial, decltype(exp_less)> seen(exp_less);
    std::vector<Monomial> queue;
    Monomial one(n);
    queue.push_back(one);
    seen.insert(one);
    while (!queue.empty()) {
      Monomial m = queue.back();
      queue.pop_back();
      out.push_back(m);
      for (int i = 0; i < n; ++i) {
        Monomial next = m * Monomial::variable(n, i);
        if (!seen.insert(next).second) continue;
        if (!divisible_by_lt(next)) queue.push_back(next);
      }
    }
    std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) {
      return ring_->order.compare(a, b) < 0;
    });
    return out;
  }

  std::size_t quotient_dimension() const { return standard_monomials().size(); }

  Polynomial<F> normal_form(const Polynomial<F>& f, BudgetCounter* counter = nullptr) const {
    if (f.ring() != ring_ && !f.ring()->same_as(*ring_))
      throw InputError("normal_form argument lives in a different ring");
    return reduce_modulo(f, basis_, counter);
  }

  bool divisible_by_lt(const Monomial& m) const {
    for (const auto& g : basis_)
      if (g.leading_monomial().divides(m)) return true;
    return false;
  }

private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> basis_;
};

// ---------------------------------------------------------------------------
// Buchberger with the Gebauer-Moeller pair update (Buchberger's first and
// second criteria) and normal selection (minimal lcm degree first).
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

template <class F>
struct PairQueueCmp {
  const MonomialOrder* order;
  bool operator()(const Pair<F>& a, const Pair<F>& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    int c = order->compare(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }
};

}  // namespace detail

template <class F>
GroebnerBasis<F> buchberger(const Ideal<F>& ideal, const Budget& budget = Budget{}) {
  using P = detail::Pair<F>;
  const RingPtr<F>& ring = ideal.ring();
  const F& k = ring->field;
  if (ideal.empty()) throw InputError("buchberger: ideal has no nonzero generators");

  BudgetCounter counter{budget};
  std::vector<Polynomial<F>> basis;
  std::set<P, detail::PairQueueCmp<F>> pairs(detail::PairQueueCmp<F>{&ring->order});

  auto add_poly = [&](Polynomial<F> h) {
    const std::size_t t = basis.size();
    const Monomial& lt_h = h.leading_monomial();

    // candidate new pairs (i, t), pruned by Gebauer-Moeller
    std::vector<P> cand;
    cand.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
      cand.push_back({i, t, Monomial::lcm(basis[i].leading_monomial(), lt_h)});

    std::vector<bool> drop(cand.size(), false);
    // criterion M: drop (i,t) when some lcm(j,t) strictly divides lcm(i,t)
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (std::size_t b = 0; b < cand.size() && !drop[a]; ++b) {
        if (a == b || drop[b]) continue;
        if (cand[b].lcm.divides(cand[a].lcm) && cand[b].lcm != cand[a].lcm) drop[a] = true;
      }
    // criterion F: among equal lcms keep one representative
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (std::size_t b = a + 1; b < cand.size(); ++b) {
        if (drop[a] || drop[b]) continue;
        if (cand[a].lcm == cand[b].lcm) drop[b] = true;
      }
    // criterion B (product criterion): coprime leading terms reduce to zero
    for (std::size_t a = 0; a < cand.size(); ++a)
      if (!drop[a] && Monomial::coprime(basis[cand[a].i].leading_monomial(), lt_h))
        drop[a] = true;

    // prune the old queue: (i,j) is redundant when lt_h divides its lcm and
    // both new lcms differ from it
    for (auto it = pairs.begin(); it != pairs.end();) {
      const P& pr = *it;
      if (lt_h.divides(pr.lcm) &&
          Monomial::lcm(basis[pr.i].leading_monomial(), lt_h) != pr.lcm &&
          Monomial::lcm(basis[pr.j].leading_monomial(), lt_h) != pr.lcm) {
        it = pairs.erase(it);
      } else {
        ++it;
      }
    }

    for (std::size_t a = 0; a < cand.size(); ++a)
      if (!drop[a]) pairs.insert(cand[a]);
    basis.push_back(std::move(h));
  };

  for (const auto& g : ideal.generators()) add_poly(g.monic());

  while (!pairs.empty()) {
    P pr = *pairs.begin();
    pairs.erase(pairs.begin());
    counter.charge_pair();
    const Polynomial<F>& f = basis[pr.i];
    const Polynomial<F>& g = basis[pr.j];
    Monomial mf = pr.lcm.divided_by(f.leading_monomial());
    Monomial mg = pr.lcm.divided_by(g.leading_monomial());
    counter.charge_ops(f.term_count() + g.term_count());
    Polynomial<F> s =
        f.scaled_shifted(k.one(), mf) - g.scaled_shifted(k.one(), mg);
    Polynomial<F> r = reduce_modulo(s, basis, &counter);
    if (!r.is_zero()) add_poly(r.monic());
  }

  // inter-reduce to the unique reduced basis
  std::vector<Polynomial<F>> reduced;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = basis[j].leading_monomial();
      const Monomial& b = basis[i].leading_monomial();
      if (a.divides(b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) reduced.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::vector<Polynomial<F>> others;
    others.reserve(reduced.size() - 1);
    for (std::size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    reduced[i] = reduce_modulo(reduced[i], others, &counter).monic();
  }
  std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
    return ring->order.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return GroebnerBasis<F>(ring, std::move(reduced));
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
  return gb.normal_form(f);
}

/// Quotient dimension of a zero-dimensional ideal: counts solutions with
/// scheme multiplicity.
template <class F>
std::size_t solution_count(const Ideal<F>& ideal, const Budget& budget = Budget{}) {
  GroebnerBasis<F> gb = buchberger(ideal, budget);
  if (!gb.is_zero_dimensional())
    throw InputError("solution_count: ideal is not zero-dimensional");
  return gb.quotient_dimension();
}

// ---------------------------------------------------------------------------
// Saturation by a single element: I : g^infinity via the Rabinowitsch trick
// (fresh variable t in a front elimination block, generators I + {t*g - 1},
// keep the t-free part of the basis).
// ---------------------------------------------------------------------------

template <class F>
Ideal<F> saturate_by_element(const Ideal<F>& ideal, const Polynomial<F>& g,
                             const Budget& budget = Budget{}) {
  if (g.is_zero()) throw InputError("saturation by zero");
  const RingPtr<F>& ring = ideal.ring();
  if (g.ring() != ring && !g.ring()->same_as(*ring))
    throw InputError("saturation element lives in a different ring");

  std::vector<std::string> ext_vars;
  ext_vars.reserve(ring->vars.size() + 1);
  ext_vars.push_back("t~sat");
  for (const auto& v : ring->vars) ext_vars.push_back(v);
  RingPtr<F> ext = make_ring(ring->field, ext_vars, MonomialOrder::block(1));

  auto lift = [&](const Polynomial<F>& p) {
    std::vector<typename Polynomial<F>::Term> terms;
    terms.reserve(p.term_count());
    for (const auto& t : p.terms()) {
      Monomial m(ext->nvars());
      for (int i = 0; i < ring->nvars(); ++i) m.set_exponent(i + 1, t.mono.exponent(i));
      terms.push_back({m, t.coeff});
    }
    return Polynomial<F>::from_terms(ext, std::move(terms));
  };

  std::vector<Polynomial<F>> gens;
  for (const auto& p : ideal.generators()) gens.push_back(lift(p));
  Polynomial<F> tg = Polynomial<F>::variable(ext, 0) * lift(g);
  gens.push_back(tg - Polynomial<F>::constant(ext, ring->field.one()));

  GroebnerBasis<F> gb = buchberger(Ideal<F>(ext, std::move(gens)), budget);

  std::vector<Polynomial<F>> kept;
  for (const auto& p : gb.elements()) {
    bool has_t = false;
    for (const auto& t : p.terms())
      if (t.mono.exponent(0)) { has_t = true; break; }
    if (has_t) continue;
    std::vector<typename Polynomial<F>::Term> terms;
    terms.reserve(p.term_count());
    for (const auto& t : p.terms()) {
      Monomial m(ring->nvars());
      for (int i = 0; i < ring->nvars(); ++i) m.set_exponent(i, t.mono.exponent(i + 1));
      terms.push_back({m, t.coeff});
    }
    kept.push_back(Polynomial<F>::from_terms(ring, std::move(terms)));
  }
  // the t-free part contains the lifted ideal, so it is never empty
  if (kept.empty()) throw InputError("saturation produced an empty basis");
  return Ideal<F>(ring, std::move(kept));
}

}  // namespace charnum

#endif
