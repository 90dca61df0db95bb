#ifndef CHARNUM_VERIFY_HPP
#define CHARNUM_VERIFY_HPP

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "charnum/algebra_spec.hpp"
#include "charnum/closed_forms.hpp"
#include "charnum/engine.hpp"
#include "charnum/pencil.hpp"

namespace charnum {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace verify_detail {

inline std::string seq_string(const std::vector<mpz_class>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

inline std::string index_string(const CharIndex& b) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
  os << ")";
  return os.str();
}

class Runner {
public:
  Runner(const EngineConfig& cfg) : cfg_(cfg) {}

  std::vector<VerifyCheck> take() { return std::move(checks_); }

  void run(const std::string& name, const std::function<std::string()>& body) {
    VerifyCheck c;
    c.name = name;
    try {
      c.detail = body();
      c.pass = true;
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    checks_.push_back(std::move(c));
  }

  static void expect(bool cond, const std::string& msg) {
    if (!cond) throw DisagreementError(msg);
  }

  const EngineConfig& cfg() const { return cfg_; }

private:
  EngineConfig cfg_;
  std::vector<VerifyCheck> checks_;
};

inline PencilFactory family_pencil(AlgebraFamily f, int param) {
  return [f, param](const PrimeField& F) {
    return SymmetricPencil::from_algebra(FiniteAlgebra::family(F, f, param));
  };
}

inline void check_sequence_properties(Runner& r, const std::string& tag, const CharSequence& seq,
                                      bool expect_gorenstein) {
  r.run("sequence-properties:" + tag, [&] {
    Runner::expect(seq.values.front().value == 1, "sequence must start with 1");
    Runner::expect(seq.nonnegative(), "sequence entries must be nonnegative");
    for (const auto& v : seq.values)
      Runner::expect(v.agreement || v.truncated, "engine value lacks cross-prime agreement");
    if (expect_gorenstein) {
      Runner::expect(seq.symmetric(), "gorenstein sequence must be symmetric");
      Runner::expect(seq.log_concave(), "gorenstein sequence must be log-concave");
    }
    return seq_string(seq.numbers());
  });
}

inline void check_gorenstein_routes(Runner& r, const std::string& tag, const AlgebraFactory& af,
                                    bool expected) {
  r.run("gorenstein-three-route:" + tag, [&] {
    auto rep = classify_gorenstein(af, r.cfg());
    Runner::expect(rep.gorenstein == expected,
                   expected ? "expected gorenstein" : "expected non-gorenstein");
    Runner::expect(rep.last_route.has_value() && rep.symmetry_route.has_value(),
                   "cross-check routes missing");
    return std::string(rep.gorenstein ? "gorenstein" : "non-gorenstein") +
           ", routes agree (determinant, last number, symmetry)";
  });
}

}  // namespace verify_detail

/// The builtin verification suites. "core" keeps to dimension <= 4 and runs
/// in seconds; "full" covers the whole battery.
inline std::vector<VerifyCheck> run_suite_checks(const std::string& suite,
                                                 const EngineConfig& cfg) {
  using namespace verify_detail;
  if (suite != "core" && suite != "full")
    throw InputError("unknown suite: " + suite + " (expected core or full)");
  const bool full = (suite == "full");
  Runner r(cfg);

  // engine sequences match the binomial pattern
  for (int d = 2; d <= (full ? 5 : 4); ++d) {
    r.run("binomial-sequence:chain(" + std::to_string(d) + ")", [&, d] {
      auto seq = characteristic_sequence(family_pencil(AlgebraFamily::Chain, d), cfg);
      Runner::expect(seq.numbers() == binomial_sequence(d), "sequence differs from binomials");
      return seq_string(seq.numbers());
    });
    r.run("binomial-sequence:smooth(" + std::to_string(d) + ")", [&, d] {
      auto seq = characteristic_sequence(family_pencil(AlgebraFamily::Smooth, d), cfg);
      Runner::expect(seq.numbers() == binomial_sequence(d), "sequence differs from binomials");
      return seq_string(seq.numbers());
    });
  }

  // full multidegree of the chain equals the relation-solver table
  for (int d = 3; d <= (full ? 4 : 3); ++d) {
    r.run("smooth-equals-chain:multidegree:d=" + std::to_string(d), [&, d] {
      auto table = multidegree(family_pencil(AlgebraFamily::Chain, d), cfg);
      std::size_t hits = 0;
      for (const auto& [index, v] : table.values) {
        Runner::expect(v.value == mixed_eulerian(index),
                       "mismatch at index " + index_string(index));
        ++hits;
      }
      return std::to_string(hits) + " indices equal";
    });
  }

  // constancy over univariate quotients: binomials for random monic inputs
  if (full) {
    Rng poly_rng(derive_seed(cfg.seed, {0x41AB5eedULL}));
    for (int d : {3, 4}) {
      r.run("hilb-constancy:degree-" + std::to_string(d), [&, d]() mutable {
        int done = 0;
        for (int trial = 0; trial < 5; ++trial) {
          std::string f;
          if (trial == 0) {
            // squarefree split: x(x-1)(x-2)...
            f = "x";
            for (int k = 1; k < d; ++k) f += "*(x - " + std::to_string(k) + ")";
          } else if (trial == 1) {
            // forced non-squarefree: (x - 1)^2 * rest
            f = "(x - 1)^2";
            for (int k = 0; k + 2 < d; ++k) f += "*(x - " + std::to_string(3 + k) + ")";
          } else {
            f = "x^" + std::to_string(d);
            for (int k = d - 1; k >= 0; --k)
              f += " + " + std::to_string(poly_rng.below(1000)) + "*x^" + std::to_string(k);
          }
          AlgebraSpec spec = AlgebraSpec::quotient({"x"}, {f});
          auto seq = characteristic_sequence(spec.pencil_factory(), cfg);
          Runner::expect(seq.numbers() == binomial_sequence(d),
                         "sequence differs from binomials for f = " + f);
          ++done;
        }
        return std::to_string(done) + " random monic inputs constant";
      });
    }
  }

  // closed forms for the cw family
  r.run("cw-closed-form:cw(3)", [&] {
    auto table = multidegree(family_pencil(AlgebraFamily::Cw, 3), cfg);
    for (const auto& [index, v] : table.values)
      Runner::expect(v.value == cw_closed_form(3, index), "mismatch at " + index_string(index));
    return std::to_string(table.values.size()) + " indices equal";
  });
  if (full) {
    r.run("cw-closed-form:cw(4):sampled", [&] {
      std::vector<CharIndex> sample = {{0, 4, 0, 0}, {4, 0, 0, 0}, {0, 0, 0, 4}, {1, 1, 1, 1},
                                       {0, 2, 2, 0}, {1, 0, 3, 0}, {2, 0, 0, 2}, {0, 3, 0, 1}};
      Engine eng(family_pencil(AlgebraFamily::Cw, 4), cfg);
      for (const auto& b : sample)
        Runner::expect(eng.characteristic_number(b).value == cw_closed_form(4, b),
                       "mismatch at " + index_string(b));
      return std::to_string(sample.size()) + " sampled indices equal";
    });
  }

  // trivial algebra closed form, including the formally-zero indices
  for (int m = 2; m <= (full ? 4 : 3); ++m) {
    r.run("trivial-closed-form:m=" + std::to_string(m), [&, m] {
      auto table = multidegree(family_pencil(AlgebraFamily::Trivial, m), cfg);
      std::size_t truncated = 0;
      for (const auto& [index, v] : table.values) {
        Runner::expect(v.value == trivial_closed_form(m, index),
                       "mismatch at " + index_string(index));
        if (v.truncated) ++truncated;
      }
      return std::to_string(table.values.size()) + " indices equal, " +
             std::to_string(truncated) + " formally zero";
    });
  }

  // gorenstein three-route agreement across the family suite
  {
    auto fam_af = [](AlgebraFamily f, int p) {
      return AlgebraFactory(
          [f, p](const PrimeField& F) { return FiniteAlgebra::family(F, f, p); });
    };
    for (int d = 2; d <= (full ? 5 : 4); ++d) {
      check_gorenstein_routes(r, "chain(" + std::to_string(d) + ")",
                              fam_af(AlgebraFamily::Chain, d), true);
      if (full)
        check_gorenstein_routes(r, "smooth(" + std::to_string(d) + ")",
                                fam_af(AlgebraFamily::Smooth, d), true);
    }
    for (int n = 2; n <= (full ? 4 : 3); ++n)
      check_gorenstein_routes(r, "cw(" + std::to_string(n) + ")", fam_af(AlgebraFamily::Cw, n),
                              true);
    for (int m = 2; m <= (full ? 4 : 3); ++m)
      check_gorenstein_routes(r, "trivial(" + std::to_string(m) + ")",
                              fam_af(AlgebraFamily::Trivial, m), false);
    check_gorenstein_routes(
        r, "worked-example",
        AlgebraFactory([](const PrimeField& F) {
          return FiniteAlgebra::from_quotient(F, {"x", "y", "z"},
                                              {"x^2", "y^2", "x*z", "y*z", "z^2 - x*y"});
        }),
        true);
    check_gorenstein_routes(
        r, "chain(2)+chain(2)",
        AlgebraSpec::sum({AlgebraSpec::family(AlgebraFamily::Chain, 2),
                          AlgebraSpec::family(AlgebraFamily::Chain, 2)})
            .algebra_factory(),
        true);
  }

  // complete intersection criterion
  r.run("ci-criterion:kxy-quotient", [&] {
    auto rep = classify_complete_intersection(
        AlgebraSpec::quotient({"x", "y"}, {"x^2", "y^2"}).algebra_factory(), cfg);
    Runner::expect(rep.complete_intersection && rep.value == 4, "expected value 4 with equality");
    return "value 4 = bound 4";
  });
  r.run("ci-criterion:trivial(2)", [&] {
    auto rep = classify_complete_intersection(
        AlgebraSpec::family(AlgebraFamily::Trivial, 2).algebra_factory(), cfg);
    Runner::expect(!rep.complete_intersection && rep.value == 0 && rep.bound == 1,
                   "expected 0 < 1");
    return "value 0 < bound 1";
  });
  if (full) {
    r.run("ci-criterion:cw(4)", [&] {
      auto rep = classify_complete_intersection(
          AlgebraSpec::family(AlgebraFamily::Cw, 4).algebra_factory(), cfg);
      Runner::expect(!rep.complete_intersection && rep.value == 8 && rep.bound == 11,
                     "expected 8 < 11");
      return "value 8 < bound 11";
    });
  }

  // join recursion against a direct engine run
  r.run("join-recursion:chain(2)+chain(2)", [&] {
    auto part = characteristic_sequence(family_pencil(AlgebraFamily::Chain, 2), cfg);
    auto joined = join_sequence(part, part);
    auto direct = characteristic_sequence(
        AlgebraSpec::sum({AlgebraSpec::family(AlgebraFamily::Chain, 2),
                          AlgebraSpec::family(AlgebraFamily::Chain, 2)})
            .pencil_factory(),
        cfg);
    Runner::expect(joined.numbers() == direct.numbers(), "join and engine differ");
    Runner::expect(joined.numbers() == binomial_sequence(4), "expected (1,3,3,1)");
    return seq_string(joined.numbers());
  });

  // determinant-monomial certificates
  r.run("det-monomial:chains", [&] {
    PrimeField F(cfg.resolved_primes().front());
    for (int d = 2; d <= (full ? 6 : 4); ++d)
      Runner::expect(det_monomial_check(FiniteAlgebra::family(F, AlgebraFamily::Chain, d)).is_monomial,
                     "chain(" + std::to_string(d) + ") failed");
    for (int n = 2; n <= (full ? 4 : 3); ++n)
      Runner::expect(det_monomial_check(FiniteAlgebra::family(F, AlgebraFamily::Cw, n)).is_monomial,
                     "cw(" + std::to_string(n) + ") failed");
    return "socle-power determinants certified";
  });
  r.run("det-monomial:direct-sums", [&] {
    PrimeField F(cfg.resolved_primes().front());
    auto chain_of = [&](int d) { return FiniteAlgebra::family(F, AlgebraFamily::Chain, d); };
    for (int d = 2; d <= (full ? 5 : 3); ++d)
      Runner::expect(
          det_monomial_decomposable(std::vector<FiniteAlgebra>(std::size_t(d), chain_of(1))),
          "smooth(" + std::to_string(d) + ") failed");
    Runner::expect(det_monomial_decomposable({chain_of(2), chain_of(2)}), "chain sum failed");
    Runner::expect(det_monomial_decomposable({chain_of(3), chain_of(1)}), "mixed sum failed");
    return "product-of-socle-powers determinants certified";
  });

  // relation solver sanity: reversal symmetry and positivity
  r.run("eulerian:reversal-positivity", [&] {
    int nmax = full ? 6 : 4;
    for (int n = 1; n <= nmax; ++n) {
      auto comps = weak_compositions(n, n);
      const auto& tab = MixedEulerian::table(n);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        Runner::expect(tab[i] > 0, "eulerian entry not positive");
        std::vector<int> rev(comps[i].rbegin(), comps[i].rend());
        Runner::expect(tab[MixedEulerian::position(rev, n, n)] == tab[i],
                       "eulerian reversal asymmetry");
      }
    }
    return "tables up to n = " + std::to_string(nmax) + " symmetric and positive";
  });

  // bounds on the family suite
  r.run("bounds:smooth-upper:cw(3)", [&] {
    auto table = multidegree(family_pencil(AlgebraFamily::Cw, 3), cfg);
    std::vector<std::pair<CharIndex, mpz_class>> plain;
    for (const auto& [index, v] : table.values) plain.push_back({index, v.value});
    auto rep = bound_report(plain, BoundKind::SmoothUpper);
    Runner::expect(rep.ok(), "smooth upper bound violated");
    auto low = bound_report(plain, BoundKind::CwLower);
    Runner::expect(low.ok() && low.equalities == low.compared, "cw lower bound not tight");
    return "upper bound holds; lower bound tight";
  });
  if (full) {
    r.run("bounds:cw-lower:chain(4)", [&] {
      auto table = multidegree(family_pencil(AlgebraFamily::Chain, 4), cfg);
      std::vector<std::pair<CharIndex, mpz_class>> plain;
      for (const auto& [index, v] : table.values) plain.push_back({index, v.value});
      auto rep = bound_report(plain, BoundKind::CwLower);
      Runner::expect(rep.ok(), "gorenstein lower bound violated");
      return "lower bound holds on a gorenstein member";
    });
  }
  r.run("bounds:smooth-upper:chain-sums", [&] {
    auto table = multidegree(AlgebraSpec::sum({AlgebraSpec::family(AlgebraFamily::Chain, 2),
                                               AlgebraSpec::family(AlgebraFamily::Chain, 2)})
                                 .pencil_factory(),
                             cfg);
    std::vector<std::pair<CharIndex, mpz_class>> plain;
    for (const auto& [index, v] : table.values) plain.push_back({index, v.value});
    auto rep = bound_report(plain, BoundKind::SmoothUpper);
    Runner::expect(rep.ok(), "smoothable algebra exceeded the smooth bound");
    return "upper bound holds on a smoothable sum";
  });

  // gorenstein sequence properties across the suite
  {
    auto seq_chain4 = characteristic_sequence(family_pencil(AlgebraFamily::Chain, 4), cfg);
    check_sequence_properties(r, "chain(4)", seq_chain4, true);
    auto seq_cw3 = characteristic_sequence(family_pencil(AlgebraFamily::Cw, 3), cfg);
    check_sequence_properties(r, "cw(3)", seq_cw3, true);
    if (full) {
      auto seq_cw4 = characteristic_sequence(family_pencil(AlgebraFamily::Cw, 4), cfg);
      check_sequence_properties(r, "cw(4)", seq_cw4, true);
      auto paper = characteristic_sequence(
          AlgebraSpec::quotient({"x", "y", "z"}, {"x^2", "y^2", "x*z", "y*z", "z^2 - x*y"})
              .pencil_factory(),
          cfg);
      check_sequence_properties(r, "worked-example", paper, true);
    }
  }

  return r.take();
}

/// Checks applicable to one user-supplied spec.
inline std::vector<VerifyCheck> run_spec_checks(const AlgebraSpec& spec, const EngineConfig& cfg) {
  using namespace verify_detail;
  Runner r(cfg);
  PencilFactory pf = spec.pencil_factory();
  AlgebraFactory af = spec.algebra_factory();

  GorensteinReport rep;
  r.run("gorenstein-three-route", [&] {
    rep = classify_gorenstein(af, cfg);
    return std::string(rep.gorenstein ? "gorenstein" : "non-gorenstein") + ", routes agree";
  });

  CharSequence seq;
  r.run("sequence", [&] {
    seq = characteristic_sequence(pf, cfg);
    return seq_string(seq.numbers());
  });
  if (!seq.values.empty()) check_sequence_properties(r, "spec", seq, rep.gorenstein);

  if (const auto* fam = std::get_if<AlgebraSpec::Family>(&spec.node())) {
    if (fam->name == AlgebraFamily::Chain || fam->name == AlgebraFamily::Smooth) {
      r.run("binomial-sequence", [&] {
        Runner::expect(seq.numbers() == binomial_sequence(fam->param),
                       "sequence differs from binomials");
        return seq_string(seq.numbers());
      });
    } else if (fam->name == AlgebraFamily::Cw) {
      r.run("cw-closed-form", [&] {
        auto table = multidegree(pf, cfg);
        for (const auto& [index, v] : table.values)
          Runner::expect(v.value == cw_closed_form(fam->param, index),
                         "mismatch at " + index_string(index));
        return std::to_string(table.values.size()) + " indices equal";
      });
    } else if (fam->name == AlgebraFamily::Trivial) {
      r.run("trivial-closed-form", [&] {
        auto table = multidegree(pf, cfg);
        for (const auto& [index, v] : table.values)
          Runner::expect(v.value == trivial_closed_form(fam->param, index),
                         "mismatch at " + index_string(index));
        return std::to_string(table.values.size()) + " indices equal";
      });
    }
  }

  PrimeField F0(cfg.resolved_primes().front());
  FiniteAlgebra A0 = spec.instantiate(F0);
  if (A0.is_local() && A0.dim() >= 3) {
    r.run("ci-criterion", [&] {
      auto ci = classify_complete_intersection(af, cfg);
      std::ostringstream os;
      os << (ci.complete_intersection ? "complete intersection" : "not a complete intersection")
         << " (value " << ci.value << ", bound " << ci.bound << ")";
      return os.str();
    });
  }
  return r.take();
}

}  // namespace charnum

#endif
