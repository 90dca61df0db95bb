#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "charnum/groebner.hpp"
#include "charnum/linalg.hpp"
#include "charnum/polynomial.hpp"

using namespace charnum;

namespace {

const std::uint32_t kP1 = 2147483629u;
const std::uint32_t kP2 = 2147483587u;

using Poly = Polynomial<PrimeField>;

Ideal<PrimeField> ideal_of(const RingPtr<PrimeField>& r, const std::vector<std::string>& gens) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(r, g));
  return Ideal<PrimeField>(r, std::move(ps));
}

std::set<std::string> lt_strings(const GroebnerBasis<PrimeField>& gb) {
  std::set<std::string> out;
  for (const auto& g : gb.elements())
    out.insert(Poly::from_terms(g.ring(), {{g.leading_monomial(), g.ring()->field.one()}}).to_string());
  return out;
}

}  // namespace

TEST_CASE("monomial ideal is its own reduced basis") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});
  auto gb = buchberger(ideal_of(r, {"x^2", "x*y"}));
  REQUIRE(gb.elements().size() == 2);
  CHECK(gb.elements()[0] == parse_polynomial(r, "x*y"));
  CHECK(gb.elements()[1] == parse_polynomial(r, "x^2"));
}

TEST_CASE("already-groebner pair survives in the elimination order") {
  // with x in the front block the leading terms are x and y^3: coprime
  auto r = make_ring(PrimeField(kP1), {"x", "y"}, MonomialOrder::block(1));
  auto gb = buchberger(ideal_of(r, {"x - y^2", "y^3"}));
  REQUIRE(gb.elements().size() == 2);
  std::set<std::string> got;
  for (const auto& g : gb.elements()) got.insert(g.to_string());
  CHECK(got.count("y^3") == 1);
  CHECK(got.count("x + " + std::to_string(kP1 - 1) + "*y^2") == 1);
}

TEST_CASE("eliminating x from (y - x^2, x^3) yields the cube of y") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"}, MonomialOrder::block(1));
  auto I = ideal_of(r, {"y - x^2", "x^3"});
  auto gb = buchberger(I);
  CHECK(gb.normal_form(parse_polynomial(r, "y^3")).is_zero());
  CHECK(gb.normal_form(parse_polynomial(r, "x^6 - y^3")).is_zero());
  // the elimination ideal is (y^2): y^2 = x^4 on the curve y = x^2
  bool found = false;
  for (const auto& g : gb.elements())
    if (g == parse_polynomial(r, "y^2")) found = true;
  CHECK(found);
}

TEST_CASE("normal forms") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});
  auto gb = buchberger(ideal_of(r, {"x^2 - y"}));
  CHECK(gb.normal_form(parse_polynomial(r, "x^2")) == parse_polynomial(r, "y"));

  auto gb2 = buchberger(ideal_of(r, {"x^3"}));
  CHECK(gb2.normal_form(parse_polynomial(r, "x^3")).is_zero());
}

TEST_CASE("zero-dimensionality detection") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});
  CHECK(buchberger(ideal_of(r, {"x^2", "y^2"})).is_zero_dimensional());
  CHECK_FALSE(buchberger(ideal_of(r, {"x*y"})).is_zero_dimensional());
  CHECK(buchberger(ideal_of(r, {"x^2", "x*y", "y^3"})).is_zero_dimensional());
}

TEST_CASE("standard monomials") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});
  auto gb = buchberger(ideal_of(r, {"x^2", "y^2"}));
  auto monos = gb.standard_monomials();
  REQUIRE(monos.size() == 4);  // 1, x, y, xy

  auto r1 = make_ring(PrimeField(kP1), {"x"});
  auto gb1 = buchberger(ideal_of(r1, {"x^3"}));
  REQUIRE(gb1.standard_monomials().size() == 3);

  CHECK_THROWS_AS(buchberger(ideal_of(r, {"x*y"})).standard_monomials(), InputError);
}

TEST_CASE("quotient basis of the five-dimensional worked example") {
  auto r = make_ring(PrimeField(kP1), {"x", "y", "z"});
  auto gb = buchberger(ideal_of(r, {"x^2", "y^2", "x*z", "y*z", "z^2 - x*y"}));
  auto monos = gb.standard_monomials();
  REQUIRE(monos.size() == 5);
  std::set<std::string> names;
  for (const auto& m : monos)
    names.insert(Poly::from_terms(r, {{m, r->field.one()}}).to_string());
  CHECK(names == std::set<std::string>({"1", "x", "y", "z", "z^2"}));
}

TEST_CASE("saturation by an element") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});

  auto s1 = saturate_by_element(ideal_of(r, {"x*y"}), parse_polynomial(r, "y"));
  auto gb1 = buchberger(s1);
  REQUIRE(gb1.elements().size() == 1);
  CHECK(gb1.elements()[0] == parse_polynomial(r, "x"));

  // x^2 lies in the ideal, so saturating by x clears out everything
  auto s2 = saturate_by_element(ideal_of(r, {"x^2", "x*y"}), parse_polynomial(r, "x"));
  CHECK(buchberger(s2).contains_one());

  // saturating by y leaves the line x = 0
  auto s2b = saturate_by_element(ideal_of(r, {"x^2", "x*y"}), parse_polynomial(r, "y"));
  auto gb2 = buchberger(s2b);
  REQUIRE(gb2.elements().size() == 1);
  CHECK(gb2.elements()[0] == parse_polynomial(r, "x"));

  auto r1 = make_ring(PrimeField(kP1), {"x"});
  auto s3 = saturate_by_element(ideal_of(r1, {"x^2 - x"}), parse_polynomial(r1, "x"));
  auto gb3 = buchberger(s3);
  REQUIRE(gb3.elements().size() == 1);
  CHECK(gb3.elements()[0] == parse_polynomial(r1, "x - 1"));
}

TEST_CASE("saturation is idempotent") {
  auto r = make_ring(PrimeField(kP1), {"x", "y", "z"});
  auto I = ideal_of(r, {"x*y*z", "x^2*y - z*y^2", "x^3"});
  auto g = parse_polynomial(r, "x + z");
  auto once = saturate_by_element(I, g);
  auto twice = saturate_by_element(once, g);
  auto gb_once = buchberger(once);
  auto gb_twice = buchberger(twice);
  REQUIRE(gb_once.elements().size() == gb_twice.elements().size());
  for (std::size_t i = 0; i < gb_once.elements().size(); ++i)
    CHECK(gb_once.elements()[i] == gb_twice.elements()[i]);
}

TEST_CASE("solution counts") {
  auto r = make_ring(PrimeField(kP1), {"x", "y"});
  CHECK(solution_count(ideal_of(r, {"x^2 - 1", "y - x"})) == 2);
  CHECK(solution_count(ideal_of(r, {"x^2", "y^2"})) == 4);
  auto r1 = make_ring(PrimeField(kP1), {"x"});
  CHECK(solution_count(ideal_of(r1, {"x^3 - x"})) == 3);
}

TEST_CASE("every generator reduces to zero against its basis") {
  Rng rng(2024);
  auto r = make_ring(PrimeField(kP1), {"x", "y", "z"});
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Poly> gens;
    int ngens = 2 + int(rng.below(3));
    for (int g = 0; g < ngens; ++g) {
      std::vector<Poly::Term> terms;
      int nterms = 1 + int(rng.below(4));
      for (int t = 0; t < nterms; ++t) {
        Monomial m(3);
        for (int v = 0; v < 3; ++v) m.set_exponent(v, unsigned(rng.below(3)));
        terms.push_back({m, r->field.random(rng)});
      }
      auto p = Poly::from_terms(r, std::move(terms));
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    Ideal<PrimeField> I(r, gens);
    auto gb = buchberger(I);
    for (const auto& g : gens) CHECK(gb.normal_form(g).is_zero());
    // S-polynomials of basis pairs reduce to zero (defining property)
    const auto& B = gb.elements();
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j) {
        Monomial l = Monomial::lcm(B[i].leading_monomial(), B[j].leading_monomial());
        auto s = B[i].scaled_shifted(r->field.one(), l.divided_by(B[i].leading_monomial())) -
                 B[j].scaled_shifted(r->field.one(), l.divided_by(B[j].leading_monomial()));
        CHECK(gb.normal_form(s).is_zero());
      }
    // auto-reduced: no leading term divides another
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j)
        if (i != j) CHECK_FALSE(B[i].leading_monomial().divides(B[j].leading_monomial()));
  }
}

TEST_CASE("solution count is invariant under linear changes of variables") {
  auto r = make_ring(PrimeField(kP1), {"x", "y", "z"});
  auto I = ideal_of(r, {"x^2 - y", "y^2 - 1", "z^2 - x*y"});
  std::size_t base = solution_count(I);
  CHECK(base == 8);
  Rng rng(31337);
  for (int trial = 0; trial < 5; ++trial) {
    auto M = Matrix<PrimeField>::random_invertible(r->field, 3, rng);
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) {
      std::vector<Poly::Term> terms;
      for (int j = 0; j < 3; ++j)
        terms.push_back({Monomial::variable(3, j), M.at(i, j)});
      images.push_back(Poly::from_terms(r, std::move(terms)));
    }
    std::vector<Poly> moved;
    for (const auto& g : I.generators()) moved.push_back(g.substitute(r, images));
    CHECK(solution_count(Ideal<PrimeField>(r, std::move(moved))) == base);
  }
}

TEST_CASE("cross-prime agreement of leading terms and counts") {
  std::vector<std::vector<std::string>> suite = {
      {"x^2 + y - 1", "y^2 - x"},
      {"x^2 - 2*y^2", "x*y - 3", "y^3 - x"},
      {"x^3 - x - 1", "y - x^2"},
  };
  for (const auto& gens : suite) {
    auto r1 = make_ring(PrimeField(kP1), {"x", "y"});
    auto r2 = make_ring(PrimeField(kP2), {"x", "y"});
    auto gb1 = buchberger(ideal_of(r1, gens));
    auto gb2 = buchberger(ideal_of(r2, gens));
    CHECK(lt_strings(gb1) == lt_strings(gb2));
    if (gb1.is_zero_dimensional()) {
      REQUIRE(gb2.is_zero_dimensional());
      CHECK(gb1.quotient_dimension() == gb2.quotient_dimension());
    }
  }
}

TEST_CASE("resource budgets bite") {
  auto r = make_ring(PrimeField(kP1), {"x", "y", "z"});
  Budget tiny;
  tiny.max_monomial_ops = 10;
  CHECK_THROWS_AS(buchberger(ideal_of(r, {"x^3 - y*z + 1", "y^4 - x*z", "z^3 - x*y^2"}), tiny),
                  ResourceLimitError);
}

TEST_CASE("buchberger refuses an empty ideal") {
  auto r = make_ring(PrimeField(kP1), {"x"});
  CHECK_THROWS_AS(buchberger(Ideal<PrimeField>(r, {})), InputError);
}
