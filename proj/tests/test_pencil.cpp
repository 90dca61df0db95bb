#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "charnum/groebner.hpp"
#include "charnum/pencil.hpp"

using namespace charnum;

namespace {

const PrimeField F(2147483629u);

FiniteAlgebra chain(int d) { return FiniteAlgebra::family(F, AlgebraFamily::Chain, d); }
FiniteAlgebra smooth(int d) { return FiniteAlgebra::family(F, AlgebraFamily::Smooth, d); }
FiniteAlgebra cw(int n) { return FiniteAlgebra::family(F, AlgebraFamily::Cw, n); }
FiniteAlgebra trivial(int m) { return FiniteAlgebra::family(F, AlgebraFamily::Trivial, m); }

FiniteAlgebra paper_example() {
  return FiniteAlgebra::from_quotient(F, {"x", "y", "z"},
                                      {"x^2", "y^2", "x*z", "y*z", "z^2 - x*y"});
}

Polynomial<PrimeField> pp(const RingPtr<PrimeField>& r, const std::string& s) {
  return parse_polynomial(r, s);
}

}  // namespace

TEST_CASE("pencil of a chain algebra is the hankel matrix") {
  auto P = SymmetricPencil::from_algebra(chain(3));
  REQUIRE(P.size() == 3);
  REQUIRE(P.parameter_count() == 3);
  auto r = P.ring();
  CHECK(P.entry(0, 0) == pp(r, "x0"));
  CHECK(P.entry(0, 1) == pp(r, "x1"));
  CHECK(P.entry(1, 1) == pp(r, "x2"));
  CHECK(P.entry(1, 2) == pp(r, "0"));
  CHECK(P.entry(2, 2) == pp(r, "0"));
}

TEST_CASE("pencil of the trivial algebra is bordered") {
  auto P = SymmetricPencil::from_algebra(trivial(3));
  REQUIRE(P.size() == 4);
  auto r = P.ring();
  for (int j = 0; j < 4; ++j) CHECK(P.entry(0, j) == pp(r, "x" + std::to_string(j)));
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) CHECK(P.entry(i, j).is_zero());
}

TEST_CASE("pencil of the worked five-dimensional example") {
  auto P = SymmetricPencil::from_algebra(paper_example());
  REQUIRE(P.size() == 5);
  auto r = P.ring();
  for (int j = 0; j < 5; ++j) CHECK(P.entry(0, j) == pp(r, "x" + std::to_string(j)));
  CHECK(P.entry(1, 2) == pp(r, "x4"));
  CHECK(P.entry(3, 3) == pp(r, "x4"));
  CHECK(P.entry(1, 1).is_zero());
  CHECK(P.entry(1, 3).is_zero());
  CHECK(P.entry(2, 3).is_zero());
  CHECK(P.entry(4, 4).is_zero());
  CHECK(P.entry(2, 4).is_zero());
}

TEST_CASE("pencil from explicit matrices") {
  auto I = Matrix<PrimeField>::identity(F, 2);
  auto P = SymmetricPencil::from_matrices(F, {I});
  REQUIRE(P.parameter_count() == 1);
  CHECK(P.entry(0, 0) == pp(P.ring(), "x0"));
  CHECK(P.entry(0, 1).is_zero());

  // diagonal matrices give the smooth pencil
  std::vector<Matrix<PrimeField>> diag;
  for (int t = 0; t < 3; ++t) {
    Matrix<PrimeField> M(F, 3, 3);
    M.at(t, t) = F.one();
    diag.push_back(M);
  }
  auto Q = SymmetricPencil::from_matrices(F, diag);
  auto R = SymmetricPencil::from_algebra(smooth(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(Q.entry(i, j) == R.entry(i, j));

  // dependent triple: I, A, I + A
  Matrix<PrimeField> A(F, 2, 2);
  A.at(0, 1) = F.one();
  A.at(1, 0) = F.one();
  Matrix<PrimeField> S(F, 2, 2);
  S.at(0, 0) = F.one();
  S.at(1, 1) = F.one();
  S.at(0, 1) = F.one();
  S.at(1, 0) = F.one();
  CHECK_THROWS_WITH(SymmetricPencil::from_matrices(F, {I, A, S}),
                    Catch::Matchers::ContainsSubstring("kernel vector"));

  // asymmetric input
  Matrix<PrimeField> bad(F, 2, 2);
  bad.at(0, 1) = F.one();
  CHECK_THROWS_WITH(SymmetricPencil::from_matrices(F, {bad}),
                    Catch::Matchers::ContainsSubstring("not symmetric"));
}

TEST_CASE("one-by-one minors span the variables") {
  for (const auto& A : {chain(3), cw(3), trivial(2)}) {
    auto P = SymmetricPencil::from_algebra(A);
    auto ms = P.minors(1);
    FormSpan span(ms.polynomials());
    CHECK(span.dim() == P.parameter_count());
    for (int t = 0; t < P.parameter_count(); ++t)
      CHECK(span.contains(Polynomial<PrimeField>::variable(P.ring(), t)));
  }
}

TEST_CASE("cw minor spans match the closed-form basis") {
  // for 1 < k < n the span is x_n^{k-2} * ({x_i x_j : 0 < i,j <= n, i+j != n}
  // and {(k-1) x_i x_{n-i} - x_0 x_n}); for k = n the last family collapses
  // to the single element sum_i x_i x_{n-i} - x_0 x_n
  for (int n : {3, 4}) {
    auto P = SymmetricPencil::from_algebra(cw(n));
    auto r = P.ring();
    auto xv = [&](int i) { return Polynomial<PrimeField>::variable(r, i); };
    for (int k = 2; k <= n; ++k) {
      auto ms = P.minors(k);
      std::vector<Polynomial<PrimeField>> expect;
      auto xn_power = Polynomial<PrimeField>::variable(r, n, unsigned(k - 2));
      if (k < n) {
        for (int i = 1; i <= n; ++i)
          for (int j = i; j <= n; ++j)
            if (i + j != n) expect.push_back(xn_power * xv(i) * xv(j));
        for (int i = 1; 2 * i <= n; ++i) {
          auto rel = xv(i) * xv(n - i);
          rel = rel.scaled(F.from_int(k - 1)) - xv(0) * xv(n);
          expect.push_back(xn_power * rel);
        }
      } else {
        for (int i = 1; i <= n; ++i) expect.push_back(xn_power * xv(i) * xv(n));
        auto rel = Polynomial<PrimeField>::zero(r);
        for (int i = 1; i <= n - 1; ++i) rel = rel + xv(i) * xv(n - i);
        rel = rel - xv(0) * xv(n);
        expect.push_back(xn_power * rel);
      }
      FormSpan span(ms.polynomials());
      INFO("n=" << n << " k=" << k);
      CHECK(span.same_span(expect));
    }
  }
}

TEST_CASE("trivial pencils kill all large minors") {
  for (int m : {2, 3, 4}) {
    auto P = SymmetricPencil::from_algebra(trivial(m));
    for (int k = 3; k <= P.size(); ++k) {
      auto ms = P.minors(k);
      CHECK(ms.forms.empty());
      CHECK_FALSE(ms.zero_pairs.empty());
    }
    CHECK_FALSE(P.minors(2).forms.empty());
  }
}

TEST_CASE("generic ranks") {
  Rng rng(2718);
  CHECK(SymmetricPencil::from_algebra(chain(3)).generic_rank(rng) == 3);
  CHECK(SymmetricPencil::from_algebra(chain(5)).generic_rank(rng) == 5);
  CHECK(SymmetricPencil::from_algebra(trivial(3)).generic_rank(rng) == 2);
  CHECK(SymmetricPencil::from_algebra(trivial(4)).generic_rank(rng) == 2);
  CHECK(SymmetricPencil::from_algebra(cw(3)).generic_rank(rng) == 4);
  CHECK(SymmetricPencil::from_algebra(cw(4)).generic_rank(rng) == 5);
}

TEST_CASE("gorenstein iff nonvanishing pencil determinant") {
  for (const auto& A : {chain(2), chain(4), cw(3), cw(4), smooth(3), paper_example(),
                        FiniteAlgebra::direct_sum(chain(2), chain(2))})
    CHECK_FALSE(SymmetricPencil::from_algebra(A).determinant().is_zero());
  for (int m : {2, 3, 4})
    CHECK(SymmetricPencil::from_algebra(trivial(m)).determinant().is_zero());
}

TEST_CASE("determinant monomial certificate for local gorenstein algebras") {
  for (int d = 2; d <= 6; ++d) {
    auto rep = det_monomial_check(chain(d));
    CHECK(rep.is_monomial);
    CHECK(rep.determinant.term_count() == 1);
  }
  for (int n = 2; n <= 4; ++n) CHECK(det_monomial_check(cw(n)).is_monomial);

  CHECK_THROWS_WITH(det_monomial_check(trivial(2)),
                    Catch::Matchers::ContainsSubstring("not Gorenstein"));
  CHECK_THROWS_WITH(det_monomial_check(smooth(2)),
                    Catch::Matchers::ContainsSubstring("not local"));
}

TEST_CASE("determinant decomposes over direct sums of local gorenstein parts") {
  CHECK(det_monomial_decomposable({chain(2), chain(2)}));
  CHECK(det_monomial_decomposable({chain(3), chain(1)}));
  for (int d = 2; d <= 5; ++d)
    CHECK(det_monomial_decomposable(std::vector<FiniteAlgebra>(std::size_t(d), chain(1))));
  CHECK_THROWS_AS(det_monomial_decomposable({trivial(2), chain(2)}), InputError);
}

TEST_CASE("two-by-two minors present the algebra after dehomogenizing") {
  // quotient by all 2x2 minors plus (x_unit - 1) has dimension dim A
  std::vector<FiniteAlgebra> suite = {chain(2), chain(3), chain(4), cw(3),
                                      trivial(2), trivial(3), paper_example()};
  // a rebased smooth(3) puts its unit on a basis vector
  auto sm = smooth(3);
  Matrix<PrimeField> B(F, 3, 3);
  for (int j = 0; j < 3; ++j) B.at(0, j) = F.one();
  B.at(1, 1) = F.one();
  B.at(2, 2) = F.one();
  suite.push_back(sm.change_of_basis(B));

  for (const auto& A : suite) {
    auto P = SymmetricPencil::from_algebra(A);
    int u = A.unit_index();
    REQUIRE(u >= 0);
    auto r = P.ring();
    std::vector<Polynomial<PrimeField>> gens = P.minors(2).polynomials();
    gens.push_back(Polynomial<PrimeField>::variable(r, u) -
                   Polynomial<PrimeField>::constant(r, F.one()));
    CHECK(solution_count(Ideal<PrimeField>(r, std::move(gens))) == std::size_t(A.dim()));
  }
}

TEST_CASE("pencil entries are symmetric homogeneous linear forms") {
  for (const auto& A : {chain(4), cw(3), trivial(3), smooth(3), paper_example()}) {
    auto P = SymmetricPencil::from_algebra(A);
    for (int i = 0; i < P.size(); ++i)
      for (int j = 0; j < P.size(); ++j) {
        CHECK(P.entry(i, j) == P.entry(j, i));
        if (!P.entry(i, j).is_zero()) CHECK(P.entry(i, j).is_homogeneous_of_degree(1));
      }
  }
}
