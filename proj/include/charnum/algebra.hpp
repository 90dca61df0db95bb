#ifndef CHARNUM_ALGEBRA_HPP
#define CHARNUM_ALGEBRA_HPP

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charnum/errors.hpp"
#include "charnum/groebner.hpp"
#include "charnum/linalg.hpp"
#include "charnum/polynomial.hpp"

namespace charnum {

enum class AlgebraFamily { Chain, Smooth, Cw, Trivial };

inline std::string family_name(AlgebraFamily f) {
  switch (f) {
    case AlgebraFamily::Chain: return "chain";
    case AlgebraFamily::Smooth: return "smooth";
    case AlgebraFamily::Cw: return "cw";
    case AlgebraFamily::Trivial: return "trivial";
  }
  return "?";
}

/// A finite commutative unital algebra over a prime field, given by structure
/// constants c_{ij}^k (basis product a_i a_j = sum_k c_{ij}^k a_k) and the
/// coordinates of the unit element. The unit need not be a basis vector: the
/// canonical bases of smooth algebras and direct sums are idempotents, whose
/// sum is the unit.
class FiniteAlgebra {
public:
  using Elem = PrimeField::Element;

  struct QuotientData {
    RingPtr<PrimeField> ring;
    std::shared_ptr<const GroebnerBasis<PrimeField>> gb;
    std::vector<Monomial> basis_monomials;
  };

  enum class Kind { Quotient, Table, Family, Sum };

  struct Provenance {
    Kind kind = Kind::Table;
    std::optional<QuotientData> quotient;
    std::optional<std::pair<AlgebraFamily, int>> family;
    // local-leaf decomposition, filled for sums (and smooth, a sum of points)
    std::vector<std::shared_ptr<const FiniteAlgebra>> parts;
  };

  const PrimeField& field() const { return field_; }
  int dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Elem>& unit() const { return unit_; }
  const Provenance& provenance() const { return prov_; }

  /// Index of the unit when it is a standard basis vector, else -1.
  int unit_index() const {
    int idx = -1;
    for (int i = 0; i < n_; ++i) {
      if (field_.is_zero(unit_[std::size_t(i)])) continue;
      if (idx >= 0 || !field_.is_one(unit_[std::size_t(i)])) return -1;
      idx = i;
    }
    return idx;
  }

  Elem c(int i, int j, int k) const { return c_[idx(i, j, k)]; }

  /// Product of two coordinate vectors.
  std::vector<Elem> mul(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
    std::vector<Elem> out(std::size_t(n_), field_.zero());
    for (int i = 0; i < n_; ++i) {
      if (field_.is_zero(a[std::size_t(i)])) continue;
      for (int j = 0; j < n_; ++j) {
        if (field_.is_zero(b[std::size_t(j)])) continue;
        Elem f = field_.mul(a[std::size_t(i)], b[std::size_t(j)]);
        for (int k = 0; k < n_; ++k) {
          Elem ck = c(i, j, k);
          if (!field_.is_zero(ck))
            out[std::size_t(k)] = field_.add(out[std::size_t(k)], field_.mul(f, ck));
        }
      }
    }
    return out;
  }

  std::vector<Elem> basis_vector(int i) const {
    std::vector<Elem> v(std::size_t(n_), field_.zero());
    v[std::size_t(i)] = field_.one();
    return v;
  }

  /// Matrix of multiplication by v: column j holds the coordinates of v*a_j.
  Matrix<PrimeField> mult_matrix(const std::vector<Elem>& v) const {
    Matrix<PrimeField> M(field_, n_, n_);
    for (int j = 0; j < n_; ++j) {
      auto col = mul(v, basis_vector(j));
      for (int k = 0; k < n_; ++k) M.at(k, j) = col[std::size_t(k)];
    }
    return M;
  }

  bool is_nilpotent(const std::vector<Elem>& v) const {
    std::vector<Elem> acc = v;
    for (int step = 1; step < n_; ++step) {
      bool zero = true;
      for (const auto& x : acc)
        if (!field_.is_zero(x)) { zero = false; break; }
      if (zero) return true;
      acc = mul(acc, v);
    }
    for (const auto& x : acc)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  // -- constructors ---------------------------------------------------------

  /// Quotient of a polynomial ring by an ideal with finite-dimensional
  /// quotient. Basis: degrevlex standard monomials sorted by degree, largest
  /// monomial first within a degree, so the paper-style bases (1, x, y, z,
  /// z^2) come out verbatim.
  static FiniteAlgebra from_quotient(const PrimeField& field,
                                     const std::vector<std::string>& vars,
                                     const std::vector<std::string>& generator_texts,
                                     const Budget& budget = Budget{}) {
    RingPtr<PrimeField> ring = make_ring(field, vars);
    std::vector<Polynomial<PrimeField>> gens;
    for (const auto& t : generator_texts) gens.push_back(parse_polynomial(ring, t));
    auto gb = std::make_shared<const GroebnerBasis<PrimeField>>(
        buchberger(Ideal<PrimeField>(ring, std::move(gens)), budget));
    if (!gb->is_zero_dimensional())
      throw InputError("quotient is not finite-dimensional");
    if (gb->contains_one()) throw InputError("quotient is the zero ring");
    std::vector<Monomial> basis = gb->standard_monomials();
    std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return ring->order.compare(a, b) > 0;
    });
    const int n = int(basis.size());

    FiniteAlgebra A;
    A.field_ = field;
    A.n_ = n;
    A.c_.assign(std::size_t(n) * n * n, field.zero());
    for (const auto& m : basis)
      A.labels_.push_back(
          Polynomial<PrimeField>::from_terms(ring, {{m, field.one()}}).to_string());
    A.unit_ = A.basis_vector(0);

    auto index_of = [&](const Monomial& m) {
      for (int k = 0; k < n; ++k)
        if (basis[std::size_t(k)] == m) return k;
      throw InputError("normal form left the standard monomial basis");
    };
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        auto prod = Polynomial<PrimeField>::from_terms(
            ring, {{basis[std::size_t(i)] * basis[std::size_t(j)], field.one()}});
        auto nf = gb->normal_form(prod);
        for (const auto& t : nf.terms()) {
          int k = index_of(t.mono);
          A.c_[A.idx(i, j, k)] = t.coeff;
          A.c_[A.idx(j, i, k)] = t.coeff;
        }
      }

    A.prov_.kind = Kind::Quotient;
    A.prov_.quotient = QuotientData{ring, gb, basis};
    A.validate();
    return A;
  }

  /// Explicit structure-constant table. Entries are (i, j, k, value) with
  /// values reduced into the field; omitted entries are zero. Giving both
  /// (i,j,k) and (j,i,k) inconsistently is a commutativity violation.
  static FiniteAlgebra from_table(const PrimeField& field, int n,
                                  const std::vector<std::array<long long, 4>>& entries,
                                  int unit_index) {
    if (n <= 0) throw InputError("table dimension must be positive");
    if (unit_index < 0 || unit_index >= n) throw InputError("unit index out of range");
    FiniteAlgebra A;
    A.field_ = field;
    A.n_ = n;
    A.c_.assign(std::size_t(n) * n * n, field.zero());
    std::vector<bool> set(A.c_.size(), false);
    for (const auto& e : entries) {
      int i = int(e[0]), j = int(e[1]), k = int(e[2]);
      if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
        throw InputError("table entry index out of range");
      Elem v = field.from_int(e[3]);
      std::size_t id = A.idx(i, j, k);
      if (set[id] && A.c_[id] != v) {
        if (i != j)
          throw InputError("commutativity violation at (" + std::to_string(i) + "," +
                           std::to_string(j) + "," + std::to_string(k) + ")");
        throw InputError("conflicting table entries at (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")");
      }
      std::size_t mirror = A.idx(j, i, k);
      if (set[mirror] && A.c_[mirror] != v)
        throw InputError("commutativity violation at (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")");
      A.c_[id] = v;
      A.c_[mirror] = v;
      set[id] = set[mirror] = true;
    }
    for (int i = 0; i < n; ++i) A.labels_.push_back("b" + std::to_string(i));
    A.unit_ = A.basis_vector(unit_index);
    A.prov_.kind = Kind::Table;
    A.validate();
    return A;
  }

  /// Built-in families: chain(d) = k[x]/(x^d); smooth(d) = product of d
  /// copies of the base field in the idempotent basis; cw(n) the algebra of
  /// the big Coppersmith-Winograd tensor as displayed by its multiplication
  /// table (socle pairing on the antidiagonal); trivial(m) with all products
  /// of the m nilpotent generators equal to zero.
  static FiniteAlgebra family(const PrimeField& field, AlgebraFamily name, int param) {
    switch (name) {
      case AlgebraFamily::Chain: {
        if (param < 1) throw InputError("chain(d) needs d >= 1");
        const int d = param;
        FiniteAlgebra A = zero_table(field, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i + j < d) A.c_[A.idx(i, j, i + j)] = field.one();
        A.labels_[0] = "1";
        for (int i = 1; i < d; ++i)
          A.labels_[std::size_t(i)] = i == 1 ? "x" : "x^" + std::to_string(i);
        A.unit_ = A.basis_vector(0);
        A.prov_.kind = Kind::Family;
        A.prov_.family = {AlgebraFamily::Chain, param};
        A.validate();
        return A;
      }
      case AlgebraFamily::Smooth: {
        if (param < 1) throw InputError("smooth(d) needs d >= 1");
        const int d = param;
        FiniteAlgebra A = zero_table(field, d);
        for (int i = 0; i < d; ++i) A.c_[A.idx(i, i, i)] = field.one();
        for (int i = 0; i < d; ++i) {
          A.labels_[std::size_t(i)] = "e" + std::to_string(i);
          A.unit_[std::size_t(i)] = field.one();
        }
        A.prov_.kind = Kind::Family;
        A.prov_.family = {AlgebraFamily::Smooth, param};
        for (int i = 0; i < d; ++i)
          A.prov_.parts.push_back(std::make_shared<const FiniteAlgebra>(
              family(field, AlgebraFamily::Chain, 1)));
        A.validate();
        return A;
      }
      case AlgebraFamily::Cw: {
        if (param < 2) throw InputError("cw(n) needs n >= 2");
        const int n = param;  // algebra dimension n + 1
        FiniteAlgebra A = zero_table(field, n + 1);
        for (int j = 0; j < n + 1; ++j) {
          A.c_[A.idx(0, j, j)] = field.one();
          A.c_[A.idx(j, 0, j)] = field.one();
        }
        for (int i = 1; i < n; ++i)
          for (int j = 1; j < n; ++j)
            if (i + j == n) A.c_[A.idx(i, j, n)] = field.one();
        A.labels_[0] = "1";
        for (int i = 1; i < n; ++i) A.labels_[std::size_t(i)] = "x" + std::to_string(i - 1);
        A.labels_[std::size_t(n)] = "x0^2";
        A.unit_ = A.basis_vector(0);
        A.prov_.kind = Kind::Family;
        A.prov_.family = {AlgebraFamily::Cw, param};
        A.validate();
        return A;
      }
      case AlgebraFamily::Trivial: {
        if (param < 1) throw InputError("trivial(m) needs m >= 1");
        const int m = param;
        FiniteAlgebra A = zero_table(field, m + 1);
        for (int j = 0; j < m + 1; ++j) {
          A.c_[A.idx(0, j, j)] = field.one();
          A.c_[A.idx(j, 0, j)] = field.one();
        }
        A.labels_[0] = "1";
        for (int i = 1; i <= m; ++i) A.labels_[std::size_t(i)] = "t" + std::to_string(i);
        A.unit_ = A.basis_vector(0);
        A.prov_.kind = Kind::Family;
        A.prov_.family = {AlgebraFamily::Trivial, param};
        A.validate();
        return A;
      }
    }
    throw InputError("unknown family");
  }

  static FiniteAlgebra direct_sum(const FiniteAlgebra& A, const FiniteAlgebra& B) {
    if (A.field_ != B.field_) throw InputError("direct_sum needs a common field");
    const int n = A.n_ + B.n_;
    FiniteAlgebra S = zero_table(A.field_, n);
    for (int i = 0; i < A.n_; ++i)
      for (int j = 0; j < A.n_; ++j)
        for (int k = 0; k < A.n_; ++k) S.c_[S.idx(i, j, k)] = A.c(i, j, k);
    for (int i = 0; i < B.n_; ++i)
      for (int j = 0; j < B.n_; ++j)
        for (int k = 0; k < B.n_; ++k)
          S.c_[S.idx(A.n_ + i, A.n_ + j, A.n_ + k)] = B.c(i, j, k);
    for (int i = 0; i < A.n_; ++i) S.unit_[std::size_t(i)] = A.unit_[std::size_t(i)];
    for (int i = 0; i < B.n_; ++i) S.unit_[std::size_t(A.n_ + i)] = B.unit_[std::size_t(i)];

    auto parts_of = [](const FiniteAlgebra& X) {
      std::vector<std::shared_ptr<const FiniteAlgebra>> ps;
      if (!X.prov_.parts.empty()) return X.prov_.parts;
      ps.push_back(std::make_shared<const FiniteAlgebra>(X));
      return ps;
    };
    S.prov_.kind = Kind::Sum;
    S.prov_.parts = parts_of(A);
    for (auto& p : parts_of(B)) S.prov_.parts.push_back(p);
    int offset = 0, pi = 0;
    for (const auto& p : S.prov_.parts) {
      for (int i = 0; i < p->dim(); ++i)
        S.labels_[std::size_t(offset + i)] =
            "p" + std::to_string(pi) + "." + p->labels()[std::size_t(i)];
      offset += p->dim();
      ++pi;
    }
    S.validate();
    return S;
  }

  /// Re-express the algebra in a new basis; rows of B are the new basis
  /// vectors in the old coordinates.
  FiniteAlgebra change_of_basis(const Matrix<PrimeField>& B) const {
    if (B.rows() != n_ || B.cols() != n_) throw InputError("basis change has wrong size");
    Matrix<PrimeField> Binv = B.inverse();
    FiniteAlgebra A = zero_table(field_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        auto w = mul(B.row(i), B.row(j));
        // coordinates in the new basis: x with x * B = w
        std::vector<Elem> coords(std::size_t(n_), field_.zero());
        for (int k = 0; k < n_; ++k)
          for (int r = 0; r < n_; ++r)
            coords[std::size_t(k)] = field_.add(
                coords[std::size_t(k)], field_.mul(w[std::size_t(r)], Binv.at(r, k)));
        for (int k = 0; k < n_; ++k) {
          A.c_[A.idx(i, j, k)] = coords[std::size_t(k)];
          A.c_[A.idx(j, i, k)] = coords[std::size_t(k)];
        }
      }
    std::vector<Elem> u(std::size_t(n_), field_.zero());
    for (int k = 0; k < n_; ++k)
      for (int r = 0; r < n_; ++r)
        u[std::size_t(k)] = field_.add(u[std::size_t(k)],
                                       field_.mul(unit_[std::size_t(r)], Binv.at(r, k)));
    A.unit_ = std::move(u);
    for (int i = 0; i < n_; ++i) A.labels_[std::size_t(i)] = "b" + std::to_string(i);
    A.prov_.kind = Kind::Table;
    A.validate();
    return A;
  }

  // -- structure ------------------------------------------------------------

  /// Quotient presentations only: true iff every generator is nilpotent in
  /// the quotient, i.e. the supporting scheme is concentrated at the origin.
  bool is_local_at_origin() const {
    if (prov_.kind != Kind::Quotient || !prov_.quotient)
      throw InputError("is_local_at_origin needs a quotient presentation");
    const auto& q = *prov_.quotient;
    for (int i = 0; i < q.ring->nvars(); ++i) {
      auto power = Polynomial<PrimeField>::variable(q.ring, i, unsigned(n_));
      if (!q.gb->normal_form(power).is_zero()) return false;
    }
    return true;
  }

  /// Locality test: quotient presentations use the origin test; tables use
  /// nilpotency of every non-unit basis vector (sufficient and certified for
  /// the canonical bases used here; a local algebra handed over in a bad
  /// basis is reported non-local rather than guessed at).
  bool is_local() const {
    if (prov_.kind == Kind::Quotient) return is_local_at_origin();
    int u = unit_index();
    if (u < 0) return false;
    for (int i = 0; i < n_; ++i)
      if (i != u && !is_nilpotent(basis_vector(i))) return false;
    return true;
  }

  /// The chain m >= m^2 >= ... >= m^s > 0 for a local algebra, as row spaces.
  std::vector<RowSpace<PrimeField>> maximal_ideal_filtration() const {
    require_local("maximal_ideal_filtration");
    const int u = local_unit_index();
    std::vector<RowSpace<PrimeField>> chain;
    RowSpace<PrimeField> m1(field_, n_);
    for (int i = 0; i < n_; ++i)
      if (i != u) m1.insert(basis_vector(i));
    if (m1.dim() == 0) return chain;  // the one-dimensional algebra
    chain.push_back(m1);
    for (;;) {
      const RowSpace<PrimeField>& prev = chain.back();
      RowSpace<PrimeField> next(field_, n_);
      for (int i = 0; i < n_; ++i) {
        if (i == u) continue;
        for (const auto& w : prev.rows()) next.insert(mul(basis_vector(i), w));
      }
      if (next.dim() == 0) break;
      if (next.dim() >= prev.dim())
        throw InputError("filtration failed to decrease; algebra is not local");
      chain.push_back(std::move(next));
    }
    return chain;
  }

  /// Invertible change of basis whose rows refine the filtration: the unit
  /// first, then a block for each quotient m^k/m^{k+1}, ending in the socle
  /// degree. Prefers original basis vectors, so an already adapted basis maps
  /// to the identity.
  Matrix<PrimeField> adapted_basis() const {
    require_local("adapted_basis");
    auto chain = maximal_ideal_filtration();
    Matrix<PrimeField> B(field_, n_, n_);
    int row = 0;
    auto put = [&](const std::vector<Elem>& v) {
      for (int j = 0; j < n_; ++j) B.at(row, j) = v[std::size_t(j)];
      ++row;
    };
    put(unit_);
    const int s = int(chain.size());
    for (int k = 0; k < s; ++k) {
      RowSpace<PrimeField> accum(field_, n_);
      if (k + 1 < s)
        for (const auto& v : chain[std::size_t(k + 1)].rows()) accum.insert(v);
      const int target = chain[std::size_t(k)].dim();
      for (int i = 0; i < n_ && accum.dim() < target; ++i) {
        auto e = basis_vector(i);
        if (chain[std::size_t(k)].contains(e) && accum.insert(e)) put(e);
      }
      for (const auto& v : chain[std::size_t(k)].rows()) {
        if (accum.dim() >= target) break;
        if (accum.insert(v)) put(v);
      }
    }
    if (row != n_ || !B.is_invertible())
      throw InputError("adapted basis construction failed");
    return B;
  }

  /// socle(A) = (0 : m), the kernel of the stacked multiplication maps by a
  /// generating set of m.
  RowSpace<PrimeField> socle() const {
    require_local("socle");
    const int u = local_unit_index();
    std::vector<Matrix<PrimeField>> blocks;
    for (int i = 0; i < n_; ++i)
      if (i != u) blocks.push_back(mult_matrix(basis_vector(i)));
    RowSpace<PrimeField> out(field_, n_);
    if (blocks.empty()) {  // dim-1 algebra: m = 0, socle is everything
      out.insert(unit_);
      return out;
    }
    Matrix<PrimeField> stacked(field_, int(blocks.size()) * n_, n_);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) stacked.at(int(b) * n_ + i, j) = blocks[b].at(i, j);
    for (auto& v : stacked.kernel_basis()) out.insert(std::move(v));
    return out;
  }

  /// Validates commutativity, the unit law and associativity; throws with a
  /// witness index on violation.
  void validate() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          if (c(i, j, k) != c(j, i, k))
            throw InputError("commutativity violation at (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
    for (int j = 0; j < n_; ++j) {
      auto uj = mul(unit_, basis_vector(j));
      for (int k = 0; k < n_; ++k) {
        Elem expect = (k == j) ? field_.one() : field_.zero();
        if (uj[std::size_t(k)] != expect)
          throw InputError("unit violation at (" + std::to_string(j) + "," +
                           std::to_string(k) + ")");
      }
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          auto left = mul(mul(basis_vector(i), basis_vector(j)), basis_vector(k));
          auto right = mul(basis_vector(i), mul(basis_vector(j), basis_vector(k)));
          if (left != right)
            throw InputError("associativity violation at (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
        }
  }

private:
  PrimeField field_{1048583u};  // placeholder; every constructor overwrites it
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Elem> c_;
  std::vector<Elem> unit_;
  Provenance prov_;

  FiniteAlgebra() = default;

  static FiniteAlgebra zero_table(const PrimeField& field, int n) {
    FiniteAlgebra A;
    A.field_ = field;
    A.n_ = n;
    A.c_.assign(std::size_t(n) * n * n, field.zero());
    A.labels_.assign(std::size_t(n), "");
    A.unit_.assign(std::size_t(n), field.zero());
    return A;
  }

  std::size_t idx(int i, int j, int k) const {
    return (std::size_t(i) * n_ + std::size_t(j)) * n_ + std::size_t(k);
  }

  void require_local(const char* op) const {
    if (!is_local())
      throw InputError(std::string(op) + ": algebra is not local (or not certified local)");
  }

  int local_unit_index() const {
    int u = unit_index();
    if (u < 0) throw InputError("local operations need the unit to be a basis vector");
    return u;
  }
};

}  // namespace charnum

#endif
