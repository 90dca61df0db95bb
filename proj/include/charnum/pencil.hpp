#ifndef CHARNUM_PENCIL_HPP
#define CHARNUM_PENCIL_HPP

#include <string>
#include <utility>
#include <vector>

#include "charnum/algebra.hpp"
#include "charnum/determinant.hpp"
#include "charnum/errors.hpp"
#include "charnum/linalg.hpp"
#include "charnum/polynomial.hpp"

namespace charnum {

/// One k x k minor of the pencil: unordered row/column subset pair (stored
/// with rows <= cols lexicographically; the matrix is symmetric so the
/// transposed pair gives the same form) and its polynomial.
struct MinorEntry {
  std::vector<int> rows;
  std::vector<int> cols;
  Polynomial<PrimeField> form;
};

struct MinorSet {
  int k = 0;
  std::vector<MinorEntry> forms;                               // nonzero minors
  std::vector<std::pair<std::vector<int>, std::vector<int>>> zero_pairs;

  std::vector<Polynomial<PrimeField>> polynomials() const {
    std::vector<Polynomial<PrimeField>> out;
    out.reserve(forms.size());
    for (const auto& e : forms) out.push_back(e.form);
    return out;
  }
};

/// Symmetric m x m matrix of linear forms in D parameters. For an algebra
/// this is the multiplication table: entry (i,j) = sum_k c_{ij}^k x_k.
class SymmetricPencil {
public:
  using Elem = PrimeField::Element;

  static SymmetricPencil from_algebra(const FiniteAlgebra& A) {
    SymmetricPencil P(A.field(), A.dim(), A.dim());
    for (int i = 0; i < P.m_; ++i)
      for (int j = 0; j < P.m_; ++j)
        for (int t = 0; t < P.D_; ++t) P.coeff_at(i, j, t) = A.c(i, j, t);
    P.check_invariants();
    return P;
  }

  /// Pencil sum_t x_t * M_t from a basis of symmetric coefficient matrices.
  /// Throws on asymmetry, and on linear dependence with a kernel certificate.
  static SymmetricPencil from_matrices(const PrimeField& field,
                                       const std::vector<Matrix<PrimeField>>& basis) {
    if (basis.empty()) throw InputError("pencil needs at least one matrix");
    const int m = basis.front().rows();
    const int D = int(basis.size());
    for (const auto& M : basis) {
      if (M.rows() != m || M.cols() != m) throw InputError("pencil matrices differ in size");
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if (M.at(i, j) != M.at(j, i))
            throw InputError("pencil matrix is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
    }
    SymmetricPencil P(field, m, D);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int t = 0; t < D; ++t) P.coeff_at(i, j, t) = basis[std::size_t(t)].at(i, j);
    P.check_invariants();
    return P;
  }

  const PrimeField& field() const { return field_; }
  int size() const { return m_; }
  int parameter_count() const { return D_; }
  const std::vector<std::string>& variables() const { return vars_; }

  Elem coefficient(int i, int j, int t) const {
    return coeff_[(std::size_t(i) * m_ + std::size_t(j)) * D_ + std::size_t(t)];
  }

  const RingPtr<PrimeField>& ring() const { return ring_; }

  Polynomial<PrimeField> entry(int i, int j) const {
    std::vector<Polynomial<PrimeField>::Term> terms;
    for (int t = 0; t < D_; ++t) {
      Elem c = coefficient(i, j, t);
      if (!field_.is_zero(c)) terms.push_back({Monomial::variable(D_, t), c});
    }
    return Polynomial<PrimeField>::from_terms(ring_, std::move(terms));
  }

  std::vector<std::vector<Polynomial<PrimeField>>> entries() const {
    std::vector<std::vector<Polynomial<PrimeField>>> M(
        std::size_t(m_),
        std::vector<Polynomial<PrimeField>>(std::size_t(m_), Polynomial<PrimeField>::zero(ring_)));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) M[std::size_t(i)][std::size_t(j)] = entry(i, j);
    return M;
  }

  /// All k x k minors, one per unordered subset pair; zero minors are dropped
  /// from the form list but their index pairs are recorded.
  MinorSet minors(int k) const {
    if (k < 1 || k > m_) throw InputError("minor size out of range");
    MinorSet out;
    out.k = k;
    auto subsets = k_subsets(m_, k);
    auto M = entries();
    for (std::size_t a = 0; a < subsets.size(); ++a)
      for (std::size_t b = a; b < subsets.size(); ++b) {
        std::vector<std::vector<Polynomial<PrimeField>>> sub(
            std::size_t(k), std::vector<Polynomial<PrimeField>>(std::size_t(k),
                                                                Polynomial<PrimeField>::zero(ring_)));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            sub[std::size_t(i)][std::size_t(j)] =
                M[std::size_t(subsets[a][std::size_t(i)])][std::size_t(subsets[b][std::size_t(j)])];
        auto det = symbolic_determinant(sub);
        if (det.is_zero())
          out.zero_pairs.push_back({subsets[a], subsets[b]});
        else
          out.forms.push_back({subsets[a], subsets[b], std::move(det)});
      }
    return out;
  }

  /// Numeric rank at a parameter point.
  int rank_at(const std::vector<Elem>& point) const {
    Matrix<PrimeField> M(field_, m_, m_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        Elem v = field_.zero();
        for (int t = 0; t < D_; ++t)
          v = field_.add(v, field_.mul(coefficient(i, j, t), point[std::size_t(t)]));
        M.at(i, j) = v;
      }
    return M.rank();
  }

  /// Generic rank, estimated as the maximum over random parameter points.
  int generic_rank(Rng& rng, int samples = 8) const {
    int best = 0;
    for (int s = 0; s < samples; ++s) {
      std::vector<Elem> pt;
      pt.reserve(std::size_t(D_));
      for (int t = 0; t < D_; ++t) pt.push_back(field_.random(rng));
      best = std::max(best, rank_at(pt));
      if (best == m_) break;
    }
    return best;
  }

  Polynomial<PrimeField> determinant() const { return symbolic_determinant(entries()); }

  static std::vector<std::vector<int>> k_subsets(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    cur.resize(std::size_t(k));
    for (int i = 0; i < k; ++i) cur[std::size_t(i)] = i;
    for (;;) {
      out.push_back(cur);
      int i = k - 1;
      while (i >= 0 && cur[std::size_t(i)] == m - k + i) --i;
      if (i < 0) break;
      ++cur[std::size_t(i)];
      for (int j = i + 1; j < k; ++j) cur[std::size_t(j)] = cur[std::size_t(j - 1)] + 1;
    }
    return out;
  }

private:
  PrimeField field_;
  int m_, D_;
  std::vector<std::string> vars_;
  std::vector<Elem> coeff_;
  RingPtr<PrimeField> ring_;

  SymmetricPencil(const PrimeField& f, int m, int D)
      : field_(f), m_(m), D_(D), coeff_(std::size_t(m) * m * D, f.zero()) {
    for (int t = 0; t < D; ++t) vars_.push_back("x" + std::to_string(t));
    ring_ = make_ring(field_, vars_);
  }

  Elem& coeff_at(int i, int j, int t) {
    return coeff_[(std::size_t(i) * m_ + std::size_t(j)) * D_ + std::size_t(t)];
  }

  void check_invariants() const {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        for (int t = 0; t < D_; ++t)
          if (coefficient(i, j, t) != coefficient(j, i, t))
            throw InputError("pencil entry asymmetry at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
    // declared parameter count must match dim of the span of the coefficient
    // matrices; on dependence, report a kernel vector as certificate
    Matrix<PrimeField> flat(field_, D_, m_ * (m_ + 1) / 2);
    for (int t = 0; t < D_; ++t) {
      int col = 0;
      for (int i = 0; i < m_; ++i)
        for (int j = i; j < m_; ++j) flat.at(t, col++) = coefficient(i, j, t);
    }
    if (flat.rank() != D_) {
      auto ker = Matrix<PrimeField>(flat).kernel_basis();
      // kernel of the transpose: dependence among the matrices themselves
      Matrix<PrimeField> tr(field_, m_ * (m_ + 1) / 2, D_);
      for (int t = 0; t < D_; ++t) {
        int col = 0;
        for (int i = 0; i < m_; ++i)
          for (int j = i; j < m_; ++j) tr.at(col++, t) = coefficient(i, j, t);
      }
      auto cert = tr.kernel_basis();
      std::string msg = "pencil coefficient matrices are linearly dependent; kernel vector (";
      if (!cert.empty())
        for (std::size_t t = 0; t < cert[0].size(); ++t)
          msg += (t ? "," : "") + field_.to_string(cert[0][t]);
      msg += ")";
      throw InputError(msg);
    }
  }
};

/// Span of a list of forms inside the space of all degree-k monomials;
/// supports dimension and membership queries for minor-span tests.
class FormSpan {
public:
  explicit FormSpan(const std::vector<Polynomial<PrimeField>>& forms) {
    if (forms.empty()) throw InputError("FormSpan of an empty list");
    ring_ = forms.front().ring();
    for (const auto& f : forms)
      for (const auto& t : f.terms()) note_monomial(t.mono);
    space_ = std::make_unique<RowSpace<PrimeField>>(ring_->field, int(monos_.size()));
    for (const auto& f : forms) space_->insert(vector_of(f));
  }

  int dim() const { return space_->dim(); }

  bool contains(const Polynomial<PrimeField>& f) const {
    for (const auto& t : f.terms())
      if (index_of(t.mono) < 0) return false;
    return space_->contains(vector_of(f));
  }

  bool same_span(const std::vector<Polynomial<PrimeField>>& forms) const {
    FormSpan other(forms);
    if (other.dim() != dim()) return false;
    for (const auto& f : forms)
      if (!contains(f)) return false;
    return true;
  }

private:
  RingPtr<PrimeField> ring_;
  std::vector<Monomial> monos_;
  std::unique_ptr<RowSpace<PrimeField>> space_;

  void note_monomial(const Monomial& m) {
    if (index_of(m) < 0) monos_.push_back(m);
  }

  int index_of(const Monomial& m) const {
    for (std::size_t i = 0; i < monos_.size(); ++i)
      if (monos_[i] == m) return int(i);
    return -1;
  }

  std::vector<PrimeField::Element> vector_of(const Polynomial<PrimeField>& f) const {
    std::vector<PrimeField::Element> v(monos_.size(), ring_->field.zero());
    for (const auto& t : f.terms()) v[std::size_t(index_of(t.mono))] = t.coeff;
    return v;
  }
};

struct DetMonomialReport {
  bool is_monomial = false;
  Polynomial<PrimeField> determinant;
};

/// For a local Gorenstein algebra, the determinant of the multiplication
/// table in an adapted basis is c * (socle coordinate)^dim. Checks exactly
/// that, returning the determinant as witness.
inline DetMonomialReport det_monomial_check(const FiniteAlgebra& A) {
  if (!A.is_local()) throw InputError("det_monomial_check: algebra is not local");
  if (A.socle().dim() != 1) throw InputError("det_monomial_check: algebra is not Gorenstein");
  FiniteAlgebra adapted = A.change_of_basis(A.adapted_basis());
  SymmetricPencil P = SymmetricPencil::from_algebra(adapted);
  Polynomial<PrimeField> det = P.determinant();
  DetMonomialReport report{false, det};
  if (det.term_count() == 1) {
    const Monomial& m = det.leading_monomial();
    report.is_monomial = (m.exponent(A.dim() - 1) == unsigned(A.dim())) &&
                         (m.degree() == unsigned(A.dim()));
  }
  return report;
}

/// Direct sums of local Gorenstein algebras: the determinant decomposes as
/// c * prod_t (socle coordinate of part t)^(dim part t).
inline bool det_monomial_decomposable(const std::vector<FiniteAlgebra>& parts) {
  if (parts.empty()) throw InputError("det_monomial_decomposable: no parts");
  std::vector<FiniteAlgebra> adapted;
  for (const auto& part : parts) {
    if (!part.is_local())
      throw InputError("det_monomial_decomposable: a part is not local");
    if (part.socle().dim() != 1)
      throw InputError("det_monomial_decomposable: a part is not Gorenstein");
    adapted.push_back(part.change_of_basis(part.adapted_basis()));
  }
  FiniteAlgebra sum = adapted.front();
  for (std::size_t t = 1; t < adapted.size(); ++t)
    sum = FiniteAlgebra::direct_sum(sum, adapted[t]);
  Polynomial<PrimeField> det = SymmetricPencil::from_algebra(sum).determinant();
  if (det.term_count() != 1) return false;
  const Monomial& m = det.leading_monomial();
  Monomial expect(sum.dim());
  int offset = 0;
  for (const auto& part : adapted) {
    expect.set_exponent(offset + part.dim() - 1, unsigned(part.dim()));
    offset += part.dim();
  }
  return m == expect;
}

inline bool det_monomial_decomposable(
    const std::vector<std::shared_ptr<const FiniteAlgebra>>& parts) {
  std::vector<FiniteAlgebra> copy;
  for (const auto& p : parts) copy.push_back(*p);
  return det_monomial_decomposable(copy);
}

}  // namespace charnum

#endif
