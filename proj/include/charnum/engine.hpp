#ifndef CHARNUM_ENGINE_HPP
#define CHARNUM_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "charnum/algebra.hpp"
#include "charnum/combinat.hpp"
#include "charnum/groebner.hpp"
#include "charnum/linalg.hpp"
#include "charnum/pencil.hpp"
#include "charnum/rng.hpp"
#include "charnum/types.hpp"

namespace charnum {

/// Builders: the same pencil (or algebra) instantiated over any prime field,
/// so that independent runs over independent primes are honest re-runs.
using PencilFactory = std::function<SymmetricPencil(const PrimeField&)>;
using AlgebraFactory = std::function<FiniteAlgebra(const PrimeField&)>;

struct EngineConfig {
  std::vector<std::uint32_t> primes;  // empty: draw two random 31-bit primes
  std::uint64_t seed = 0;
  int max_retries = 5;
  Budget budget{1'000'000, 4'000'000'000ULL};
  bool deep_validate = false;
  int jobs = 1;
  int rank_samples = 8;
  std::size_t max_indices = 2000;

  std::vector<std::uint32_t> resolved_primes() const {
    if (!primes.empty()) return primes;
    Rng rng(derive_seed(seed, {0x9a17e5ULL, 0}));
    std::vector<std::uint32_t> out;
    while (out.size() < 2) {
      std::uint32_t p = PrimeField::random_prime(rng);
      if (out.empty() || out[0] != p) out.push_back(p);
    }
    return out;
  }
};

namespace engine_detail {

inline std::uint64_t index_tag(const CharIndex& b) {
  std::uint64_t h = 1469598103934665603ull;
  for (int x : b) h = (h ^ std::uint64_t(x + 1)) * 1099511628211ull;
  return h;
}

/// Everything fixed for one prime: the pencil, its generic rank, and the
/// minor sets needed for slicing and saturating. Read-only once built, so
/// worker threads can share it.
struct PrimeContext {
  std::uint32_t prime;
  PrimeField field;
  SymmetricPencil pencil;
  int kstar = 0;       // generic rank
  int sat_size = 0;    // min(kstar, m-1); minor size used for saturation
  std::map<int, MinorSet> minor_sets;

  PrimeContext(std::uint32_t p, const PencilFactory& factory, const EngineConfig& cfg)
      : prime(p), field(p), pencil(factory(field)) {
    Rng rank_rng(derive_seed(cfg.seed, {p, 0xdeadbeefULL}));
    kstar = pencil.generic_rank(rank_rng, cfg.rank_samples);
    sat_size = std::min(kstar, pencil.size() - 1);
    for (int k = 1; k <= sat_size; ++k) minor_sets.emplace(k, pencil.minors(k));
  }
};

/// One randomized run: slice, chart, saturate, count. Returns nothing when
/// the sliced system came out positive-dimensional (resample upstream).
inline std::optional<std::size_t> run_attempt(const PrimeContext& ctx, const CharIndex& b,
                                              const EngineConfig& cfg, std::uint64_t attempt) {
  const PrimeField& F = ctx.field;
  const int D = ctx.pencil.parameter_count();
  if (D == 1) return std::size_t(1);  // a single point of maximal rank

  Rng rng(derive_seed(cfg.seed, {ctx.prime, attempt, index_tag(b)}));

  std::vector<Polynomial<PrimeField>> slices;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    const auto& ms = ctx.minor_sets.at(int(i) + 1);
    auto polys = ms.polynomials();
    for (int rep = 0; rep < b[i]; ++rep)
      slices.push_back(random_combination(polys, rng));
  }
  auto sat_polys = ctx.minor_sets.at(ctx.sat_size).polynomials();
  Polynomial<PrimeField> g = random_combination(sat_polys, rng);

  // random affine chart: invertible change of parameters, last coordinate 1
  auto R = Matrix<PrimeField>::random_invertible(F, D, rng);
  std::vector<std::string> affine_vars;
  for (int t = 0; t + 1 < D; ++t) affine_vars.push_back("y" + std::to_string(t));
  RingPtr<PrimeField> affine = make_ring(F, affine_vars);
  std::vector<Polynomial<PrimeField>> images;
  for (int j = 0; j < D; ++j) {
    std::vector<Polynomial<PrimeField>::Term> terms;
    for (int t = 0; t + 1 < D; ++t) {
      auto c = R.at(j, t);
      if (!F.is_zero(c)) terms.push_back({Monomial::variable(D - 1, t), c});
    }
    auto c = R.at(j, D - 1);
    if (!F.is_zero(c)) terms.push_back({Monomial(D - 1), c});
    images.push_back(Polynomial<PrimeField>::from_terms(affine, std::move(terms)));
  }

  std::vector<Polynomial<PrimeField>> affine_slices;
  for (const auto& s : slices) affine_slices.push_back(s.substitute(affine, images));
  Polynomial<PrimeField> affine_g = g.substitute(affine, images);

  Ideal<PrimeField> sliced(affine, std::move(affine_slices));
  Ideal<PrimeField> saturated = saturate_by_element(sliced, affine_g, cfg.budget);
  GroebnerBasis<PrimeField> gb = buchberger(saturated, cfg.budget);
  if (!gb.is_zero_dimensional()) return std::nullopt;
  std::size_t count = gb.quotient_dimension();

  if (cfg.deep_validate) {
    // recount under a different monomial order after a random linear change
    auto R2 = Matrix<PrimeField>::random_invertible(F, D - 1, rng);
    RingPtr<PrimeField> shuffled =
        make_ring(F, affine_vars, MonomialOrder::block(std::max(1, (D - 1) / 2)));
    std::vector<Polynomial<PrimeField>> images2;
    for (int j = 0; j + 1 < D; ++j) {
      std::vector<Polynomial<PrimeField>::Term> terms;
      for (int t = 0; t + 1 < D; ++t) {
        auto c = R2.at(j, t);
        if (!F.is_zero(c)) terms.push_back({Monomial::variable(D - 1, t), c});
      }
      images2.push_back(Polynomial<PrimeField>::from_terms(shuffled, std::move(terms)));
    }
    std::vector<Polynomial<PrimeField>> moved;
    for (const auto& p : saturated.generators()) moved.push_back(p.substitute(shuffled, images2));
    GroebnerBasis<PrimeField> gb2 = buchberger(Ideal<PrimeField>(shuffled, std::move(moved)),
                                               cfg.budget);
    if (!gb2.is_zero_dimensional() || gb2.quotient_dimension() != count)
      throw DisagreementError("deep validation recount mismatch");
  }
  return count;
}

/// Run one index over one prime with the degeneracy-resampling loop.
/// Returns (value, truncated_flag).
inline std::pair<mpz_class, bool> run_prime(const PrimeContext& ctx, const CharIndex& b,
                                            const EngineConfig& cfg) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] > 0 && int(i) + 1 > ctx.kstar) return {mpz_class(0), true};
  for (int attempt = 0; attempt < std::max(1, cfg.max_retries); ++attempt) {
    auto res = run_attempt(ctx, b, cfg, std::uint64_t(attempt));
    if (res) return {mpz_class(static_cast<unsigned long>(*res)), false};
  }
  throw ResourceLimitError("slice system stayed positive-dimensional after " +
                           std::to_string(cfg.max_retries) + " resamples");
}

}  // namespace engine_detail

/// The intersection engine. Validates the index, detects the truncated
/// regime, slices with random combinations of minors, saturates away the
/// low-rank locus on a random affine chart and counts solutions; repeats over
/// independent primes until two runs agree.
class Engine {
public:
  Engine(PencilFactory factory, EngineConfig cfg)
      : factory_(std::move(factory)), cfg_(std::move(cfg)) {
    primes_ = cfg_.resolved_primes();
    if (primes_.empty()) throw InputError("engine needs at least one prime");
    for (std::uint32_t p : primes_) contexts_.emplace_back(p, factory_, cfg_);
    const auto& first = contexts_.front();
    for (std::size_t i = 1; i < contexts_.size(); ++i) {
      if (contexts_[i].pencil.size() != first.pencil.size() ||
          contexts_[i].pencil.parameter_count() != first.pencil.parameter_count())
        throw DisagreementError("pencil shape differs between primes");
      if (contexts_[i].kstar != first.kstar)
        throw DisagreementError("generic rank differs between primes");
    }
  }

  int pencil_size() const { return contexts_.front().pencil.size(); }
  int parameter_count() const { return contexts_.front().pencil.parameter_count(); }
  int degree() const { return parameter_count() - 1; }
  int generic_rank() const { return contexts_.front().kstar; }
  const EngineConfig& config() const { return cfg_; }

  void validate_index(const CharIndex& b) const {
    if (int(b.size()) != pencil_size() - 1 && !(pencil_size() == 1 && b.empty()))
      throw InputError("index must have " + std::to_string(pencil_size() - 1) + " entries");
    long sum = index_sum(b);
    if (sum != degree())
      throw InputError("index sum " + std::to_string(sum) + " != " +
                       std::to_string(degree()));
  }

  CharValue characteristic_number(const CharIndex& b) const {
    validate_index(b);
    {
      // results are cached by (prime set, seed, index); the engine instance
      // pins the primes and seed, so the index is the key. Safe for
      // concurrent insert-or-read from the multidegree worker pool.
      std::scoped_lock lock(cache_mutex_);
      auto it = cache_.find(b);
      if (it != cache_.end()) return it->second;
    }
    CharValue out;
    out.method = CharValue::Method::Engine;

    std::vector<std::pair<mpz_class, bool>> results;
    std::vector<std::uint32_t> used;
    auto run_for = [&](const engine_detail::PrimeContext& ctx) {
      results.push_back(engine_detail::run_prime(ctx, b, cfg_));
      used.push_back(ctx.prime);
    };
    for (const auto& ctx : contexts_) run_for(ctx);

    // agreement: some value must occur at least twice; draw extra primes on
    // persistent disagreement, up to max_retries extra runs
    Rng extra_rng(derive_seed(cfg_.seed, {0xe17a, engine_detail::index_tag(b)}));
    std::vector<engine_detail::PrimeContext> extras;
    auto majority = [&]() -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < results.size(); ++i) {
        int hits = 0;
        for (std::size_t j = 0; j < results.size(); ++j)
          if (results[j].first == results[i].first) ++hits;
        if (hits >= 2) return i;
      }
      return std::nullopt;
    };
    std::optional<std::size_t> winner = results.size() == 1 ? std::optional<std::size_t>(0)
                                                            : majority();
    int spare = cfg_.max_retries;
    while (!winner && spare-- > 0) {
      std::uint32_t p = PrimeField::random_prime(extra_rng);
      bool fresh = true;
      for (auto q : used)
        if (q == p) fresh = false;
      if (!fresh) continue;
      extras.emplace_back(p, factory_, cfg_);
      run_for(extras.back());
      winner = majority();
    }
    if (!winner)
      throw DisagreementError("persistent cross-prime disagreement for an engine value");

    out.value = results[*winner].first;
    out.truncated = results[*winner].second;
    out.agreement = results.size() >= 2;
    for (std::size_t j = 0; j < results.size(); ++j)
      if (results[j].first == results[*winner].first) out.primes.push_back(used[j]);
    {
      std::scoped_lock lock(cache_mutex_);
      cache_.emplace(b, out);
    }
    return out;
  }

  CharSequence characteristic_sequence() const {
    CharSequence seq;
    const int m = pencil_size();
    const int d = degree();
    if (m == 1) {
      seq.values.push_back(characteristic_number({}));
      return seq;
    }
    for (int i = 0; i <= d; ++i) {
      CharIndex b(std::size_t(m - 1), 0);
      b[0] += d - i;
      b[std::size_t(m - 2)] += i;
      seq.values.push_back(characteristic_number(b));
    }
    if (seq.values.front().value != 1)
      throw DisagreementError("first characteristic number must be 1");
    return seq;
  }

  MultidegreeTable multidegree() const {
    const int m = pencil_size();
    const int d = degree();
    MultidegreeTable table;
    table.d = d;
    table.positions = m - 1;
    auto indices = weak_compositions(d, m - 1);
    if (indices.size() > cfg_.max_indices)
      throw ResourceLimitError("multidegree needs " + std::to_string(indices.size()) +
                               " indices, budget allows " + std::to_string(cfg_.max_indices));
    table.values.resize(indices.size());
    const int jobs = std::max(1, cfg_.jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors;
    errors.resize(std::size_t(jobs));
    auto worker = [&](int w) {
      try {
        for (;;) {
          std::size_t at = next.fetch_add(1);
          if (at >= indices.size()) break;
          table.values[at] = {indices[at], characteristic_number(indices[at])};
        }
      } catch (...) {
        errors[std::size_t(w)] = std::current_exception();
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    return table;
  }

  /// Multinomial-weighted polynomial coefficients of the degree form.
  static std::vector<std::pair<CharIndex, mpz_class>> weighted_polynomial(
      const MultidegreeTable& table) {
    std::vector<std::pair<CharIndex, mpz_class>> out;
    for (const auto& [index, v] : table.values)
      out.push_back({index, multinomial(index) * v.value});
    return out;
  }

private:
  PencilFactory factory_;
  EngineConfig cfg_;
  std::vector<std::uint32_t> primes_;
  std::vector<engine_detail::PrimeContext> contexts_;
  mutable std::mutex cache_mutex_;
  mutable std::map<CharIndex, CharValue> cache_;
};

/// Measures (without asserting) whether the full table satisfies the index
/// reversal symmetry c_{b_1..b_k} = c_{b_k..b_1}.
inline bool measure_reversal_symmetry(const MultidegreeTable& table) {
  for (const auto& [index, v] : table.values) {
    CharIndex rev(index.rbegin(), index.rend());
    if (table.at(rev).value != v.value) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free-function layer matching the operation surface.
// ---------------------------------------------------------------------------

inline CharValue characteristic_number(const PencilFactory& f, const CharIndex& b,
                                       const EngineConfig& cfg) {
  return Engine(f, cfg).characteristic_number(b);
}

inline CharSequence characteristic_sequence(const PencilFactory& f, const EngineConfig& cfg) {
  return Engine(f, cfg).characteristic_sequence();
}

inline MultidegreeTable multidegree(const PencilFactory& f, const EngineConfig& cfg) {
  return Engine(f, cfg).multidegree();
}

/// Characteristic sequence of a direct sum from the sequences of the parts,
/// by the join identity mu_m = sum_{k+l+1=m} mu1_k mu2_l + sum_{k+l=m}
/// mu1_k mu2_l. Valid when both subspaces contain invertible matrices; the
/// caller asserts Gorenstein provenance and the result records it.
inline CharSequence join_sequence(const CharSequence& mu1, const CharSequence& mu2) {
  if (mu1.values.empty() || mu2.values.empty())
    throw InputError("join_sequence of an empty sequence");
  const std::size_t len1 = mu1.values.size(), len2 = mu2.values.size();
  CharSequence out;
  out.values.resize(len1 + len2);
  std::vector<std::uint32_t> primes;
  for (const auto& s : {mu1, mu2})
    for (const auto& v : s.values)
      for (auto p : v.primes)
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  bool agree = true;
  for (const auto& s : {mu1, mu2})
    for (const auto& v : s.values) agree = agree && v.agreement;
  for (std::size_t m = 0; m < len1 + len2; ++m) {
    mpz_class acc = 0;
    for (std::size_t k = 0; k < len1; ++k)
      for (std::size_t l = 0; l < len2; ++l) {
        if (k + l + 1 == m) acc += mu1.values[k].value * mu2.values[l].value;
        if (k + l == m) acc += mu1.values[k].value * mu2.values[l].value;
      }
    CharValue v;
    v.value = acc;
    v.method = CharValue::Method::Recursion;
    v.primes = primes;
    v.agreement = agree;
    out.values[m] = std::move(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classifiers
// ---------------------------------------------------------------------------

struct GorensteinReport {
  bool gorenstein = false;
  bool det_route = false;                  // pencil determinant nonzero
  std::optional<bool> last_route;          // last characteristic number == 1
  std::optional<bool> symmetry_route;      // sequence symmetric
  std::optional<CharValue> last_value;
  std::optional<CharSequence> sequence;
};

struct ClassifyOptions {
  bool check_last = true;
  bool check_symmetry = true;
};

inline GorensteinReport classify_gorenstein(const AlgebraFactory& af, const EngineConfig& cfg,
                                            const ClassifyOptions& opts = {}) {
  GorensteinReport report;
  std::optional<bool> det_nonzero;
  for (std::uint32_t p : cfg.resolved_primes()) {
    PrimeField F(p);
    bool nz = !SymmetricPencil::from_algebra(af(F)).determinant().is_zero();
    if (det_nonzero && *det_nonzero != nz)
      throw DisagreementError("determinant route disagrees between primes");
    det_nonzero = nz;
  }
  report.det_route = *det_nonzero;
  report.gorenstein = report.det_route;

  PencilFactory pf = [af](const PrimeField& F) {
    return SymmetricPencil::from_algebra(af(F));
  };
  if (opts.check_last) {
    Engine eng(pf, cfg);
    const int m = eng.pencil_size();
    CharValue last;
    if (m == 1) {
      last = eng.characteristic_number({});
    } else {
      CharIndex b(std::size_t(m - 1), 0);
      b[std::size_t(m - 2)] = eng.degree();
      last = eng.characteristic_number(b);
    }
    if (last.value != 0 && last.value != 1)
      throw DisagreementError("last characteristic number is neither 0 nor 1");
    report.last_value = last;
    report.last_route = (last.value == 1);
  }
  if (opts.check_symmetry) {
    CharSequence seq = characteristic_sequence(pf, cfg);
    report.sequence = seq;
    report.symmetry_route = seq.symmetric();
  }
  if ((report.last_route && *report.last_route != report.det_route) ||
      (report.symmetry_route && *report.symmetry_route != report.det_route))
    throw DisagreementError("gorenstein classification routes disagree");
  return report;
}

struct CompleteIntersectionReport {
  bool complete_intersection = false;
  mpz_class value;
  mpz_class bound;
  mpz_class slack;
  CharValue raw;
};

/// CI criterion: a local algebra of dimension n is a complete intersection
/// iff the characteristic number at (0, n-1, 0, ..., 0) attains 2^(n-1) - n.
inline CompleteIntersectionReport classify_complete_intersection(const AlgebraFactory& af,
                                                                 const EngineConfig& cfg) {
  auto primes = cfg.resolved_primes();
  PrimeField F0(primes.front());
  FiniteAlgebra A0 = af(F0);
  if (!A0.is_local())
    throw InputError("complete intersection criterion needs a local algebra");
  const int n = A0.dim();
  if (n < 3)
    throw InputError("complete intersection criterion needs dimension >= 3");
  PencilFactory pf = [af](const PrimeField& F) {
    return SymmetricPencil::from_algebra(af(F));
  };
  CharIndex b(std::size_t(n - 1), 0);
  b[1] = n - 1;
  CompleteIntersectionReport report;
  report.raw = characteristic_number(pf, b, cfg);
  report.value = report.raw.value;
  report.bound = pow2(static_cast<unsigned long>(n - 1)) - n;
  report.slack = report.bound - report.value;
  if (report.slack < 0)
    throw DisagreementError("characteristic number exceeds the complete intersection bound");
  report.complete_intersection = (report.slack == 0);
  return report;
}

}  // namespace charnum

#endif
