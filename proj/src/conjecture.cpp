#include "ffdiamond/conjecture.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <sstream>

#include "ffdiamond/numtheory.hpp"
#include "ffdiamond/textio.hpp"

namespace ffd {

namespace {

std::uint64_t generator_count(std::uint64_t p, std::uint64_t k) {
  __int128 acc = 0;
  for (std::uint64_t d : divisors(k)) {
    auto pd = checked_pow(p, d);
    if (!pd) fail(Errc::CardinalityCapExceeded, "p^k exceeds 64 bits");
    acc += static_cast<__int128>(mobius(k / d)) * static_cast<__int128>(*pd);
  }
  return static_cast<std::uint64_t>(acc);
}

CtxPtr make_task_field(std::uint64_t p, std::uint64_t k, std::uint64_t cap) {
  CtxPtr ctx = FieldCtx::make_prime(p);
  return k == 1 ? ctx : FieldCtx::canonical_extension(ctx, k, cap);
}

// Visit the generators of GF(p^k) inside `field` in ascending rank order;
// stop when fn returns true.
template <class Fn>
void for_each_generator(const CtxPtr& field, std::uint64_t p, std::uint64_t k, Fn&& fn) {
  if (field->cardinality() <= (1ull << 16)) {
    for (auto& a : degree_generators(field, p, k))
      if (fn(a)) return;
    return;
  }
  for (std::uint64_t r = 0; r < field->cardinality(); ++r) {
    FieldElem a = field->from_rank(r);
    if (subfield_degree(a, p) != k) continue;
    if (fn(a)) return;
  }
}

void validate_or_throw(const Witness& w, std::uint64_t p, std::uint64_t k, std::uint64_t l) {
  auto defects = witness_defects(w, p, k, l);
  if (!defects.empty())
    fail(Errc::InternalError, "search produced an invalid witness: " + defects.front());
}

Witness artin_schreier_in_ctx(const CtxPtr& field, std::uint64_t p, std::uint64_t k) {
  std::optional<FieldElem> a;
  for_each_generator(field, p, k, [&](const FieldElem& cand) {
    if (trace_to(cand, p).is_one()) {
      a = cand;
      return true;
    }
    return false;
  });
  if (!a) fail(Errc::InternalError, "no generator with absolute trace 1 found");
  // f = x^p - x - a
  std::vector<FieldElem> coeffs(p + 1, field->zero());
  coeffs[0] = -*a;
  coeffs[1] = -field->one();
  coeffs[p] = field->one();
  Witness w{Poly(field, std::move(coeffs)), *a, "artin_schreier", kDefaultSeed};
  validate_or_throw(w, p, k, p);
  return w;
}

std::optional<Witness> binomial_in_ctx(const CtxPtr& field, std::uint64_t p, std::uint64_t k,
                                       std::uint64_t l, std::uint64_t seed) {
  const std::uint64_t group = field->cardinality() - 1;
  for (const auto& [t, _] : factorize(l))
    if (group % t != 0) return std::nullopt;
  if (l % 4 == 0 && field->cardinality() % 4 != 1) return std::nullopt;

  FieldElem a = field->zero();
  if (field->cardinality() <= (1ull << 16)) {
    a = primitive_element(field);
  } else {
    Rng rng(seed);
    auto fac = factorize(group);
    for (;;) {
      FieldElem cand = field->from_rank(1 + rng.below(field->cardinality() - 1));
      bool primitive = true;
      for (const auto& [t, _] : fac)
        if (cand.pow(group / t).is_one()) {
          primitive = false;
          break;
        }
      if (primitive) {
        a = cand;
        break;
      }
    }
  }
  // f = x^l - a
  std::vector<FieldElem> coeffs(l + 1, field->zero());
  coeffs[0] = -a;
  coeffs[l] = field->one();
  Witness w{Poly(field, std::move(coeffs)), a, "binomial", seed};
  validate_or_throw(w, p, k, l);
  return w;
}

}  // namespace

std::vector<std::string> witness_defects(const Witness& w, std::uint64_t p, std::uint64_t k,
                                         std::uint64_t l) {
  std::vector<std::string> out;
  const CtxPtr& ctx = w.f.ctx();
  if (!ctx || ctx->characteristic() != p || ctx->total_degree() != k) {
    out.push_back("witness field is not GF(p^k)");
    return out;
  }
  if (!w.f.is_monic() || w.f.degree() != static_cast<int>(l))
    out.push_back("f is not monic of degree l");
  else if (!is_irreducible(w.f))
    out.push_back("f is reducible");
  for (std::uint64_t i = 1; i <= l; ++i) {
    FieldElem c = w.f.coeff(i);
    if (!(c.pow(p) == c)) {
      out.push_back("coefficient of x^" + std::to_string(i) + " lies outside the prime field");
      break;
    }
  }
  FieldElem f0 = w.f.coeff(0);
  if (!generates(f0, p, k)) out.push_back("f(0) does not generate GF(p^k) over GF(p)");
  if (!(w.c0 == -f0)) out.push_back("stored c0 is not -f(0)");
  return out;
}

SearchResult find_witness_in_ctx(const CtxPtr& field, const SearchTask& t, Strategy strategy,
                                 std::uint64_t seed, const Limits& lim) {
  if (t.k == 0 || t.l == 0) fail(Errc::PreconditionViolated, "k, l must be >= 1");
  if (t.l > lim.budget) fail(Errc::BudgetExceeded, "witness degree exceeds the budget");
  if (!field || field->characteristic() != t.p || field->total_degree() != t.k)
    fail(Errc::CtxMismatch, "field is not a GF(p^k) tower for the task");

  SearchResult res;
  if (strategy != Strategy::exhaustive) {
    if (t.l == t.p) {
      res.witness = artin_schreier_in_ctx(field, t.p, t.k);
      return res;
    }
    if (auto w = binomial_in_ctx(field, t.p, t.k, t.l, seed)) {
      res.witness = std::move(w);
      return res;
    }
    if (strategy == Strategy::fast_only)
      fail(Errc::NoFastPath, "neither constructive path applies to (p,k,l)=(" +
                                 std::to_string(t.p) + "," + std::to_string(t.k) + "," +
                                 std::to_string(t.l) + ")");
  }

  auto cspace = checked_pow(t.p, t.l - 1);
  if (!cspace) fail(Errc::BudgetExceeded, "coefficient space exceeds 64 bits");
  auto space = checked_mul(*cspace, generator_count(t.p, t.k));
  if (!space || *space > lim.budget)
    fail(Errc::BudgetExceeded, "exhaustive witness space exceeds the enumeration budget");

  std::vector<FieldElem> gens;
  const bool materialize = field->cardinality() <= (1ull << 16);
  if (materialize) gens = degree_generators(field, t.p, t.k);

  for (std::uint64_t cr = 0; cr < *cspace; ++cr) {
    // non-constant coefficients: digits of cr, c_1 fastest
    std::vector<FieldElem> coeffs(t.l + 1, field->zero());
    std::uint64_t v = cr;
    for (std::uint64_t i = 1; i < t.l; ++i) {
      coeffs[i] = field->from_residue(v % t.p);
      v /= t.p;
    }
    coeffs[t.l] = field->one();
    std::optional<Witness> found;
    auto try_c0 = [&](const FieldElem& c0) {
      std::vector<FieldElem> c = coeffs;
      c[0] = -c0;
      Poly f(field, std::move(c));
      ++res.tested;
      if (is_irreducible(f)) {
        found = Witness{std::move(f), c0, "exhaustive", seed};
        return true;
      }
      return false;
    };
    if (materialize) {
      for (const auto& c0 : gens)
        if (try_c0(c0)) break;
    } else {
      for_each_generator(field, t.p, t.k, try_c0);
    }
    if (found) {
      validate_or_throw(*found, t.p, t.k, t.l);
      res.witness = std::move(found);
      return res;
    }
  }
  res.exhausted = true;
  return res;
}

SearchResult find_witness(const SearchTask& t, Strategy strategy, std::uint64_t seed,
                          const Limits& lim) {
  CtxPtr field = make_task_field(t.p, t.k, lim.cap);
  return find_witness_in_ctx(field, t, strategy, seed, lim);
}

Witness artin_schreier_witness(std::uint64_t p, std::uint64_t k) {
  return artin_schreier_in_ctx(make_task_field(p, k, UINT64_MAX), p, k);
}

std::optional<Witness> binomial_witness(std::uint64_t p, std::uint64_t k, std::uint64_t l,
                                        std::uint64_t seed) {
  return binomial_in_ctx(make_task_field(p, k, UINT64_MAX), p, k, l, seed);
}

// ---------------------------------------------------------------------------
// range sweep

std::vector<SearchTask> enumerate_tasks(std::uint64_t bound) {
  std::vector<SearchTask> out;
  for (std::uint64_t p = 2; p <= bound / p; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t max_e = 0, pe = 1;
    while (pe <= bound / p) {
      pe *= p;
      ++max_e;
    }
    for (std::uint64_t k = 1; k <= max_e; ++k)
      for (std::uint64_t l = 1; k * l <= max_e; ++l)
        if (k * l >= 2) out.push_back({p, k, l});
  }
  std::sort(out.begin(), out.end(), [](const SearchTask& a, const SearchTask& b) {
    const std::uint64_t pa = *checked_pow(a.p, a.k * a.l);
    const std::uint64_t pb = *checked_pow(b.p, b.k * b.l);
    return std::tie(pa, a.p, a.k, a.l) < std::tie(pb, b.p, b.k, b.l);
  });
  return out;
}

SweepReport verify_range(std::uint64_t bound, unsigned shards, std::uint64_t seed,
                         const Limits& lim) {
  if (shards == 0) shards = 1;
  SweepReport rep;
  rep.bound = bound;
  rep.shards = shards;
  rep.seed = seed;
  std::vector<SearchTask> tasks = enumerate_tasks(bound);
  rep.rows.resize(tasks.size());

  auto run_shard = [&](unsigned shard) {
    for (std::size_t i = shard; i < tasks.size(); i += shards) {
      const SearchTask& t = tasks[i];
      const auto t0 = std::chrono::steady_clock::now();
      SearchResult r = find_witness(t, Strategy::automatic, derive_seed(seed, t.p, t.k, t.l), lim);
      const auto t1 = std::chrono::steady_clock::now();
      SweepRow row;
      row.p = t.p;
      row.k = t.k;
      row.l = t.l;
      row.pkl = *checked_pow(t.p, t.k * t.l);
      row.elapsed_ms = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
      if (r.exhausted) {
        row.exhausted = true;
        row.strategy = "EXHAUSTED";
        row.f_text = "-";
        row.c0_text = "-";
      } else {
        row.strategy = r.witness->strategy;
        row.f_text = format_poly(r.witness->f);
        row.c0_text = format_elem(r.witness->c0);
      }
      rep.rows[i] = std::move(row);
    }
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::future<void>> futs;
    for (unsigned s = 0; s < shards; ++s)
      futs.push_back(std::async(std::launch::async, run_shard, s));
    for (auto& f : futs) f.get();
  }
  for (const auto& r : rep.rows)
    if (r.exhausted) ++rep.exhausted_count;
  return rep;
}

std::string SweepReport::text() const {
  std::ostringstream os;
  os << "# conjecture sweep bound=" << bound << " seed=" << seed << " shards=" << shards << "\n";
  os << "# p k l p^kl strategy witness_f witness_c0 elapsed_ms\n";
  for (const auto& r : rows)
    os << r.p << ' ' << r.k << ' ' << r.l << ' ' << r.pkl << ' ' << r.strategy << ' ' << r.f_text
       << ' ' << r.c0_text << ' ' << r.elapsed_ms << "\n";
  os << "# tasks " << rows.size() << " witnessed " << rows.size() - exhausted_count
     << " exhausted " << exhausted_count << "\n";
  if (exhausted_count)
    os << "!!! COUNTEREXAMPLE: some (p,k,l) admits no witness; see EXHAUSTED rows above\n";
  return os.str();
}

nlohmann::ordered_json SweepReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["bound"] = bound;
  j["seed"] = seed;
  j["tasks"] = rows.size();
  j["exhausted_count"] = exhausted_count;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["p"] = r.p;
    row["k"] = r.k;
    row["l"] = r.l;
    row["pkl"] = r.pkl;
    row["strategy"] = r.strategy;
    row["f"] = r.f_text;
    row["c0"] = r.c0_text;
    row["exhausted"] = r.exhausted;
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j;
}

// ---------------------------------------------------------------------------
// four-way equivalence and tightness

namespace {

struct ShiftedIrreducible {
  Poly f;                         // over the GF(q^{m/m1}) node
  std::vector<std::uint64_t> c;   // non-constant coefficient ranks (c_1..c_{m1-1})
};

// First monic irreducible x^{m1} + sum c_i x^i + f0 over GF(q^{m/m1}) with
// c_i in GF(q) and f0 generating GF(q^{m/m1}) over GF(q); scan order is
// (coefficient rank, f0 rank) ascending.
std::optional<ShiftedIrreducible> shifted_irreducible_witness(const CtxPtr& base, std::uint64_t m,
                                                              const Limits& lim) {
  const std::uint64_t q = base->cardinality();
  const std::uint64_t m1 = smallest_prime_factor(m);
  const std::uint64_t msub = m / m1;
  CtxPtr node = FieldCtx::canonical_extension(base, msub, lim.cap);
  std::vector<FieldElem> f0s = degree_generators(node, q, msub);
  auto cspace = checked_pow(q, m1 - 1);
  if (!cspace) fail(Errc::BudgetExceeded, "coefficient space exceeds 64 bits");
  auto total = checked_mul(*cspace, f0s.size());
  if (!total || *total > lim.budget)
    fail(Errc::BudgetExceeded, "shifted-irreducible space exceeds the enumeration budget");

  for (std::uint64_t cr = 0; cr < *cspace; ++cr) {
    std::vector<FieldElem> coeffs(m1 + 1, node->zero());
    std::vector<std::uint64_t> digits(m1 >= 1 ? m1 - 1 : 0, 0);
    std::uint64_t v = cr;
    for (std::uint64_t i = 1; i < m1; ++i) {
      digits[i - 1] = v % q;
      coeffs[i] = lift_to(base->from_rank(v % q), node);
      v /= q;
    }
    coeffs[m1] = node->one();
    for (const auto& f0 : f0s) {
      std::vector<FieldElem> c = coeffs;
      c[0] = f0;
      Poly f(node, std::move(c));
      if (is_irreducible(f)) return ShiftedIrreducible{std::move(f), digits};
    }
  }
  return std::nullopt;
}

// psi(x) * y as a bivariate polynomial.
BivarPoly psi_times_y(const Poly& psi) {
  std::vector<std::vector<FieldElem>> rows(2);
  rows[1] = psi.coeffs();
  return BivarPoly(psi.ctx(), std::move(rows));
}

}  // namespace

nlohmann::ordered_json FourWay::to_json() const {
  nlohmann::ordered_json j;
  j["via_construction"] = via_construction;
  j["via_injectivity"] = via_injectivity;
  j["via_value_set"] = via_value_set;
  j["via_shifted_irreducible"] = via_shifted_irreducible;
  j["consistent"] = consistent;
  j["psi"] = psi_text;
  j["value_witness"] = value_text;
  j["f"] = f_text;
  j["phi"] = phi_text;
  j["triple"] = triple_text;
  return j;
}

FourWay four_way_equivalence(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                             const Limits& lim) {
  if (m < 2 || n < 2 || std::gcd(m, n) != 1)
    fail(Errc::PreconditionViolated, "four-way equivalence needs coprime m, n > 1");
  const std::uint64_t q = base->cardinality();
  const std::uint64_t m1 = smallest_prime_factor(m);
  const std::uint64_t msub = m / m1;
  FourWay rep;

  auto cspace = checked_pow(q, m1 - 1);
  if (!cspace || *cspace > lim.budget)
    fail(Errc::BudgetExceeded, "psi family exceeds the enumeration budget");

  // (injectivity failure): scan the normalized psi family.
  std::vector<Poly> failing_psis;
  for (std::uint64_t cr = 0; cr < *cspace; ++cr) {
    std::vector<FieldElem> coeffs(m1 + 1, base->zero());
    std::uint64_t v = cr;
    for (std::uint64_t i = 1; i < m1; ++i) {
      coeffs[i] = base->from_rank(v % q);
      v /= q;
    }
    coeffs[m1] = base->one();
    Poly psi(base, std::move(coeffs));
    RestrictedInjectivity r = restricted_injectivity(psi, m, lim);
    if (!r.holds) {
      if (failing_psis.empty()) rep.psi_text = format_poly(psi);
      failing_psis.push_back(std::move(psi));
    }
  }
  rep.via_injectivity = !failing_psis.empty();

  // (value set): psi-image of the degree-m generators against the
  // degree-(m/m1) generators, inside GF(q^m).
  {
    CtxPtr ctx_m = FieldCtx::canonical_extension(base, m, lim.cap);
    std::vector<FieldElem> fm = degree_generators(ctx_m, q, m);
    std::vector<std::uint64_t> sub_ranks;
    for (const auto& a : degree_generators(ctx_m, q, msub)) sub_ranks.push_back(a.rank());
    std::vector<std::vector<FieldElem>> powers(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i) {
      powers[i].push_back(ctx_m->one());
      for (std::uint64_t e = 1; e <= m1; ++e) powers[i].push_back(powers[i].back() * fm[i]);
    }
    for (std::uint64_t cr = 0; cr < *cspace && !rep.via_value_set; ++cr) {
      std::vector<FieldElem> cs;
      std::uint64_t v = cr;
      for (std::uint64_t i = 1; i < m1; ++i) {
        cs.push_back(lift_to(base->from_rank(v % q), ctx_m));
        v /= q;
      }
      for (std::size_t ai = 0; ai < fm.size(); ++ai) {
        FieldElem val = powers[ai][m1];
        for (std::uint64_t i = 1; i < m1; ++i) val = val + cs[i - 1] * powers[ai][i];
        if (std::binary_search(sub_ranks.begin(), sub_ranks.end(), val.rank())) {
          rep.via_value_set = true;
          std::ostringstream os;
          os << "alpha=" << format_elem(fm[ai]) << ";c_rank=" << cr
             << ";value=" << format_elem(val);
          rep.value_text = os.str();
          break;
        }
      }
    }
  }

  // (shifted irreducible)
  std::optional<ShiftedIrreducible> fiv = shifted_irreducible_witness(base, m, lim);
  rep.via_shifted_irreducible = fiv.has_value();
  if (fiv) rep.f_text = format_poly(fiv->f);

  // (construction): phi = psi * y for each injectivity-failure witness and
  // for the shifted-irreducible construction; each candidate must admit a
  // collision triple verified through the diamond evaluation itself.
  std::vector<Poly> candidates = failing_psis;
  if (fiv) {
    std::vector<FieldElem> coeffs(m1 + 1, base->zero());
    for (std::uint64_t i = 1; i < m1; ++i) coeffs[i] = base->from_rank(fiv->c[i - 1]);
    coeffs[m1] = base->one();
    candidates.emplace_back(base, std::move(coeffs));
  }
  if (!candidates.empty()) {
    CtxPtr work = FieldCtx::canonical_extension(base, m * n, lim.cap);
    std::vector<FieldElem> fmw = degree_generators(work, q, m);
    std::vector<FieldElem> fnw = degree_generators(work, q, n);
    const FieldElem beta = fnw.front();
    for (const auto& psi : candidates) {
      BivarPoly phi = psi_times_y(psi);
      bool hit = false;
      for (const auto& alpha : fmw) {
        FieldElem val = psi.eval(alpha);
        const std::uint64_t d = subfield_degree(val, q);
        if (d >= m) continue;
        // sigma^d fixes psi(alpha) but moves alpha; verify via the diamond.
        FieldElem shifted = alpha;
        for (std::uint64_t t = 0; t < d; ++t) shifted = shifted.pow(q);
        if (shifted == alpha ||
            !(eval_diamond(DiamondOp::bivar(phi), shifted, beta) ==
              eval_diamond(DiamondOp::bivar(phi), alpha, beta)))
          fail(Errc::EquivalenceViolation,
               "collision candidate failed diamond verification for psi=" + format_poly(psi));
        hit = true;
        if (!rep.via_construction) {
          rep.via_construction = true;
          rep.phi_text = format_bivar(phi);
          std::ostringstream os;
          os << "alpha=" << format_elem(alpha) << ";k=" << d << ";beta=" << format_elem(beta);
          rep.triple_text = os.str();
        }
        break;
      }
      if (!hit)
        fail(Errc::EquivalenceViolation,
             "no collision triple exists for candidate psi=" + format_poly(psi));
    }
  }

  if (rep.via_construction != rep.via_injectivity ||
      rep.via_injectivity != rep.via_value_set ||
      rep.via_value_set != rep.via_shifted_irreducible)
    fail(Errc::EquivalenceViolation,
         "four-way equivalence violated: " + rep.to_json().dump());
  rep.consistent = true;
  return rep;
}

std::optional<Tightness> tightness_witness(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                                           const Limits& lim) {
  if (m < 2 || n < 2 || std::gcd(m, n) != 1)
    fail(Errc::PreconditionViolated, "tightness witness needs coprime m, n > 1");
  const std::uint64_t q = base->cardinality();
  const std::uint64_t m1 = smallest_prime_factor(m);
  const std::uint64_t msub = m / m1;
  std::optional<ShiftedIrreducible> fiv = shifted_irreducible_witness(base, m, lim);
  if (!fiv) return std::nullopt;

  std::vector<FieldElem> coeffs(m1 + 1, base->zero());
  for (std::uint64_t i = 1; i < m1; ++i) coeffs[i] = base->from_rank(fiv->c[i - 1]);
  coeffs[m1] = base->one();
  Poly psi(base, std::move(coeffs));
  BivarPoly phi = psi_times_y(psi);

  CtxPtr work = FieldCtx::canonical_extension(base, m * n, lim.cap);
  std::vector<FieldElem> fmw = degree_generators(work, q, m);
  std::vector<FieldElem> fnw = degree_generators(work, q, n);
  const FieldElem beta = fnw.front();
  const std::uint64_t k = msub;
  for (const auto& alpha : fmw) {
    FieldElem shifted = alpha;
    for (std::uint64_t t = 0; t < k; ++t) shifted = shifted.pow(q);
    if (shifted == alpha) continue;
    if (eval_diamond(DiamondOp::bivar(phi), shifted, beta) ==
        eval_diamond(DiamondOp::bivar(phi), alpha, beta))
      return Tightness{std::move(phi), alpha, k, beta};
  }
  fail(Errc::EquivalenceViolation,
       "shifted-irreducible witness admits no collision at k=m/m1");
}

nlohmann::ordered_json to_json(const SearchResult& r) {
  nlohmann::ordered_json j;
  j["exhausted"] = r.exhausted;
  j["tested"] = r.tested;
  if (r.witness) {
    nlohmann::ordered_json w;
    w["f"] = format_poly(r.witness->f);
    w["c0"] = format_elem(r.witness->c0);
    w["strategy"] = r.witness->strategy;
    w["seed"] = r.witness->seed;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace ffd
