#include "ffdiamond/composed.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ffdiamond/numtheory.hpp"
#include "ffdiamond/textio.hpp"

namespace ffd {

// ---------------------------------------------------------------------------
// BivarPoly

BivarPoly::BivarPoly(CtxPtr ctx, std::vector<std::vector<FieldElem>> rows)
    : ctx_(std::move(ctx)), rows_(std::move(rows)) {
  for (auto& row : rows_) {
    for (const auto& c : row)
      if (c.ctx() != ctx_ && !c.ctx()->same_tower(*ctx_))
        fail(Errc::CtxMismatch, "bivariate coefficient from a different context");
    while (!row.empty() && row.back().is_zero()) row.pop_back();
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

int BivarPoly::deg_x() const {
  int d = -1;
  for (const auto& row : rows_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

FieldElem BivarPoly::coeff(std::size_t i, std::size_t j) const {
  if (i >= rows_.size() || j >= rows_[i].size()) return ctx_->zero();
  return rows_[i][j];
}

Poly BivarPoly::psi(std::size_t i) const {
  if (i >= rows_.size()) return Poly::zero(ctx_);
  return Poly(ctx_, rows_[i]);
}

FieldElem BivarPoly::eval(const FieldElem& x, const FieldElem& y) const {
  if (x.ctx() != y.ctx() && !x.ctx()->same_tower(*y.ctx()))
    fail(Errc::CtxMismatch, "diamond arguments live in different contexts");
  FieldElem acc = x.ctx()->zero();
  for (std::size_t i = rows_.size(); i-- > 0;) acc = acc * y + psi(i).eval(x);
  return acc;
}

bool BivarPoly::operator==(const BivarPoly& o) const {
  return ctx_->same_tower(*o.ctx_) && rows_ == o.rows_;
}

std::string format_bivar(const BivarPoly& phi) {
  std::ostringstream os;
  bool first = true;
  for (int i = phi.deg_y(); i >= 0; --i) {
    for (int j = static_cast<int>(phi.rows()[i].size()) - 1; j >= 0; --j) {
      FieldElem c = phi.coeff(i, j);
      if (c.is_zero()) continue;
      if (!first) os << '+';
      first = false;
      std::string mono;
      if (j > 0) mono += (j == 1) ? "x" : "x^" + std::to_string(j);
      if (i > 0) {
        if (!mono.empty()) mono += '*';
        mono += (i == 1) ? "y" : "y^" + std::to_string(i);
      }
      if (mono.empty()) {
        os << format_elem(c);
      } else if (c.is_one()) {
        os << mono;
      } else {
        os << format_elem(c) << '*' << mono;
      }
    }
  }
  if (first) os << '0';
  return os.str();
}

BivarPoly parse_bivar(std::string_view text, const CtxPtr& ctx) {
  std::vector<std::vector<FieldElem>> rows;
  auto add = [&](const FieldElem& c, std::uint64_t dx, std::uint64_t dy, bool neg) {
    if (dx > 64 || dy > 64) fail(Errc::SyntaxError, "bivariate exponent too large");
    if (rows.size() <= dy) rows.resize(dy + 1);
    auto& row = rows[dy];
    if (row.size() <= dx) row.resize(dx + 1, ctx->zero());
    row[dx] = neg ? row[dx] - c : row[dx] + c;
  };
  std::size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  bool neg = false;
  skip_ws();
  if (pos < text.size() && text[pos] == '-') { neg = true; ++pos; }
  while (true) {
    // one term: factors separated by '*', each an element literal, x[^e] or y[^e]
    FieldElem c = ctx->one();
    std::uint64_t dx = 0, dy = 0;
    bool any = false, after_star = false;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) {
        if (after_star) fail(Errc::SyntaxError, "dangling '*' at position " + std::to_string(pos));
        break;
      }
      char ch = text[pos];
      if (ch == 'x' || ch == 'y') {
        ++pos;
        std::uint64_t e = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          std::size_t start = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (pos == start) fail(Errc::SyntaxError, "expected exponent at position " + std::to_string(pos));
          e = std::stoull(std::string(text.substr(start, pos - start)));
        }
        (ch == 'x' ? dx : dy) += e;
      } else if (ch == '[' || ch == 'g' || std::isdigit(static_cast<unsigned char>(ch))) {
        // element literal: find its extent (bracket-balanced, then optional ^k)
        std::size_t start = pos;
        if (ch == '[') {
          int depth = 0;
          do {
            if (text[pos] == '[') ++depth;
            else if (text[pos] == ']') --depth;
            ++pos;
            if (pos > text.size()) fail(Errc::SyntaxError, "unbalanced brackets");
          } while (depth > 0 && pos < text.size());
          if (depth != 0) fail(Errc::SyntaxError, "unbalanced brackets");
        } else {
          while (pos < text.size() &&
                 (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == 'g' ||
                  text[pos] == '^'))
            ++pos;
        }
        c = c * parse_elem(text.substr(start, pos - start), ctx);
      } else {
        fail(Errc::SyntaxError,
             "unexpected character '" + std::string(1, ch) + "' at position " + std::to_string(pos));
      }
      any = true;
      after_star = false;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        after_star = true;
        continue;
      }
      break;
    }
    if (!any) fail(Errc::SyntaxError, "empty term in bivariate polynomial");
    add(c, dx, dy, neg);
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '+') { neg = false; ++pos; }
    else if (text[pos] == '-') { neg = true; ++pos; }
    else fail(Errc::SyntaxError, "expected '+' or '-' at position " + std::to_string(pos));
  }
  return BivarPoly(ctx, std::move(rows));
}

// ---------------------------------------------------------------------------
// DiamondOp

DiamondOp DiamondOp::bivar(BivarPoly phi) {
  DiamondOp d(Kind::bivar);
  d.phi_ = std::move(phi);
  return d;
}

const BivarPoly& DiamondOp::phi() const {
  if (!phi_) fail(Errc::PreconditionViolated, "builtin diamond has no bivariate polynomial");
  return *phi_;
}

std::string DiamondOp::describe() const {
  switch (kind_) {
    case Kind::add: return "add";
    case Kind::mul: return "mul";
    case Kind::bivar: return format_bivar(*phi_);
  }
  return "?";
}

FieldElem eval_diamond(const DiamondOp& d, const FieldElem& a, const FieldElem& b) {
  switch (d.kind()) {
    case DiamondOp::Kind::add: return a + b;
    case DiamondOp::Kind::mul: return a * b;
    case DiamondOp::Kind::bivar: return d.phi().eval(a, b);
  }
  fail(Errc::InternalError, "unknown diamond kind");
}

// ---------------------------------------------------------------------------
// composed products

namespace {

struct RootsWithMult {
  std::vector<FieldElem> roots;
  std::vector<std::uint64_t> mult;
};

RootsWithMult roots_with_multiplicity(const Poly& f, const CtxPtr& work, std::uint64_t seed) {
  RootsWithMult out;
  out.roots = roots_in(f, work, seed);
  std::uint64_t total = 0;
  for (const auto& r : out.roots) {
    std::uint64_t m = root_multiplicity(f, r);
    out.mult.push_back(m);
    total += m;
  }
  if (total != static_cast<std::uint64_t>(f.degree()))
    fail(Errc::InternalError, "working context does not split the input polynomial");
  return out;
}

struct ProductResult {
  Poly poly;           // over the base context
  bool distinct = true;  // pairwise distinct diamond values (simple roots only)
};

ProductResult product_from_roots(const CtxPtr& base, const CtxPtr& work, const RootsWithMult& rf,
                                 const RootsWithMult& rg, const DiamondOp& d,
                                 bool check_distinct) {
  ProductResult res;
  Poly prod = Poly::one(work);
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < rf.roots.size(); ++i) {
    for (std::size_t j = 0; j < rg.roots.size(); ++j) {
      FieldElem v = eval_diamond(d, rf.roots[i], rg.roots[j]);
      if (check_distinct && !seen.insert(v.rank()).second) res.distinct = false;
      Poly lin = Poly::x_minus(v);
      const std::uint64_t e = rf.mult[i] * rg.mult[j];
      for (std::uint64_t t = 0; t < e; ++t) prod = prod * lin;
    }
  }
  const std::uint64_t q = base->cardinality();
  std::vector<FieldElem> coeffs;
  coeffs.reserve(prod.coeffs().size());
  for (const auto& c : prod.coeffs()) {
    if (!(c.pow(q) == c))
      fail(Errc::CoefficientDescentFailure,
           "composed product coefficient not fixed by the base Frobenius");
    coeffs.push_back(descend_to(c, base));
  }
  res.poly = Poly(base, std::move(coeffs));
  return res;
}

std::uint64_t lcm_of_factor_degrees(const Poly& f, std::uint64_t acc) {
  for (const auto& [d, _] : factor_degree_profile(f)) acc = std::lcm(acc, d);
  return acc;
}

}  // namespace

Poly composed_product(const Poly& f, const Poly& g, const DiamondOp& d, std::uint64_t seed,
                      const Limits& lim) {
  if (!f.ctx()->same_tower(*g.ctx()))
    fail(Errc::CtxMismatch, "composed product inputs over different contexts");
  if (f.degree() < 1 || g.degree() < 1)
    fail(Errc::PreconditionViolated, "composed product needs degrees >= 1");
  if (!f.is_monic() || !g.is_monic())
    fail(Errc::NotMonic, "composed product inputs must be monic");
  const CtxPtr& base = f.ctx();
  if (d.kind() == DiamondOp::Kind::bivar && !d.phi().ctx()->same_tower(*base))
    fail(Errc::CtxMismatch, "diamond coefficients over a different context");

  std::uint64_t L = lcm_of_factor_degrees(g, lcm_of_factor_degrees(f, 1));
  CtxPtr work = L == 1 ? base : FieldCtx::canonical_extension(base, L, lim.cap);
  RootsWithMult rf = roots_with_multiplicity(f, work, seed);
  RootsWithMult rg = roots_with_multiplicity(g, work, derive_seed(seed, 0x9d));
  ProductResult pr = product_from_roots(base, work, rf, rg, d, false);
  if (pr.poly.degree() != f.degree() * g.degree())
    fail(Errc::InternalError, "composed product degree mismatch");
  return pr.poly;
}

// ---------------------------------------------------------------------------
// weak cancellation

std::string WeakCancellation::Counterexample::describe() const {
  std::ostringstream os;
  if (right_operand)
    os << "a<>b == a<>b' with b != b': a=" << format_elem(a) << " b=" << format_elem(b)
       << " b'=" << format_elem(other);
  else
    os << "a<>b == a'<>b with a != a': a=" << format_elem(a) << " a'=" << format_elem(other)
       << " b=" << format_elem(b);
  if (frobenius_shift) os << " (shift k=" << *frobenius_shift << ")";
  return os.str();
}

namespace {

std::optional<std::uint64_t> orbit_shift(const FieldElem& from, const FieldElem& to,
                                         std::uint64_t q) {
  FieldElem cur = from;
  for (std::uint64_t k = 1;; ++k) {
    cur = cur.pow(q);
    if (cur == to) return k;
    if (cur == from) return std::nullopt;
  }
}

}  // namespace

namespace {

// index of sigma(element) within a rank-sorted generator set
std::vector<std::size_t> sigma_index(const std::vector<FieldElem>& set, std::uint64_t q) {
  std::vector<std::uint64_t> ranks;
  ranks.reserve(set.size());
  for (const auto& a : set) ranks.push_back(a.rank());
  std::vector<std::size_t> out(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::uint64_t r = set[i].pow(q).rank();
    auto it = std::lower_bound(ranks.begin(), ranks.end(), r);
    if (it == ranks.end() || *it != r)
      fail(Errc::InternalError, "generator set not closed under Frobenius");
    out[i] = static_cast<std::size_t>(it - ranks.begin());
  }
  return out;
}

}  // namespace

WeakCancellation weak_cancellation(const DiamondOp& d, const CtxPtr& base, std::uint64_t m,
                                   std::uint64_t n, const Limits& lim,
                                   CancellationRange range) {
  if (m == 0 || n == 0) fail(Errc::PreconditionViolated, "m, n must be >= 1");
  if (d.kind() == DiamondOp::Kind::bivar) {
    if (!d.phi().ctx()->same_tower(*base))
      fail(Errc::CtxMismatch, "diamond coefficients over a different context");
    if (d.phi().deg_x() < 1 || d.phi().deg_y() < 1)
      fail(Errc::PreconditionViolated,
           "bivariate diamond needs positive degree in both variables");
  }
  const std::uint64_t q = base->cardinality();
  auto qm = checked_pow(q, m);
  auto qn = checked_pow(q, n);
  if (!qm || !qn || *qm > lim.budget || *qn > lim.budget)
    fail(Errc::BudgetExceeded, "generator sets exceed the enumeration budget");

  WeakCancellation out;
  out.range = range;
  out.work = FieldCtx::canonical_extension(base, m * n, lim.cap);
  std::vector<FieldElem> fm = degree_generators(out.work, q, m);
  std::vector<FieldElem> fn = degree_generators(out.work, q, n);
  auto pairs = checked_mul(fm.size(), fn.size());
  if (!pairs || *pairs > lim.budget)
    fail(Errc::BudgetExceeded, "generator pair table exceeds the enumeration budget");
  out.pairs = *pairs;

  std::vector<std::uint64_t> table(fm.size() * fn.size());
  for (std::size_t ai = 0; ai < fm.size(); ++ai)
    for (std::size_t bi = 0; bi < fn.size(); ++bi)
      table[ai * fn.size() + bi] = eval_diamond(d, fm[ai], fn[bi]).rank();

  const bool orbit_only = range == CancellationRange::frobenius_orbit;
  std::vector<std::size_t> sm, sn;
  if (orbit_only) {
    sm = sigma_index(fm, q);
    sn = sigma_index(fn, q);
  }

  // right-operand cancellation: a<>b == a<>b' forces b == b'
  for (std::size_t ai = 0; ai < fm.size(); ++ai) {
    const std::uint64_t* row = table.data() + ai * fn.size();
    for (std::size_t bi = 0; bi < fn.size(); ++bi) {
      if (orbit_only) {
        std::size_t bj = sn[bi];
        for (std::uint64_t k = 1; bj != bi; bj = sn[bj], ++k)
          if (row[bi] == row[bj]) {
            out.holds = false;
            out.cex = WeakCancellation::Counterexample{true, fm[ai], fn[bj], fn[bi], k};
            return out;
          }
      } else {
        for (std::size_t bj = bi + 1; bj < fn.size(); ++bj)
          if (row[bi] == row[bj]) {
            out.holds = false;
            out.cex = WeakCancellation::Counterexample{
                true, fm[ai], fn[bj], fn[bi], orbit_shift(fn[bi], fn[bj], q)};
            return out;
          }
      }
    }
  }
  // left-operand cancellation: a<>b == a'<>b forces a == a'
  for (std::size_t bi = 0; bi < fn.size(); ++bi) {
    for (std::size_t ai = 0; ai < fm.size(); ++ai) {
      if (orbit_only) {
        std::size_t aj = sm[ai];
        for (std::uint64_t k = 1; aj != ai; aj = sm[aj], ++k)
          if (table[ai * fn.size() + bi] == table[aj * fn.size() + bi]) {
            out.holds = false;
            out.cex = WeakCancellation::Counterexample{false, fm[ai], fm[aj], fn[bi], k};
            return out;
          }
      } else {
        for (std::size_t aj = ai + 1; aj < fm.size(); ++aj)
          if (table[ai * fn.size() + bi] == table[aj * fn.size() + bi]) {
            out.holds = false;
            out.cex = WeakCancellation::Counterexample{
                false, fm[ai], fm[aj], fn[bi], orbit_shift(fm[ai], fm[aj], q)};
            return out;
          }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// restricted injectivity

RestrictedInjectivity restricted_injectivity(const Poly& psi, std::uint64_t m,
                                             const Limits& lim) {
  if (psi.degree() < 1) fail(Errc::DegreeZero, "psi needs degree >= 1");
  if (m == 0) fail(Errc::PreconditionViolated, "m must be >= 1");
  const CtxPtr& base = psi.ctx();
  const std::uint64_t q = base->cardinality();
  auto qm = checked_pow(q, m);
  if (!qm || *qm > lim.budget)
    fail(Errc::BudgetExceeded, "generator set exceeds the enumeration budget");

  RestrictedInjectivity out;
  out.work = FieldCtx::canonical_extension(base, m, lim.cap);
  std::vector<FieldElem> fm = degree_generators(out.work, q, m);
  std::vector<std::uint64_t> ranks;
  ranks.reserve(fm.size());
  for (const auto& a : fm) ranks.push_back(a.rank());

  for (const auto& a : fm) {
    FieldElem val = psi.eval(a);
    const bool val_generates = std::binary_search(ranks.begin(), ranks.end(), val.rank());
    std::optional<std::uint64_t> bad_k;
    FieldElem cur = a;
    for (std::uint64_t k = 1; k < m; ++k) {
      cur = cur.pow(q);
      if (psi.eval(cur) == val) {
        bad_k = k;
        break;
      }
    }
    // For psi with base-field coefficients, a collision along the orbit is
    // equivalent to psi(a) falling outside the degree-m generators.
    if (val_generates == bad_k.has_value())
      fail(Errc::EquivalenceViolation,
           "collision route and membership route disagree at a=" + format_elem(a));
    if (bad_k) {
      out.holds = false;
      out.cex = {a, *bad_k};
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// linear independence of the power differences

bool linear_independence_check(const FieldElem& alpha, std::uint64_t q, std::uint64_t k) {
  const CtxPtr& ctx = alpha.ctx();
  const std::uint64_t s = subfield_exponent(*ctx, q);
  const std::uint64_t m = ctx->total_degree() / s;
  if (m < 2) fail(Errc::PreconditionViolated, "ambient field must be a proper extension of GF(q)");
  if (!generates(alpha, q, m))
    fail(Errc::PreconditionViolated, "alpha must generate the whole context over GF(q)");
  if (k % m == 0) fail(Errc::PreconditionViolated, "k must not be divisible by m");

  CtxPtr node = ctx;
  while (node && node->cardinality() != q) node = node->base();
  if (!node)
    fail(Errc::NotASubfieldCardinality, "GF(q) is not a node of the element's tower");

  const std::uint64_t m1 = smallest_prime_factor(m);
  auto sigma_k = [&](FieldElem v) {
    for (std::uint64_t t = 0; t < k % m; ++t) v = v.pow(q);
    return v;
  };
  // columns: alpha^i - sigma^k(alpha^i), expressed over the GF(q) node
  const std::size_t rows = static_cast<std::size_t>(ctx->total_degree() / node->total_degree());
  const std::size_t nodedim = node->total_degree();
  std::vector<std::vector<FieldElem>> mat(rows);
  FieldElem pw = ctx->one();
  for (std::uint64_t i = 1; i < m1; ++i) {
    pw = pw * alpha;
    FieldElem v = pw - sigma_k(pw);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::uint64_t> blk(v.flat().begin() + r * nodedim,
                                     v.flat().begin() + (r + 1) * nodedim);
      mat[r].push_back(node->from_flat(std::move(blk)));
    }
  }
  // Gaussian elimination over GF(q)
  const std::size_t cols = m1 - 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!mat[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    std::swap(mat[rank], mat[pivot]);
    FieldElem inv = mat[rank][c].inv();
    for (std::size_t cc = c; cc < cols; ++cc) mat[rank][cc] = mat[rank][cc] * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || mat[r][c].is_zero()) continue;
      FieldElem f = mat[r][c];
      for (std::size_t cc = c; cc < cols; ++cc)
        mat[r][cc] = mat[r][cc] - f * mat[rank][cc];
    }
    ++rank;
  }
  return rank == m1 - 1;
}

// ---------------------------------------------------------------------------
// Brawley-Carlitz equivalence verification

nlohmann::ordered_json BrawleyCarlitz::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["coprime"] = coprime;
  j["irreducible_pairs"] = irreducible_pairs;
  j["products_irreducible"] = products_irreducible;
  j["reducible_samples"] = reducible_samples;
  j["equivalence_holds"] = equivalence_holds;
  j["violation"] = violation;
  j["seed"] = seed;
  return j;
}

std::vector<BrawleyCarlitz> brawley_carlitz_verify(const CtxPtr& base, std::uint64_t m,
                                                   std::uint64_t n,
                                                   const std::vector<DiamondOp>& ds,
                                                   std::uint64_t seed, const Limits& lim) {
  if (m == 0 || n == 0) fail(Errc::PreconditionViolated, "m, n must be >= 1");
  const bool coprime = std::gcd(m, n) == 1;

  for (const auto& d : ds) {
    WeakCancellation wc = weak_cancellation(d, base, m, n, lim);
    if (!wc.holds)
      fail(Errc::WeakCancellationFails,
           "diamond " + d.describe() + " fails weak cancellation on the (" + std::to_string(m) +
               "," + std::to_string(n) + ") generator sets: " + wc.cex->describe());
  }

  CtxPtr big = FieldCtx::canonical_extension(base, m * n, lim.cap);
  auto collect = [&](std::uint64_t deg) {
    std::vector<Poly> out;
    MonicIrreducibles range(base, deg, lim.budget);
    while (auto f = range.next()) out.push_back(std::move(*f));
    return out;
  };
  std::vector<Poly> fs = collect(m);
  std::vector<Poly> gs = collect(n);
  std::vector<RootsWithMult> rf, rg;
  rf.reserve(fs.size());
  rg.reserve(gs.size());
  for (const auto& f : fs) rf.push_back(roots_with_multiplicity(f, big, seed));
  for (const auto& g : gs) rg.push_back(roots_with_multiplicity(g, big, seed));

  std::vector<BrawleyCarlitz> reports;
  for (const auto& d : ds) {
    BrawleyCarlitz rep;
    rep.m = m;
    rep.n = n;
    rep.coprime = coprime;
    rep.seed = seed;
    auto note_violation = [&](const std::string& what) {
      rep.equivalence_holds = false;
      if (rep.violation.empty()) rep.violation = what;
    };

    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        ProductResult pr = product_from_roots(base, big, rf[i], rg[j], d, coprime);
        ++rep.irreducible_pairs;
        const bool irr = is_irreducible(pr.poly);
        if (irr) ++rep.products_irreducible;
        if (irr != coprime)
          note_violation("pair f=" + format_poly(fs[i]) + " g=" + format_poly(gs[j]) +
                         " composed=" + format_poly(pr.poly) + " irreducible=" +
                         (irr ? "true" : "false"));
        if (coprime && !pr.distinct)
          note_violation("diamond values collide for f=" + format_poly(fs[i]) +
                         " g=" + format_poly(gs[j]));
      }
    }

    // Sampled reducible inputs exercise the forward direction: a reducible
    // factor forces a reducible composed product.
    constexpr int kReducibleSamples = 5;
    auto sample_reducible = [&](std::uint64_t deg, Rng& rng) {
      std::uint64_t d1 = 1 + rng.below(deg - 1);
      return (random_irreducible(base, d1, rng.next()) *
              random_irreducible(base, deg - d1, rng.next()));
    };
    if (m >= 2) {
      Rng rng(derive_seed(seed, m, n, 1));
      for (int s = 0; s < kReducibleSamples; ++s) {
        Poly f_red = sample_reducible(m, rng);
        const Poly& g = gs[rng.below(gs.size())];
        Poly prod = composed_product(f_red, g, d, rng.next(), lim);
        ++rep.reducible_samples;
        if (is_irreducible(prod))
          note_violation("reducible f=" + format_poly(f_red) + " gave irreducible product");
      }
    }
    if (n >= 2) {
      Rng rng(derive_seed(seed, m, n, 2));
      for (int s = 0; s < kReducibleSamples; ++s) {
        Poly g_red = sample_reducible(n, rng);
        const Poly& f = fs[rng.below(fs.size())];
        Poly prod = composed_product(f, g_red, d, rng.next(), lim);
        ++rep.reducible_samples;
        if (is_irreducible(prod))
          note_violation("reducible g=" + format_poly(g_red) + " gave irreducible product");
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

BrawleyCarlitz brawley_carlitz_verify(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                                      const DiamondOp& d, std::uint64_t seed, const Limits& lim) {
  return brawley_carlitz_verify(base, m, n, std::vector<DiamondOp>{d}, seed, lim).front();
}

// ---------------------------------------------------------------------------
// exhaustive degree-bound sweep

nlohmann::ordered_json DegreeBoundSweep::to_json() const {
  nlohmann::ordered_json j;
  j["phis"] = phis;
  j["all_hold"] = all_hold;
  j["violating_phi"] = violating_phi ? format_bivar(*violating_phi) : "";
  j["counterexample"] = cex ? cex->describe() : "";
  return j;
}

DegreeBoundSweep weak_cancellation_degree_sweep(const CtxPtr& base, std::uint64_t m,
                                                std::uint64_t n, const Limits& lim) {
  if (m < 2 || n < 2 || std::gcd(m, n) != 1)
    fail(Errc::PreconditionViolated, "degree-bound sweep needs coprime m, n > 1");
  const std::uint64_t q = base->cardinality();
  const std::uint64_t p = base->characteristic();
  const std::uint64_t m1 = smallest_prime_factor(m);
  const std::uint64_t n1 = smallest_prime_factor(n);
  auto nmat = checked_pow(q, m1 * n1);
  if (!nmat || *nmat > lim.budget)
    fail(Errc::BudgetExceeded, "coefficient matrix space exceeds the enumeration budget");

  CtxPtr work = FieldCtx::canonical_extension(base, m * n, lim.cap);
  std::vector<FieldElem> fm = degree_generators(work, q, m);
  std::vector<FieldElem> fn = degree_generators(work, q, n);
  const std::size_t nm = fm.size(), nn = fn.size(), npairs = nm * nn;
  if (npairs > lim.budget) fail(Errc::BudgetExceeded, "generator pair table exceeds the budget");
  const std::size_t dim = work->total_degree();

  // scaled[((pair * n1 + i) * m1 + j) * q + s] = s-th base scalar times
  // alpha^j beta^i, flat over the prime field.
  std::vector<FieldElem> scalars;
  scalars.reserve(q);
  for (std::uint64_t s = 0; s < q; ++s) scalars.push_back(lift_to(base->from_rank(s), work));
  std::vector<std::uint64_t> scaled(npairs * n1 * m1 * q * dim);
  for (std::size_t ai = 0; ai < nm; ++ai) {
    std::vector<FieldElem> powx{work->one()};
    for (std::uint64_t j = 1; j < m1; ++j) powx.push_back(powx.back() * fm[ai]);
    for (std::size_t bi = 0; bi < nn; ++bi) {
      std::vector<FieldElem> powy{work->one()};
      for (std::uint64_t i = 1; i < n1; ++i) powy.push_back(powy.back() * fn[bi]);
      const std::size_t pair = ai * nn + bi;
      for (std::uint64_t i = 0; i < n1; ++i)
        for (std::uint64_t j = 0; j < m1; ++j) {
          FieldElem mono = powx[j] * powy[i];
          for (std::uint64_t s = 0; s < q; ++s) {
            FieldElem v = scalars[s] * mono;
            std::copy(v.flat().begin(), v.flat().end(),
                      scaled.begin() + (((pair * n1 + i) * m1 + j) * q + s) * dim);
          }
        }
    }
  }

  DegreeBoundSweep rep;
  const std::size_t ncoeff = n1 * m1;  // digit index i * m1 + j
  std::vector<std::uint64_t> digits(ncoeff, 0);
  std::vector<std::uint64_t> vals(npairs);
  std::vector<std::uint64_t> acc(dim);
  const std::vector<std::size_t> sm = sigma_index(fm, q);
  const std::vector<std::size_t> sn = sigma_index(fn, q);

  auto rebuild_phi = [&]() {
    std::vector<std::vector<FieldElem>> rows(n1);
    for (std::uint64_t i = 0; i < n1; ++i) {
      rows[i].reserve(m1);
      for (std::uint64_t j = 0; j < m1; ++j)
        rows[i].push_back(base->from_rank(digits[i * m1 + j]));
    }
    return BivarPoly(base, std::move(rows));
  };

  for (std::uint64_t count = 0; count < *nmat; ++count) {
    bool degx = false, degy = false;
    for (std::uint64_t i = 0; i < n1 && !(degx && degy); ++i)
      for (std::uint64_t j = 0; j < m1; ++j)
        if (digits[i * m1 + j]) {
          if (j >= 1) degx = true;
          if (i >= 1) degy = true;
        }
    if (degx && degy) {
      ++rep.phis;
      for (std::size_t pair = 0; pair < npairs; ++pair) {
        std::fill(acc.begin(), acc.end(), 0);
        const std::uint64_t* basep = scaled.data() + pair * ncoeff * q * dim;
        for (std::size_t t = 0; t < ncoeff; ++t) {
          const std::uint64_t s = digits[t];
          if (!s) continue;
          const std::uint64_t* src = basep + (t * q + s) * dim;
          for (std::size_t w = 0; w < dim; ++w) {
            std::uint64_t sum = acc[w] + src[w];
            acc[w] = sum >= p ? sum - p : sum;
          }
        }
        std::uint64_t r = 0;
        for (std::size_t w = dim; w-- > 0;) r = r * p + acc[w];
        vals[pair] = r;
      }
      // collisions along Frobenius orbits of the second operand
      bool bad = false;
      for (std::size_t ai = 0; ai < nm && !bad; ++ai) {
        const std::uint64_t* row = vals.data() + ai * nn;
        for (std::size_t bi = 0; bi < nn && !bad; ++bi)
          for (std::size_t bj = sn[bi]; bj != bi; bj = sn[bj])
            if (row[bi] == row[bj]) { bad = true; break; }
      }
      for (std::size_t bi = 0; bi < nn && !bad; ++bi) {
        for (std::size_t ai = 0; ai < nm && !bad; ++ai)
          for (std::size_t aj = sm[ai]; aj != ai; aj = sm[aj])
            if (vals[ai * nn + bi] == vals[aj * nn + bi]) { bad = true; break; }
      }
      if (bad) {
        rep.all_hold = false;
        rep.violating_phi = rebuild_phi();
        WeakCancellation full =
            weak_cancellation(DiamondOp::bivar(*rep.violating_phi), base, m, n, lim);
        if (full.holds)
          fail(Errc::InternalError, "sweep flagged a phi the direct check accepts");
        rep.cex = full.cex;
        return rep;
      }
    }
    // next coefficient matrix, little-endian
    std::size_t t = 0;
    while (t < ncoeff && ++digits[t] == q) digits[t++] = 0;
    if (t == ncoeff) break;
  }
  return rep;
}

nlohmann::ordered_json to_json(const WeakCancellation& w) {
  nlohmann::ordered_json j;
  j["holds"] = w.holds;
  j["range"] = w.range == CancellationRange::frobenius_orbit ? "frobenius-orbit" : "full";
  j["pairs"] = w.pairs;
  j["work_field"] = w.work ? format_field_spec(w.work) : "";
  j["counterexample"] = w.cex ? w.cex->describe() : "";
  return j;
}

nlohmann::ordered_json to_json(const RestrictedInjectivity& r) {
  nlohmann::ordered_json j;
  j["holds"] = r.holds;
  if (r.cex) {
    j["alpha"] = format_elem(r.cex->first);
    j["k"] = r.cex->second;
  } else {
    j["alpha"] = "";
    j["k"] = 0;
  }
  return j;
}

}  // namespace ffd
