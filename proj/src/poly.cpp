#include "ffdiamond/poly.hpp"

#include <algorithm>

#include "ffdiamond/numtheory.hpp"

namespace ffd {

namespace {

void ensure_same_ctx(const Poly& a, const Poly& b) {
  if (!a.ctx() || !b.ctx()) fail(Errc::CtxMismatch, "uninitialized polynomial");
  if (a.ctx() != b.ctx() && !a.ctx()->same_tower(*b.ctx()))
    fail(Errc::CtxMismatch, "polynomials over different field contexts");
}

}  // namespace

Poly::Poly(CtxPtr ctx, std::vector<FieldElem> coeffs_low_first)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs_low_first)) {
  for (const auto& c : coeffs_)
    if (c.ctx() != ctx_ && !c.ctx()->same_tower(*ctx_))
      fail(Errc::CtxMismatch, "coefficient from a different context");
  normalize();
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::zero(const CtxPtr& ctx) { return Poly(ctx, {}); }
Poly Poly::one(const CtxPtr& ctx) { return Poly(ctx, {ctx->one()}); }
Poly Poly::x(const CtxPtr& ctx) { return Poly(ctx, {ctx->zero(), ctx->one()}); }
Poly Poly::constant(const FieldElem& c) { return Poly(c.ctx(), {c}); }
Poly Poly::x_minus(const FieldElem& a) { return Poly(a.ctx(), {-a, a.ctx()->one()}); }

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

const FieldElem& Poly::leading() const {
  if (coeffs_.empty()) fail(Errc::PreconditionViolated, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

FieldElem Poly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : ctx_->zero();
}

Poly Poly::operator+(const Poly& o) const {
  ensure_same_ctx(*this, o);
  std::vector<FieldElem> c(std::max(coeffs_.size(), o.coeffs_.size()), ctx_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = c[i] + o.coeffs_[i];
  return Poly(ctx_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  ensure_same_ctx(*this, o);
  std::vector<FieldElem> c(std::max(coeffs_.size(), o.coeffs_.size()), ctx_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = c[i] - o.coeffs_[i];
  return Poly(ctx_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  ensure_same_ctx(*this, o);
  if (is_zero() || o.is_zero()) return zero(ctx_);
  std::vector<FieldElem> c(coeffs_.size() + o.coeffs_.size() - 1, ctx_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] = c[i + j] + coeffs_[i] * o.coeffs_[j];
  }
  return Poly(ctx_, std::move(c));
}

Poly Poly::operator*(const FieldElem& k) const {
  std::vector<FieldElem> c;
  c.reserve(coeffs_.size());
  for (const auto& ci : coeffs_) c.push_back(ci * k);
  return Poly(ctx_, std::move(c));
}

bool Poly::operator==(const Poly& o) const {
  if (!ctx_ || !o.ctx_) return ctx_ == o.ctx_;
  if (ctx_ != o.ctx_ && !ctx_->same_tower(*o.ctx_)) return false;
  return coeffs_ == o.coeffs_;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return *this * leading().inv();
}

Poly Poly::derivative() const {
  if (coeffs_.size() < 2) return zero(ctx_);
  std::vector<FieldElem> c;
  c.reserve(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    FieldElem k = ctx_->from_residue(i % ctx_->characteristic());
    c.push_back(coeffs_[i] * k);
  }
  return Poly(ctx_, std::move(c));
}

FieldElem Poly::eval(const FieldElem& a) const {
  if (!a.ctx()->extends(*ctx_))
    fail(Errc::CtxMismatch, "evaluation point does not live above the coefficient context");
  FieldElem acc = a.ctx()->zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * a + ffd::lift_to(coeffs_[i], a.ctx());
  return acc;
}

Poly Poly::lift_to(const CtxPtr& ext) const {
  if (ext == ctx_) return *this;
  std::vector<FieldElem> c;
  c.reserve(coeffs_.size());
  for (const auto& ci : coeffs_) c.push_back(ffd::lift_to(ci, ext));
  return Poly(ext, std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  ensure_same_ctx(a, b);
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly::zero(a.ctx()), a};
  const FieldElem binv = b.leading().inv();
  std::vector<FieldElem> rem(a.coeffs());
  const std::size_t qn = static_cast<std::size_t>(a.degree() - b.degree()) + 1;
  std::vector<FieldElem> quot(qn, a.ctx()->zero());
  for (std::size_t i = qn; i-- > 0;) {
    const std::size_t top = i + b.degree();
    if (rem[top].is_zero()) continue;
    FieldElem q = rem[top] * binv;
    quot[i] = q;
    for (int j = 0; j <= b.degree(); ++j)
      rem[i + j] = rem[i + j] - q * b.coeff(static_cast<std::size_t>(j));
  }
  return {Poly(a.ctx(), std::move(quot)), Poly(a.ctx(), std::move(rem))};
}

Poly poly_quot(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly poly_rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly poly_gcd(Poly a, Poly b) {
  ensure_same_ctx(a, b);
  while (!b.is_zero()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly powmod(const Poly& b, std::uint64_t e, const Poly& modulus) {
  if (modulus.degree() < 1)
    fail(Errc::PreconditionViolated, "powmod modulus must have degree >= 1");
  const Poly m = modulus.monic();
  Poly r = Poly::one(m.ctx());
  Poly base = poly_rem(b, m);
  while (e) {
    if (e & 1) r = poly_rem(r * base, m);
    base = poly_rem(base * base, m);
    e >>= 1;
  }
  return r;
}

bool is_irreducible(const Poly& f_in) {
  if (f_in.degree() < 1) fail(Errc::DegreeZero, "irreducibility needs degree >= 1");
  const Poly f = f_in.monic();
  const std::uint64_t n = static_cast<std::uint64_t>(f.degree());
  if (n == 1) return true;
  const std::uint64_t q = f.ctx()->cardinality();
  const Poly x = Poly::x(f.ctx());

  std::vector<std::uint64_t> checkpoints;  // proper n/t for prime t | n
  for (const auto& [t, _] : factorize(n)) checkpoints.push_back(n / t);
  std::sort(checkpoints.begin(), checkpoints.end());

  // cur = x^{q^i} mod f, advanced by one q-power per step.
  Poly cur = x;
  std::size_t ci = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    cur = powmod(cur, q, f);
    if (ci < checkpoints.size() && checkpoints[ci] == i) {
      if (poly_gcd(cur - x, f).degree() != 0) return false;
      ++ci;
    }
  }
  return cur == x;
}

namespace {

// f with zero derivative is v(x)^p; recover v by taking p-th roots of the
// coefficients at indices divisible by p.
Poly pth_root(const Poly& f) {
  const std::uint64_t p = f.ctx()->characteristic();
  const std::uint64_t q = f.ctx()->cardinality();
  std::vector<FieldElem> c;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); i += p)
    c.push_back(f.coeff(i).pow(q / p));
  return Poly(f.ctx(), std::move(c));
}

}  // namespace

Poly squarefree_radical(const Poly& f_in) {
  if (f_in.is_zero()) fail(Errc::PreconditionViolated, "radical of zero");
  Poly f = f_in.monic();
  if (f.degree() == 0) return f;
  Poly fp = f.derivative();
  if (fp.is_zero()) return squarefree_radical(pth_root(f));
  Poly d = poly_gcd(f, fp);
  if (d.degree() == 0) return f;
  Poly w = poly_quot(f, d);
  Poly rd = squarefree_radical(d);
  Poly g = poly_gcd(w, rd);
  return poly_quot(w * rd, g).monic();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> factor_degree_profile(const Poly& f) {
  if (f.degree() < 1) fail(Errc::DegreeZero, "factor profile needs degree >= 1");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  Poly v = squarefree_radical(f);
  const std::uint64_t q = f.ctx()->cardinality();
  const Poly x = Poly::x(f.ctx());
  Poly h = poly_rem(x, v);
  std::uint64_t d = 0;
  while (v.degree() > 0) {
    if (static_cast<std::uint64_t>(v.degree()) < 2 * (d + 1)) {
      out.emplace_back(static_cast<std::uint64_t>(v.degree()), 1);
      break;
    }
    ++d;
    h = powmod(h, q, v);
    Poly g = poly_gcd(h - poly_rem(x, v), v);
    if (g.degree() > 0) {
      out.emplace_back(d, static_cast<std::uint64_t>(g.degree()) / d);
      v = poly_quot(v, g);
      h = poly_rem(h, v);
    }
  }
  return out;
}

namespace {

// Cantor-Zassenhaus split of a monic squarefree product of linear factors.
void split_linear(const Poly& c, Rng& rng, std::vector<FieldElem>& roots) {
  if (c.degree() == 0) return;
  if (c.degree() == 1) {
    roots.push_back(-c.coeff(0));
    return;
  }
  const CtxPtr& ctx = c.ctx();
  const std::uint64_t Q = ctx->cardinality();
  for (;;) {
    Poly g = Poly::zero(ctx);
    if (Q & 1) {
      FieldElem delta = ctx->from_rank(rng.below(Q));
      Poly shifted(ctx, {delta, ctx->one()});
      Poly t = powmod(shifted, (Q - 1) / 2, c);
      g = poly_gcd(t - Poly::one(ctx), c);
    } else {
      // char 2: gcd with the absolute trace of a random multiple of x.
      FieldElem cmul = ctx->from_rank(rng.below(Q));
      Poly u = poly_rem(Poly(ctx, {ctx->zero(), cmul}), c);
      Poly acc = u;
      for (std::uint64_t i = 1; i < ctx->total_degree(); ++i) {
        u = powmod(u, 2, c);
        acc = acc + u;
      }
      g = poly_gcd(acc, c);
    }
    if (g.degree() > 0 && g.degree() < c.degree()) {
      split_linear(g, rng, roots);
      split_linear(poly_quot(c, g), rng, roots);
      return;
    }
  }
}

}  // namespace

std::vector<FieldElem> roots_in(const Poly& f, const CtxPtr& ext, std::uint64_t seed) {
  if (f.is_zero()) fail(Errc::PreconditionViolated, "roots of the zero polynomial");
  if (!ext->extends(*f.ctx()))
    fail(Errc::CtxMismatch, "root context does not extend the coefficient context");
  Poly F = f.lift_to(ext).monic();
  std::vector<FieldElem> roots;
  if (F.degree() == 0) return roots;
  const std::uint64_t Q = ext->cardinality();
  if (Q <= (1ull << 16)) {
    for (std::uint64_t r = 0; r < Q; ++r) {
      FieldElem a = ext->from_rank(r);
      if (F.eval(a).is_zero()) roots.push_back(a);
    }
    return roots;
  }
  Poly xq = powmod(Poly::x(ext), Q, F);
  Poly R = poly_gcd(xq - Poly::x(ext), F);
  if (R.degree() <= 0) return roots;
  Rng rng(seed);
  split_linear(R.monic(), rng, roots);
  std::sort(roots.begin(), roots.end(),
            [](const FieldElem& a, const FieldElem& b) { return a.rank() < b.rank(); });
  return roots;
}

std::uint64_t root_multiplicity(const Poly& f, const FieldElem& root) {
  Poly cur = f.lift_to(root.ctx());
  Poly lin = Poly::x_minus(root);
  std::uint64_t mult = 0;
  while (cur.degree() >= 1) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) break;
    ++mult;
    cur = std::move(q);
  }
  return mult;
}

Poly minimal_polynomial(const FieldElem& a, std::uint64_t q) {
  subfield_exponent(*a.ctx(), q);
  CtxPtr node = a.ctx();
  while (node && node->cardinality() != q) node = node->base();
  if (!node)
    fail(Errc::NotASubfieldCardinality,
         "GF(" + std::to_string(q) + ") is not a node of the element's tower; "
         "build the tower through it to take minimal polynomials");
  Poly prod = Poly::one(a.ctx());
  for (const auto& c : frobenius_orbit(a, q)) prod = prod * Poly::x_minus(c);
  std::vector<FieldElem> coeffs;
  coeffs.reserve(prod.coeffs().size());
  for (const auto& c : prod.coeffs()) {
    if (!(c.pow(q) == c))
      fail(Errc::CoefficientDescentFailure, "orbit product coefficient not fixed by Frobenius");
    coeffs.push_back(descend_to(c, node));
  }
  return Poly(node, std::move(coeffs));
}

MonicIrreducibles::MonicIrreducibles(CtxPtr ctx, std::uint64_t degree, std::uint64_t budget)
    : ctx_(std::move(ctx)), degree_(degree) {
  if (degree_ == 0) fail(Errc::PreconditionViolated, "degree must be >= 1");
  auto cnt = checked_pow(ctx_->cardinality(), degree_);
  count_ = cnt ? *cnt : UINT64_MAX;
  if (count_ > budget)
    fail(Errc::BudgetExceeded, "q^degree exceeds the enumeration budget");
}

Poly MonicIrreducibles::candidate(std::uint64_t idx) const {
  const std::uint64_t q = ctx_->cardinality();
  std::vector<FieldElem> c;
  c.reserve(degree_ + 1);
  for (std::uint64_t i = 0; i < degree_; ++i) {
    c.push_back(ctx_->from_rank(idx % q));
    idx /= q;
  }
  c.push_back(ctx_->one());
  return Poly(ctx_, std::move(c));
}

std::optional<Poly> MonicIrreducibles::next() {
  while (idx_ < count_) {
    Poly f = candidate(idx_++);
    if (is_irreducible(f)) return f;
  }
  return std::nullopt;
}

std::uint64_t irreducible_count(std::uint64_t q, std::uint64_t n) {
  __int128 acc = 0;
  for (std::uint64_t d : divisors(n)) {
    auto qe = checked_pow(q, n / d);
    if (!qe) fail(Errc::CardinalityCapExceeded, "q^n exceeds 64 bits");
    acc += static_cast<__int128>(mobius(d)) * static_cast<__int128>(*qe);
  }
  return static_cast<std::uint64_t>(acc / n);
}

Poly random_irreducible(const CtxPtr& ctx, std::uint64_t degree, std::uint64_t seed) {
  if (degree == 0) fail(Errc::PreconditionViolated, "degree must be >= 1");
  Rng rng(seed);
  const std::uint64_t q = ctx->cardinality();
  for (;;) {
    std::vector<FieldElem> c;
    c.reserve(degree + 1);
    for (std::uint64_t i = 0; i < degree; ++i) c.push_back(ctx->from_rank(rng.below(q)));
    c.push_back(ctx->one());
    Poly f(ctx, std::move(c));
    if (is_irreducible(f)) return f;
  }
}

}  // namespace ffd
