#include "ffdiamond/gf.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "ffdiamond/numtheory.hpp"
#include "ffdiamond/poly.hpp"

namespace ffd {

namespace {

constexpr std::size_t kMaxDim = 64;  // cardinality <= 2^64 forces total degree < 64

inline std::uint64_t addp(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  if (s < a || s >= p) s -= p;
  return s;
}
inline std::uint64_t subp(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}
inline std::uint64_t mulp(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (p <= 0xFFFFFFFFull) return (a * b) % p;
  return mulmod(a, b, p);
}

inline bool all_zero(const std::uint64_t* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

void flat_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n,
              std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = addp(a[i], b[i], p);
}
void flat_sub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n,
              std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = subp(a[i], b[i], p);
}
void flat_add_into(std::uint64_t* acc, const std::uint64_t* b, std::size_t n, std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = addp(acc[i], b[i], p);
}

// Schoolbook multiply with modulus reduction, recursing through the tower.
// out must not alias the inputs.
void flat_mul(const FieldCtx& ctx, const std::uint64_t* a, const std::uint64_t* b,
              std::uint64_t* out) {
  const std::uint64_t p = ctx.characteristic();
  if (ctx.is_prime_field()) {
    out[0] = mulp(a[0], b[0], p);
    return;
  }
  const FieldCtx& base = *ctx.base();
  const std::size_t d = ctx.degree();
  const std::size_t db = base.total_degree();
  std::uint64_t tmp[2 * kMaxDim];
  std::uint64_t scratch[kMaxDim];
  std::fill(tmp, tmp + (2 * d - 1) * db, 0);
  if (base.is_prime_field()) {
    // single-level extension: schoolbook on plain residues
    for (std::size_t i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (b[j]) tmp[i + j] = addp(tmp[i + j], mulp(a[i], b[j], p), p);
    }
    const std::uint64_t* mn = ctx.modulus_flat_neg().data();
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
      const std::uint64_t c = tmp[k];
      if (c) {
        for (std::size_t j = 0; j < d; ++j)
          if (mn[j]) tmp[k - d + j] = addp(tmp[k - d + j], mulp(c, mn[j], p), p);
      }
      if (k == d) break;
    }
    std::memcpy(out, tmp, d * sizeof(std::uint64_t));
    return;
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (all_zero(a + i * db, db)) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (all_zero(b + j * db, db)) continue;
      flat_mul(base, a + i * db, b + j * db, scratch);
      flat_add_into(tmp + (i + j) * db, scratch, db, p);
    }
  }
  // x^d == -(low modulus terms); modneg already carries the negation, so the
  // top blocks fold downward by multiply-add.
  const std::uint64_t* mn = ctx.modulus_flat_neg().data();
  for (std::size_t k = 2 * d - 2; k >= d; --k) {
    std::uint64_t* c = tmp + k * db;
    if (!all_zero(c, db)) {
      for (std::size_t j = 0; j < d; ++j) {
        if (all_zero(mn + j * db, db)) continue;
        flat_mul(base, c, mn + j * db, scratch);
        flat_add_into(tmp + (k - d + j) * db, scratch, db, p);
      }
    }
    if (k == d) break;
  }
  std::memcpy(out, tmp, d * db * sizeof(std::uint64_t));
}

void ensure_same_ctx(const FieldElem& a, const FieldElem& b) {
  if (!a.valid() || !b.valid()) fail(Errc::CtxMismatch, "uninitialized field element");
  if (a.ctx() == b.ctx()) return;
  if (!a.ctx()->same_tower(*b.ctx()))
    fail(Errc::CtxMismatch, "operands live in different field contexts");
}

std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  SplitMix64 sm{h ^ (v + 0x9E3779B97F4A7C15ull)};
  return sm.next();
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldCtx

CtxPtr FieldCtx::make_prime(std::uint64_t p) {
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->card_ = p;
  ctx->deg_ = 1;
  ctx->dim_ = 1;
  ctx->hash_ = mix_hash(0x51ab5e8f, p);
  return ctx;
}

CtxPtr FieldCtx::extend(const CtxPtr& base, const Poly& modulus, std::uint64_t cap) {
  if (!base) fail(Errc::CtxMismatch, "null base context");
  if (!modulus.ctx() || !modulus.ctx()->same_tower(*base))
    fail(Errc::CtxMismatch, "modulus is not a polynomial over the base context");
  if (modulus.degree() < 2)
    fail(Errc::PreconditionViolated, "extension modulus must have degree >= 2");
  if (!modulus.is_monic()) fail(Errc::NotMonic, "extension modulus must be monic");
  const std::uint64_t d = static_cast<std::uint64_t>(modulus.degree());
  auto card = checked_pow(base->cardinality(), d);
  if (!card || (cap != UINT64_MAX && *card > cap))
    fail(Errc::CardinalityCapExceeded,
         "extension cardinality exceeds the 64-bit cap");
  if (!is_irreducible(modulus))
    fail(Errc::NotIrreducible, "extension modulus is reducible");

  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->base_ = base;
  ctx->p_ = base->characteristic();
  ctx->card_ = *card;
  ctx->deg_ = d;
  ctx->dim_ = base->total_degree() * d;
  const std::size_t db = base->total_degree();
  ctx->modneg_.assign(d * db, 0);
  std::uint64_t h = mix_hash(base->structural_hash(), d);
  for (std::uint64_t j = 0; j < d; ++j) {
    FieldElem c = -modulus.coeff(j);
    std::copy(c.flat().begin(), c.flat().end(), ctx->modneg_.begin() + j * db);
    for (std::uint64_t w : c.flat()) h = mix_hash(h, w);
  }
  ctx->hash_ = h;
  return ctx;
}

CtxPtr FieldCtx::canonical_extension(const CtxPtr& base, std::uint64_t degree,
                                     std::uint64_t cap) {
  if (!base) fail(Errc::CtxMismatch, "null base context");
  if (degree == 0) fail(Errc::PreconditionViolated, "degree must be >= 1");
  if (degree == 1) return base;
  auto card = checked_pow(base->cardinality(), degree);
  if (!card || (cap != UINT64_MAX && *card > cap))
    fail(Errc::CardinalityCapExceeded, "extension cardinality exceeds the 64-bit cap");
  // First monic irreducible in canonical coefficient order. Expected to show
  // up within a few tries, so no budget applies here.
  MonicIrreducibles range(base, degree, UINT64_MAX);
  auto f = range.next();
  if (!f) fail(Errc::InternalError, "no irreducible of requested degree");
  return extend(base, *f, cap);
}

FieldElem FieldCtx::zero() {
  return FieldElem(shared_from_this(), std::vector<std::uint64_t>(dim_, 0));
}

FieldElem FieldCtx::one() {
  std::vector<std::uint64_t> f(dim_, 0);
  f[0] = p_ > 1 ? 1 : 0;
  return FieldElem(shared_from_this(), std::move(f));
}

FieldElem FieldCtx::generator() {
  if (is_prime_field()) return one();
  std::vector<std::uint64_t> f(dim_, 0);
  f[base_->total_degree()] = 1;  // the tower variable of the top extension
  return FieldElem(shared_from_this(), std::move(f));
}

FieldElem FieldCtx::from_rank(std::uint64_t rank) {
  std::vector<std::uint64_t> f(dim_, 0);
  for (std::size_t i = 0; i < dim_ && rank; ++i) {
    f[i] = rank % p_;
    rank /= p_;
  }
  if (rank) fail(Errc::PreconditionViolated, "rank outside field");
  return FieldElem(shared_from_this(), std::move(f));
}

FieldElem FieldCtx::from_flat(std::vector<std::uint64_t> flat) {
  if (flat.size() != dim_) fail(Errc::PreconditionViolated, "flat coefficient length mismatch");
  for (auto& w : flat) w %= p_;
  return FieldElem(shared_from_this(), std::move(flat));
}

FieldElem FieldCtx::from_residue(std::uint64_t r) {
  std::vector<std::uint64_t> f(dim_, 0);
  f[0] = r % p_;
  return FieldElem(shared_from_this(), std::move(f));
}

std::vector<FieldElem> FieldCtx::modulus_coeffs() const {
  std::vector<FieldElem> out;
  if (is_prime_field()) return out;
  const std::size_t db = base_->total_degree();
  out.reserve(deg_);
  for (std::uint64_t j = 0; j < deg_; ++j) {
    std::vector<std::uint64_t> f(modneg_.begin() + j * db, modneg_.begin() + (j + 1) * db);
    out.push_back(-base_->from_flat(std::move(f)));
  }
  return out;
}

bool FieldCtx::same_tower(const FieldCtx& other) const {
  if (this == &other) return true;
  if (hash_ != other.hash_ || p_ != other.p_ || card_ != other.card_ || deg_ != other.deg_)
    return false;
  if (is_prime_field()) return other.is_prime_field();
  if (other.is_prime_field()) return false;
  return modneg_ == other.modneg_ && base_->same_tower(*other.base_);
}

bool FieldCtx::extends(const FieldCtx& ancestor) const {
  const FieldCtx* c = this;
  for (;;) {
    if (c->same_tower(ancestor)) return true;
    if (c->is_prime_field()) return false;
    c = c->base_.get();
  }
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  if (dim_ == 1) {
    os << "GF(" << p_ << ")";
  } else {
    os << "GF(" << p_ << "^" << dim_ << ")";
    if (base_ && !base_->is_prime_field())
      os << " as degree-" << deg_ << " extension of " << base_->describe();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(CtxPtr ctx, std::vector<std::uint64_t> flat)
    : ctx_(std::move(ctx)), flat_(std::move(flat)) {
  if (flat_.size() != ctx_->total_degree())
    fail(Errc::InternalError, "flat coefficient length mismatch");
}

bool FieldElem::is_zero() const {
  return std::all_of(flat_.begin(), flat_.end(), [](std::uint64_t w) { return w == 0; });
}

bool FieldElem::is_one() const {
  if (flat_.empty() || flat_[0] != 1) return false;
  return std::all_of(flat_.begin() + 1, flat_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t FieldElem::rank() const {
  const std::uint64_t p = ctx_->characteristic();
  std::uint64_t r = 0;
  for (std::size_t i = flat_.size(); i-- > 0;) r = r * p + flat_[i];
  return r;
}

std::vector<FieldElem> FieldElem::coeffs() const {
  std::vector<FieldElem> out;
  if (ctx_->is_prime_field()) {
    out.push_back(*this);
    return out;
  }
  const auto& base = ctx_->base();
  const std::size_t db = base->total_degree();
  out.reserve(ctx_->degree());
  for (std::uint64_t j = 0; j < ctx_->degree(); ++j)
    out.push_back(base->from_flat(
        std::vector<std::uint64_t>(flat_.begin() + j * db, flat_.begin() + (j + 1) * db)));
  return out;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  ensure_same_ctx(*this, o);
  std::vector<std::uint64_t> f(flat_.size());
  flat_add(flat_.data(), o.flat_.data(), f.data(), f.size(), ctx_->characteristic());
  return FieldElem(ctx_, std::move(f));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  ensure_same_ctx(*this, o);
  std::vector<std::uint64_t> f(flat_.size());
  flat_sub(flat_.data(), o.flat_.data(), f.data(), f.size(), ctx_->characteristic());
  return FieldElem(ctx_, std::move(f));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  ensure_same_ctx(*this, o);
  std::vector<std::uint64_t> f(flat_.size());
  flat_mul(*ctx_, flat_.data(), o.flat_.data(), f.data());
  return FieldElem(ctx_, std::move(f));
}

FieldElem FieldElem::operator-() const {
  if (!valid()) fail(Errc::CtxMismatch, "uninitialized field element");
  const std::uint64_t p = ctx_->characteristic();
  std::vector<std::uint64_t> f(flat_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = flat_[i] ? p - flat_[i] : 0;
  return FieldElem(ctx_, std::move(f));
}

FieldElem FieldElem::inv() const {
  if (!valid()) fail(Errc::CtxMismatch, "uninitialized field element");
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  return pow(ctx_->cardinality() - 2);
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  ensure_same_ctx(*this, o);
  if (o.is_zero()) fail(Errc::DivisionByZero, "division by zero");
  return *this * o.inv();
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  if (!valid()) fail(Errc::CtxMismatch, "uninitialized field element");
  FieldElem r = ctx_->one();
  FieldElem b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!valid() || !o.valid()) return valid() == o.valid();
  if (ctx_ != o.ctx_ && !ctx_->same_tower(*o.ctx_)) return false;
  return flat_ == o.flat_;
}

// ---------------------------------------------------------------------------
// Field operations

std::uint64_t subfield_exponent(const FieldCtx& ctx, std::uint64_t q) {
  const std::uint64_t p = ctx.characteristic();
  std::uint64_t t = p, s = 1;
  while (t != q) {
    auto n = checked_mul(t, p);
    if (!n || *n > ctx.cardinality()) fail(Errc::NotASubfieldCardinality, "q is not a power of the characteristic within the field");
    t = *n;
    ++s;
  }
  if (ctx.total_degree() % s != 0)
    fail(Errc::NotASubfieldCardinality,
         "GF(" + std::to_string(q) + ") is not a subfield of the context");
  return s;
}

FieldElem frobenius(const FieldElem& a, std::uint64_t q) {
  subfield_exponent(*a.ctx(), q);
  return a.pow(q);
}

std::vector<FieldElem> frobenius_orbit(const FieldElem& a, std::uint64_t q) {
  subfield_exponent(*a.ctx(), q);
  std::vector<FieldElem> orbit{a};
  FieldElem b = a.pow(q);
  while (!(b == a)) {
    orbit.push_back(b);
    b = b.pow(q);
  }
  return orbit;
}

std::uint64_t subfield_degree(const FieldElem& a, std::uint64_t q) {
  subfield_exponent(*a.ctx(), q);
  std::uint64_t len = 1;
  FieldElem b = a.pow(q);
  while (!(b == a)) {
    b = b.pow(q);
    ++len;
  }
  return len;
}

bool generates(const FieldElem& a, std::uint64_t q, std::uint64_t m) {
  const std::uint64_t s = subfield_exponent(*a.ctx(), q);
  if (m == 0 || (a.ctx()->total_degree() % (s * m)) != 0)
    fail(Errc::NotASubfieldCardinality, "context does not contain GF(q^m)");
  return subfield_degree(a, q) == m;
}

std::uint64_t mult_order(const FieldElem& a) {
  if (a.is_zero()) fail(Errc::ZeroElement, "multiplicative order of zero");
  const std::uint64_t n = a.ctx()->cardinality() - 1;
  std::uint64_t t = n;
  for (const auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e; ++i) {
      if (t % p == 0 && a.pow(t / p).is_one()) t /= p;
      else break;
    }
  }
  return t;
}

FieldElem trace_to(const FieldElem& a, std::uint64_t q) {
  const std::uint64_t s = subfield_exponent(*a.ctx(), q);
  const std::uint64_t d = a.ctx()->total_degree() / s;
  FieldElem acc = a;
  FieldElem cur = a;
  for (std::uint64_t i = 1; i < d; ++i) {
    cur = cur.pow(q);
    acc = acc + cur;
  }
  return acc;
}

FieldElem lift_to(const FieldElem& a, const CtxPtr& ext) {
  if (!a.valid() || !ext) fail(Errc::CtxMismatch, "null element or context");
  if (a.ctx() == ext) return a;
  if (!ext->extends(*a.ctx()))
    fail(Errc::CtxMismatch, "target context does not extend the element's context");
  std::vector<std::uint64_t> f(ext->total_degree(), 0);
  std::copy(a.flat().begin(), a.flat().end(), f.begin());
  return ext->from_flat(std::move(f));
}

FieldElem descend_to(const FieldElem& a, const CtxPtr& ancestor) {
  if (!a.valid() || !ancestor) fail(Errc::CtxMismatch, "null element or context");
  if (a.ctx() == ancestor) return a;
  if (!a.ctx()->extends(*ancestor))
    fail(Errc::CtxMismatch, "ancestor is not part of the element's tower");
  const std::size_t da = ancestor->total_degree();
  for (std::size_t i = da; i < a.flat().size(); ++i)
    if (a.flat()[i])
      fail(Errc::CoefficientDescentFailure,
           "element does not lie in the requested subcontext");
  return ancestor->from_flat(std::vector<std::uint64_t>(a.flat().begin(), a.flat().begin() + da));
}

FieldElem primitive_element(const CtxPtr& ctx) {
  const std::uint64_t n = ctx->cardinality() - 1;
  auto fac = factorize(n);
  for (std::uint64_t r = 1; r < ctx->cardinality(); ++r) {
    FieldElem e = ctx->from_rank(r);
    bool ok = true;
    for (const auto& [p, _] : fac) {
      if (e.pow(n / p).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return e;
  }
  fail(Errc::InternalError, "no primitive element found");
}

std::vector<FieldElem> subfield_elements(const CtxPtr& ctx, std::uint64_t q) {
  subfield_exponent(*ctx, q);
  std::vector<FieldElem> out;
  if (ctx->cardinality() <= (1ull << 16)) {
    for (std::uint64_t r = 0; r < ctx->cardinality(); ++r) {
      FieldElem a = ctx->from_rank(r);
      if (a.pow(q) == a) out.push_back(a);
    }
    return out;  // rank order by construction
  }
  // Large ambient field: the subfield is {0} plus the cyclic group generated
  // by w^((Q-1)/(q-1)) for primitive w.
  FieldElem w = primitive_element(ctx);
  FieldElem u = w.pow((ctx->cardinality() - 1) / (q - 1));
  out.push_back(ctx->zero());
  FieldElem cur = ctx->one();
  for (std::uint64_t i = 0; i + 1 < q; ++i) {
    out.push_back(cur);
    cur = cur * u;
  }
  std::sort(out.begin(), out.end(),
            [](const FieldElem& a, const FieldElem& b) { return a.rank() < b.rank(); });
  return out;
}

std::vector<FieldElem> degree_generators(const CtxPtr& ctx, std::uint64_t q, std::uint64_t m) {
  const std::uint64_t s = subfield_exponent(*ctx, q);
  if (m == 0 || (ctx->total_degree() % (s * m)) != 0)
    fail(Errc::NotASubfieldCardinality, "context does not contain GF(q^m)");
  auto qm = checked_pow(q, m);
  if (!qm) fail(Errc::CardinalityCapExceeded, "q^m exceeds 64 bits");
  std::vector<FieldElem> out;
  for (auto& a : subfield_elements(ctx, *qm))
    if (subfield_degree(a, q) == m) out.push_back(std::move(a));
  return out;
}

}  // namespace ffd
