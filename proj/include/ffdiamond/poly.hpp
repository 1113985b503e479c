#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ffdiamond/gf.hpp"

namespace ffd {

/// Univariate polynomial over a FieldCtx. Coefficients are stored lowest
/// degree first with no trailing zeros; the zero polynomial has an empty
/// coefficient vector and degree() == -1 (the "minus infinity" sentinel).
class Poly {
 public:
  Poly() = default;
  Poly(CtxPtr ctx, std::vector<FieldElem> coeffs_low_first);

  static Poly zero(const CtxPtr& ctx);
  static Poly one(const CtxPtr& ctx);
  static Poly x(const CtxPtr& ctx);
  static Poly constant(const FieldElem& c);
  /// x - a.
  static Poly x_minus(const FieldElem& a);

  const CtxPtr& ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const;
  const FieldElem& leading() const;
  /// Coefficient of x^i (zero element beyond the degree).
  FieldElem coeff(std::size_t i) const;
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElem& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Monic normalization (divides by the leading coefficient).
  Poly monic() const;
  Poly derivative() const;

  /// Horner evaluation; a may live in any context extending the coefficient
  /// context (coefficients are lifted).
  FieldElem eval(const FieldElem& a) const;

  /// Lift all coefficients into a descendant context.
  Poly lift_to(const CtxPtr& ext) const;

 private:
  void normalize();
  CtxPtr ctx_;
  std::vector<FieldElem> coeffs_;
};

/// quotient/remainder with nonzero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_quot(const Poly& a, const Poly& b);
Poly poly_rem(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) == 0.
Poly poly_gcd(Poly a, Poly b);
/// b^e mod modulus by square-and-multiply (modulus normalized internally).
Poly powmod(const Poly& b, std::uint64_t e, const Poly& modulus);

/// Rabin's criterion: f (monic-normalized) of degree n over GF(q) is
/// irreducible iff x^{q^n} == x (mod f) and gcd(x^{q^{n/t}} - x, f) == 1 for
/// every prime t | n. q-power polynomials are built by iterating the q-power
/// map, so no exponent ever exceeds 64 bits.
bool is_irreducible(const Poly& f);

/// Product of the distinct irreducible factors of f, monic.
Poly squarefree_radical(const Poly& f);

/// Distinct-degree profile: (degree, number of irreducible factors of that
/// degree counted without multiplicity), ascending degree.
std::vector<std::pair<std::uint64_t, std::uint64_t>> factor_degree_profile(const Poly& f);

/// All distinct roots of f in ext (a context extending f's), sorted by rank.
/// Small fields (<= 2^16 elements) are scanned exhaustively, larger ones use
/// seeded Cantor-Zassenhaus splitting; the result is seed-independent because
/// the root set is sorted.
std::vector<FieldElem> roots_in(const Poly& f, const CtxPtr& ext,
                                std::uint64_t seed = kDefaultSeed);

/// Multiplicity of `root` in f (0 when not a root).
std::uint64_t root_multiplicity(const Poly& f, const FieldElem& root);

/// Monic minimal polynomial of a over the subfield of cardinality q, which
/// must be a node of a's tower; the product of (x - a^{q^i}) over the orbit,
/// with coefficients descended into that node.
Poly minimal_polynomial(const FieldElem& a, std::uint64_t q);

/// Deterministic enumeration of all monic irreducibles of one degree, in
/// lexicographic coefficient order (constant coefficient fastest). The
/// candidate space q^degree must fit the budget. Splittable by index for
/// sharded consumption.
class MonicIrreducibles {
 public:
  MonicIrreducibles(CtxPtr ctx, std::uint64_t degree, std::uint64_t budget = Limits{}.budget);
  /// Next irreducible, or nullopt when exhausted.
  std::optional<Poly> next();
  void reset() { idx_ = 0; }
  void skip_to(std::uint64_t candidate_index) { idx_ = candidate_index; }
  std::uint64_t candidate_count() const { return count_; }
  /// Monic candidate whose low coefficients are the base-p digits of idx.
  Poly candidate(std::uint64_t idx) const;

 private:
  CtxPtr ctx_;
  std::uint64_t degree_;
  std::uint64_t count_;
  std::uint64_t idx_ = 0;
};

/// Number of monic irreducibles of degree n over GF(q):
/// (1/n) sum_{d | n} mu(d) q^{n/d}.
std::uint64_t irreducible_count(std::uint64_t q, std::uint64_t n);

/// Monic irreducible of the given degree by seeded rejection sampling
/// (deterministic for a fixed seed).
Poly random_irreducible(const CtxPtr& ctx, std::uint64_t degree, std::uint64_t seed);

}  // namespace ffd
