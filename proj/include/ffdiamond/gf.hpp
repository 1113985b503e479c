#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffdiamond/common.hpp"

namespace ffd {

class FieldCtx;
class FieldElem;
class Poly;
using CtxPtr = std::shared_ptr<FieldCtx>;

/// A node in an extension tower: either a prime field GF(p) or an extension
/// of its base context by a monic irreducible modulus. Contexts are immutable
/// and freely shared across threads; equality is structural (same prime, same
/// modulus chain coefficient-by-coefficient).
///
/// Elements of every context are stored as coefficient vectors over the prime
/// field in the tower basis, so an element of the k-th node embeds into any
/// descendant by zero-padding. Cardinalities are checked 64-bit integers;
/// towers whose cardinality would overflow are rejected at construction.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  static CtxPtr make_prime(std::uint64_t p);
  /// Extends `base` by a monic irreducible `modulus` of degree >= 2.
  static CtxPtr extend(const CtxPtr& base, const Poly& modulus,
                       std::uint64_t cap = UINT64_MAX);
  /// Extends by the first monic irreducible of the given degree in canonical
  /// (lexicographic, constant coefficient fastest) order. degree == 1 returns
  /// `base` itself.
  static CtxPtr canonical_extension(const CtxPtr& base, std::uint64_t degree,
                                    std::uint64_t cap = UINT64_MAX);

  bool is_prime_field() const { return !base_; }
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t cardinality() const { return card_; }
  /// Extension degree over the immediate base (1 for prime fields).
  std::uint64_t degree() const { return deg_; }
  /// Degree over the prime field; equals the flat coefficient length.
  std::uint64_t total_degree() const { return dim_; }
  const CtxPtr& base() const { return base_; }

  // Element factories; non-const only because they hand out owning pointers
  // to this context. Contexts never mutate after construction.
  FieldElem zero();
  FieldElem one();
  /// Residue class of the tower variable (for prime fields: the residue 1).
  FieldElem generator();
  FieldElem from_rank(std::uint64_t rank);
  FieldElem from_flat(std::vector<std::uint64_t> flat);
  /// Element of the prime subfield with the given residue (reduced mod p).
  FieldElem from_residue(std::uint64_t r);

  /// Low `degree()` coefficients of the modulus, as base-context elements.
  std::vector<FieldElem> modulus_coeffs() const;

  bool same_tower(const FieldCtx& other) const;
  /// True when `ancestor` appears in this context's tower chain (or equals it).
  bool extends(const FieldCtx& ancestor) const;

  std::string describe() const;  // e.g. "GF(2^4) = GF(2)[x]/(x^4+x+1)"

  // Internal: flat modulus access used by the arithmetic kernels.
  std::span<const std::uint64_t> modulus_flat_neg() const { return modneg_; }
  std::uint64_t structural_hash() const { return hash_; }

 private:
  FieldCtx() = default;
  CtxPtr base_;
  std::uint64_t p_ = 0;
  std::uint64_t card_ = 0;
  std::uint64_t deg_ = 1;
  std::uint64_t dim_ = 1;
  std::uint64_t hash_ = 0;
  // Negated low modulus coefficients, flat over the prime field (deg_ blocks
  // of base dimension); used to reduce the top coefficient during multiply.
  std::vector<std::uint64_t> modneg_;
};

/// Element of a FieldCtx. Immutable value type; arithmetic requires both
/// operands to live in the same tower context.
class FieldElem {
 public:
  FieldElem() = default;  // "null" element; using it in arithmetic throws
  FieldElem(CtxPtr ctx, std::vector<std::uint64_t> flat);

  bool valid() const { return static_cast<bool>(ctx_); }
  const CtxPtr& ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;

  /// Canonical rank: coefficient vectors ordered lexicographically with the
  /// constant coefficient fastest, i.e. sum flat[i] * p^i.
  std::uint64_t rank() const;
  std::span<const std::uint64_t> flat() const { return flat_; }
  /// Coefficients over the immediate base context, constant first.
  std::vector<FieldElem> coeffs() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const;
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

 private:
  friend class FieldCtx;
  CtxPtr ctx_;
  std::vector<std::uint64_t> flat_;
};

/// a^q where q = p^s is a subfield cardinality (s divides the total degree).
FieldElem frobenius(const FieldElem& a, std::uint64_t q);

/// [a, a^q, a^{q^2}, ...] up to first repetition; length = [F_q(a) : F_q].
std::vector<FieldElem> frobenius_orbit(const FieldElem& a, std::uint64_t q);

/// Least t >= 1 with a^t == 1; factors |ctx|-1.
std::uint64_t mult_order(const FieldElem& a);

/// Relative trace into the subfield of cardinality q (result stays in a's
/// context, fixed by the q-power map).
FieldElem trace_to(const FieldElem& a, std::uint64_t q);

/// True iff a lies in F_{q^m} and generates it over F_q, i.e. the q-power
/// orbit of a has length exactly m. Zero generates only the m == 1 field.
bool generates(const FieldElem& a, std::uint64_t q, std::uint64_t m);

/// [F_q(a) : F_q] = q-power orbit length of a.
std::uint64_t subfield_degree(const FieldElem& a, std::uint64_t q);

/// Embedding along the tower: ext must extend a's context.
FieldElem lift_to(const FieldElem& a, const CtxPtr& ext);

/// Verified projection onto an ancestor context; throws
/// CoefficientDescentFailure when a does not lie in the embedded ancestor.
FieldElem descend_to(const FieldElem& a, const CtxPtr& ancestor);

/// All elements of the subfield of cardinality q inside ctx, sorted by rank.
/// Scans the whole field when it is small, otherwise walks powers of a
/// primitive element.
std::vector<FieldElem> subfield_elements(const CtxPtr& ctx, std::uint64_t q);

/// The set of elements of ctx that lie in F_{q^m} and generate it over F_q,
/// sorted by rank. Its size is sum_{d | m} mu(m/d) q^d.
std::vector<FieldElem> degree_generators(const CtxPtr& ctx, std::uint64_t q, std::uint64_t m);

/// First element in rank order whose multiplicative order is |ctx| - 1.
FieldElem primitive_element(const CtxPtr& ctx);

/// Validates that q is a subfield cardinality of ctx (q == p^s, s | total
/// degree) and returns s.
std::uint64_t subfield_exponent(const FieldCtx& ctx, std::uint64_t q);

}  // namespace ffd
