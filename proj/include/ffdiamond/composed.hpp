#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdiamond/poly.hpp"
#include "json.hpp"

namespace ffd {

/// Bivariate polynomial phi(x,y) = sum_i psi_i(x) y^i over a base context,
/// stored as the coefficient matrix a[i][j] of x^j y^i with trailing zero
/// rows/columns trimmed.
class BivarPoly {
 public:
  BivarPoly(CtxPtr ctx, std::vector<std::vector<FieldElem>> rows);
  const CtxPtr& ctx() const { return ctx_; }
  int deg_x() const;
  int deg_y() const { return static_cast<int>(rows_.size()) - 1; }
  const std::vector<std::vector<FieldElem>>& rows() const { return rows_; }
  FieldElem coeff(std::size_t i, std::size_t j) const;  // of x^j y^i
  /// psi_i(x), the coefficient of y^i.
  Poly psi(std::size_t i) const;
  /// Evaluation; the arguments live in a common context extending ctx.
  FieldElem eval(const FieldElem& x, const FieldElem& y) const;
  bool operator==(const BivarPoly& o) const;

 private:
  CtxPtr ctx_;
  std::vector<std::vector<FieldElem>> rows_;
};

/// Canonical text: terms c*x^j*y^i sorted by (i, j) descending, univariate
/// conventions for coefficients and unit omission.
std::string format_bivar(const BivarPoly& phi);
BivarPoly parse_bivar(std::string_view text, const CtxPtr& ctx);

/// A diamond product: the builtin addition/multiplication, or an arbitrary
/// bivariate polynomial with coefficients in the base field. All three
/// commute with every Frobenius power of the base field.
class DiamondOp {
 public:
  enum class Kind { add, mul, bivar };
  static DiamondOp add() { return DiamondOp(Kind::add); }
  static DiamondOp mul() { return DiamondOp(Kind::mul); }
  static DiamondOp bivar(BivarPoly phi);
  Kind kind() const { return kind_; }
  const BivarPoly& phi() const;
  std::string describe() const;

 private:
  explicit DiamondOp(Kind k) : kind_(k) {}
  Kind kind_;
  std::optional<BivarPoly> phi_;
};

FieldElem eval_diamond(const DiamondOp& d, const FieldElem& a, const FieldElem& b);

/// The polynomial whose roots are all pairwise diamonds of the roots of f and
/// g (with multiplicity); degree is always deg f * deg g and the coefficients
/// descend to the common coefficient field. Inputs must be monic of degree
/// >= 1; the working extension is sized from the factor degrees of f and g.
Poly composed_product(const Poly& f, const Poly& g, const DiamondOp& d,
                      std::uint64_t seed = kDefaultSeed, const Limits& lim = {});

/// Which pairs the cancellation implications quantify over.
///
/// frobenius_orbit restricts the second operand to Frobenius conjugates
/// (a' = sigma^k(a), b' = sigma^k(b)). This is the hypothesis the composed-
/// product irreducibility proof consumes and the property the degree-bound
/// theorem establishes. full quantifies over the whole generator sets; it is
/// strictly stronger, and polynomials within the degree bounds can fail it
/// (x*y+x*y^2 over GF(2) on the (2,3) sets collides at b' = b+1, which is not
/// a conjugate of b), so full-range failures with no recorded shift do not
/// contradict the irreducibility machinery.
enum class CancellationRange { frobenius_orbit, full };

struct WeakCancellation {
  struct Counterexample {
    /// true: a<>b == a<>b' with b != b' (cancellation of the right operand
    /// failed); false: a<>b == a'<>b with a != a'.
    bool right_operand = true;
    FieldElem a;
    FieldElem other;  // b' when right_operand, a' otherwise
    FieldElem b;
    /// shift with other == sigma^k(b) (resp. sigma^k(a)) when the two lie in
    /// the same Frobenius orbit; always present for orbit-range checks.
    std::optional<std::uint64_t> frobenius_shift;
    std::string describe() const;
  };
  bool holds = true;
  std::optional<Counterexample> cex;
  std::uint64_t pairs = 0;
  CancellationRange range = CancellationRange::frobenius_orbit;
  CtxPtr work;
};

/// Exhaustive check of both cancellation implications over the degree-m and
/// degree-n generator sets of the base field, realized inside GF(q^{mn}).
/// Scan order: right-operand condition first (a ascending, then b ascending,
/// then the partner), then the left-operand condition (b ascending, then a
/// ascending, then the partner); the first violation in that order is
/// reported.
WeakCancellation weak_cancellation(const DiamondOp& d, const CtxPtr& base, std::uint64_t m,
                                   std::uint64_t n, const Limits& lim = {},
                                   CancellationRange range = CancellationRange::frobenius_orbit);

struct RestrictedInjectivity {
  bool holds = true;
  /// (alpha, k) with psi(alpha) == psi(sigma^k(alpha)) but sigma^k(alpha) != alpha.
  std::optional<std::pair<FieldElem, std::uint64_t>> cex;
  CtxPtr work;
};

/// psi(alpha) == psi(sigma^k(alpha)) forces alpha == sigma^k(alpha) on the
/// degree-m generators. Checked by the direct collision scan and, per
/// element, against the equivalent membership condition psi(alpha) in
/// F_m(q); disagreement of the two routes is an internal error.
RestrictedInjectivity restricted_injectivity(const Poly& psi, std::uint64_t m,
                                             const Limits& lim = {});

/// For alpha generating GF(q^m) over GF(q) and m not dividing k: the family
/// alpha^i - sigma^k(alpha^i), 1 <= i < m1 (m1 = smallest prime divisor of m)
/// is checked for linear independence over GF(q) by rank computation.
bool linear_independence_check(const FieldElem& alpha, std::uint64_t q, std::uint64_t k);

struct BrawleyCarlitz {
  std::uint64_t m = 0, n = 0;
  bool coprime = false;
  std::uint64_t irreducible_pairs = 0;
  std::uint64_t products_irreducible = 0;
  std::uint64_t reducible_samples = 0;
  bool equivalence_holds = true;
  std::string violation;  // empty when none
  std::uint64_t seed = 0;
  nlohmann::ordered_json to_json() const;
};

/// Verifies, over every pair of monic irreducibles of degrees (m, n) plus a
/// seeded sample of reducible monics, that the composed product is
/// irreducible exactly when both inputs are irreducible and gcd(m, n) == 1.
/// Refuses (WeakCancellationFails) when d does not satisfy weak cancellation.
BrawleyCarlitz brawley_carlitz_verify(const CtxPtr& base, std::uint64_t m, std::uint64_t n,
                                      const DiamondOp& d, std::uint64_t seed = kDefaultSeed,
                                      const Limits& lim = {});

/// Several diamond ops over one (m, n) grid point, sharing the per-polynomial
/// root computations.
std::vector<BrawleyCarlitz> brawley_carlitz_verify(const CtxPtr& base, std::uint64_t m,
                                                   std::uint64_t n,
                                                   const std::vector<DiamondOp>& ds,
                                                   std::uint64_t seed = kDefaultSeed,
                                                   const Limits& lim = {});

struct DegreeBoundSweep {
  std::uint64_t phis = 0;
  bool all_hold = true;
  std::optional<BivarPoly> violating_phi;
  std::optional<WeakCancellation::Counterexample> cex;
  nlohmann::ordered_json to_json() const;
};

/// Orbit-range weak cancellation for EVERY bivariate phi with 0 < deg_x < m1
/// and 0 < deg_y < n1 (m, n > 1 coprime). Uses precomputed monomial tables,
/// so the per-phi cost is a handful of word operations per generator pair.
DegreeBoundSweep weak_cancellation_degree_sweep(const CtxPtr& base, std::uint64_t m,
                                                std::uint64_t n, const Limits& lim = {});

nlohmann::ordered_json to_json(const WeakCancellation& w);
nlohmann::ordered_json to_json(const RestrictedInjectivity& r);

}  // namespace ffd
