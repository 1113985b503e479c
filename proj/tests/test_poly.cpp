#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "ffdiamond/numtheory.hpp"
#include "ffdiamond/poly.hpp"
#include "ffdiamond/textio.hpp"

using namespace ffd;

namespace {

Poly monic_candidate(const CtxPtr& ctx, std::uint64_t deg, std::uint64_t idx) {
  std::vector<FieldElem> c;
  for (std::uint64_t i = 0; i < deg; ++i) {
    c.push_back(ctx->from_rank(idx % ctx->cardinality()));
    idx /= ctx->cardinality();
  }
  c.push_back(ctx->one());
  return Poly(ctx, std::move(c));
}

// trial-division irreducibility oracle: try every monic divisor of degree
// 1..deg/2
bool oracle_irreducible(const Poly& f) {
  const std::uint64_t q = f.ctx()->cardinality();
  for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(f.degree()) / 2; ++d) {
    for (std::uint64_t idx = 0; idx < *checked_pow(q, d); ++idx)
      if (poly_rem(f, monic_candidate(f.ctx(), d, idx)).is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ring operations") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  Poly xp1 = parse_poly("x+1", gf2);
  CHECK(xp1 * xp1 == parse_poly("x^2+1", gf2));
  CHECK(poly_gcd(parse_poly("x^2+x", gf2), parse_poly("x", gf2)) == parse_poly("x", gf2));
  CHECK(powmod(Poly::x(gf2), 4, parse_poly("x^2+x+1", gf2)) == Poly::x(gf2));

  CtxPtr gf5 = FieldCtx::make_prime(5);
  Poly a = parse_poly("x^3+2*x+1", gf5);
  Poly b = parse_poly("2*x^2+3", gf5);
  auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK_THROWS_AS(divmod(a, Poly::zero(gf5)), Error);

  CHECK(Poly::zero(gf2).degree() == -1);
  CHECK(poly_gcd(Poly::zero(gf2), Poly::zero(gf2)).is_zero());
}

TEST_CASE("evaluation") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CtxPtr gf4 = FieldCtx::canonical_extension(gf2, 2);
  Poly f = parse_poly("x^2+x+1", gf2);
  CHECK(f.eval(gf4->generator()).is_zero());  // the generator is a root by construction
  CHECK(parse_poly("x^3+x+1", gf2).eval(gf2->one()).is_one());
  Poly c = Poly::constant(gf2->one());
  CHECK(c.eval(gf4->generator()).is_one());
  // different tower: rejected
  CtxPtr gf4b = FieldCtx::canonical_extension(FieldCtx::make_prime(3), 2);
  CHECK_THROWS_AS(f.eval(gf4b->generator()), Error);
}

TEST_CASE("rabin test agrees with trial division exhaustively") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  for (std::uint64_t deg = 1; deg <= 8; ++deg)
    for (std::uint64_t idx = 0; idx < (1ull << deg); ++idx) {
      Poly f = monic_candidate(gf2, deg, idx);
      CHECK(is_irreducible(f) == oracle_irreducible(f));
    }
  CtxPtr gf3 = FieldCtx::make_prime(3);
  for (std::uint64_t deg = 1; deg <= 5; ++deg)
    for (std::uint64_t idx = 0; idx < *checked_pow(3, deg); ++idx) {
      Poly f = monic_candidate(gf3, deg, idx);
      CHECK(is_irreducible(f) == oracle_irreducible(f));
    }
}

TEST_CASE("irreducibility spot checks") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CtxPtr gf3 = FieldCtx::make_prime(3);
  CHECK(is_irreducible(parse_poly("x^2+x+1", gf2)));
  CHECK(!is_irreducible(parse_poly("x^2+1", gf2)));
  CHECK(is_irreducible(parse_poly("x^2+1", gf3)));
  CHECK_THROWS_AS(is_irreducible(Poly::one(gf2)), Error);
  // non-monic inputs are normalized
  CHECK(is_irreducible(parse_poly("2*x^2+2", gf3)));
}

TEST_CASE("roots in small extensions by exhaustive scan") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CtxPtr gf4 = FieldCtx::canonical_extension(gf2, 2);
  CtxPtr gf8 = FieldCtx::canonical_extension(gf2, 3);
  Poly f = parse_poly("x^2+x+1", gf2);
  auto roots = roots_in(f, gf4);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == gf4->generator());
  CHECK(roots[1] == gf4->generator() + gf4->one());
  CHECK(roots_in(f, gf8).empty());  // GF(4) is not inside GF(8)
  auto sq = roots_in(parse_poly("x^2", gf2), gf4);
  REQUIRE(sq.size() == 1);  // distinct roots only
  CHECK(sq[0].is_zero());
}

TEST_CASE("roots in large extensions via seeded splitting") {
  // char 2, 2^18 elements
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CtxPtr big2 = FieldCtx::canonical_extension(gf2, 18);
  auto r2 = roots_in(parse_poly("x^2+x+1", gf2), big2);
  REQUIRE(r2.size() == 2);
  for (const auto& r : r2) CHECK(parse_poly("x^2+x+1", gf2).eval(r).is_zero());
  CHECK(r2[0].rank() < r2[1].rank());
  // seed independence of the sorted root set
  CHECK(roots_in(parse_poly("x^2+x+1", gf2), big2, 12345) == r2);

  // odd characteristic, 3^11 elements: the canonical modulus splits in its
  // own extension with all 11 roots distinct
  CtxPtr gf3 = FieldCtx::make_prime(3);
  CtxPtr big3 = FieldCtx::canonical_extension(gf3, 11);
  Poly mod(gf3, [&] {
    auto low = big3->modulus_coeffs();
    low.push_back(gf3->one());
    return low;
  }());
  auto r3 = roots_in(mod, big3);
  REQUIRE(r3.size() == 11);
  for (const auto& r : r3) CHECK(mod.eval(r).is_zero());
  for (std::size_t i = 1; i < r3.size(); ++i) CHECK(r3[i - 1].rank() < r3[i].rank());
}

TEST_CASE("root counts follow the orbit structure") {
  CtxPtr gf3 = FieldCtx::make_prime(3);
  MonicIrreducibles range(gf3, 2);
  while (auto f = range.next()) {
    CHECK(roots_in(*f, FieldCtx::canonical_extension(gf3, 4)).size() == 2);  // 2 | 4
    CHECK(roots_in(*f, FieldCtx::canonical_extension(gf3, 3)).empty());      // 2 does not divide 3
  }
}

TEST_CASE("root multiplicity") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  Poly f = parse_poly("x^2+1", gf2);  // (x+1)^2
  CHECK(root_multiplicity(f, gf2->one()) == 2);
  CHECK(root_multiplicity(f, gf2->zero()) == 0);
}

TEST_CASE("minimal polynomials") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CtxPtr gf4 = FieldCtx::canonical_extension(gf2, 2);
  CHECK(minimal_polynomial(gf4->generator(), 2) == parse_poly("x^2+x+1", gf2));
  CHECK(minimal_polynomial(lift_to(gf2->one(), gf4), 2) == parse_poly("x+1", gf2));

  // defining property plus orbit-product identity over a bigger tower
  CtxPtr gf64 = FieldCtx::canonical_extension(gf2, 6);
  for (std::uint64_t r : {5ull, 23ull, 40ull, 63ull}) {
    FieldElem a = gf64->from_rank(r);
    Poly mp = minimal_polynomial(a, 2);
    CHECK(mp.is_monic());
    CHECK(is_irreducible(mp));
    CHECK(mp.eval(a).is_zero());
    CHECK(static_cast<std::uint64_t>(mp.degree()) == subfield_degree(a, 2));
    Poly prod = Poly::one(gf64);
    for (const auto& c : frobenius_orbit(a, 2)) prod = prod * Poly::x_minus(c);
    CHECK(prod == mp.lift_to(gf64));
  }
  // q must be a tower node
  CHECK_THROWS_AS(minimal_polynomial(gf64->generator(), 4), Error);
}

TEST_CASE("exhaustive irreducible enumeration") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  MonicIrreducibles deg2(gf2, 2);
  auto first = deg2.next();
  REQUIRE(first.has_value());
  CHECK(*first == parse_poly("x^2+x+1", gf2));
  CHECK(!deg2.next().has_value());  // the unique one

  auto count_of = [](const CtxPtr& ctx, std::uint64_t n) {
    MonicIrreducibles r(ctx, n);
    std::uint64_t c = 0;
    while (auto f = r.next()) {
      CHECK(is_irreducible(*f));
      ++c;
    }
    return c;
  };
  CHECK(count_of(gf2, 3) == 2);
  CtxPtr gf3 = FieldCtx::make_prime(3);
  CHECK(count_of(gf3, 2) == 3);
  // against the closed-form count for a couple of grids
  CHECK(count_of(gf2, 6) == irreducible_count(2, 6));
  CHECK(count_of(gf3, 4) == irreducible_count(3, 4));
  CHECK_THROWS_AS(MonicIrreducibles(gf2, 40), Error);  // budget
}

TEST_CASE("random irreducibles are deterministic and verified") {
  CtxPtr gf5 = FieldCtx::make_prime(5);
  Poly a = random_irreducible(gf5, 4, 42);
  Poly b = random_irreducible(gf5, 4, 42);
  CHECK(a == b);
  CHECK(a.degree() == 4);
  CHECK(oracle_irreducible(a));  // trial division against all lower degrees
  CHECK(random_irreducible(gf5, 4, 43).degree() == 4);
  CtxPtr gf2 = FieldCtx::make_prime(2);
  Poly lin = random_irreducible(gf2, 1, 7);
  CHECK(lin.degree() == 1);
}

TEST_CASE("factor degree profile against an enumeration oracle") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  // brute force: factor by dividing out irreducibles in order
  auto brute_profile = [&](Poly f) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(f.degree()); ++d) {
      std::uint64_t cnt = 0;
      for (std::uint64_t idx = 0; idx < (1ull << d); ++idx) {
        Poly g = monic_candidate(gf2, d, idx);
        if (!is_irreducible(g)) continue;
        if (poly_rem(f, g).is_zero()) {
          ++cnt;
          while (poly_rem(f, g).is_zero()) f = poly_quot(f, g);
        }
      }
      if (cnt) out.emplace_back(d, cnt);
    }
    return out;
  };
  for (std::uint64_t idx = 0; idx < (1ull << 7); ++idx) {
    Poly f = monic_candidate(gf2, 7, idx);
    CHECK(factor_degree_profile(f) == brute_profile(f));
  }
}

TEST_CASE("squarefree radical") {
  CtxPtr gf2 = FieldCtx::make_prime(2);
  CHECK(squarefree_radical(parse_poly("x^2+1", gf2)) == parse_poly("x+1", gf2));
  CHECK(squarefree_radical(parse_poly("x^4+x^2", gf2)) ==
        parse_poly("x^2+x", gf2));  // x^2 (x+1)^2 -> x(x+1)
  CtxPtr gf3 = FieldCtx::make_prime(3);
  // (x^3 - x)^3 has zero derivative in char 3
  Poly f = parse_poly("x^3+2*x", gf3);
  CHECK(squarefree_radical(f * f * f) == f.monic());
}
