#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "ffdiamond/numtheory.hpp"

using namespace ffd;

namespace {

// trial-division oracle
bool slow_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t slow_ord(std::uint64_t k, std::uint64_t r) {
  std::uint64_t t = 1, x = r % k;
  while (x != 1 % k) {
    x = (x * r) % k;
    ++t;
  }
  return t;
}

}  // namespace

TEST_CASE("miller-rabin agrees with trial division") {
  for (std::uint64_t n = 0; n < 4000; ++n) CHECK(is_prime(n) == slow_is_prime(n));
  CHECK(is_prime(4294967311ull));
  CHECK(!is_prime(4294967311ull * 3));
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK(!is_prime(3215031751ull));           // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("factorization reconstructs and is prime") {
  for (std::uint64_t n : {2ull, 360ull, 1ull << 32, 600851475143ull, 87178291199ull,
                          614889782588491410ull}) {
    std::uint64_t prod = 1;
    for (const auto& [p, e] : factorize(n)) {
      CHECK(is_prime(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("divisors and mobius") {
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(mobius(1) == 1);
  CHECK(mobius(2) == -1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  // sum over divisors of mu(d) is [n == 1]
  for (std::uint64_t n = 1; n < 200; ++n) {
    int s = 0;
    for (std::uint64_t d : divisors(n)) s += mobius(d);
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("ord_mod") {
  CHECK(ord_mod(1, 5) == 1);
  CHECK(ord_mod(7, 2) == 3);
  CHECK(ord_mod(341, 2) == slow_ord(341, 2));
  CHECK(ord_mod(341, 2) == 10);
  for (std::uint64_t k = 2; k < 80; ++k)
    for (std::uint64_t r = 2; r < k; ++r)
      if (std::gcd(k, r) == 1) CHECK(ord_mod(k, r) == slow_ord(k, r));
  CHECK_THROWS_AS(ord_mod(10, 4), Error);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_mul(1ull << 32, 1ull << 31).has_value());
  CHECK(!checked_mul(1ull << 32, 1ull << 32).has_value());
  CHECK(checked_pow(2, 63).has_value());
  CHECK(!checked_pow(2, 64).has_value());
  CHECK(*checked_pow(3, 18) == 387420489ull);
}

TEST_CASE("rng is deterministic and full-range") {
  Rng a(42), b(42), c(43);
  bool diverged = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.next();
    CHECK(x == b.next());
    if (x != c.next()) diverged = true;
  }
  CHECK(diverged);
  Rng r(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t v = r.below(10);
    CHECK(v < 10);
    seen.insert(v);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("derive_seed separates tasks") {
  CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 4, 3));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(2, 2, 3, 4));
}
