#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ffdiamond/common.hpp"

namespace ffd {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Prime factorization, ascending primes. Trial division for small factors,
/// Brent's variant of Pollard rho for the rest.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// All divisors of n, sorted ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t smallest_prime_factor(std::uint64_t n);

/// q == p^e with p prime? On success fills p and e.
bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& e);

/// Least t >= 1 with r^t == 1 (mod k). Requires gcd(k, r) == 1.
std::uint64_t ord_mod(std::uint64_t k, std::uint64_t r);

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e);

/// splitmix64; used for seeding and seed derivation.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

/// xoshiro256** seeded through splitmix64. The algorithm is fixed so that
/// seeded runs are reproducible across platforms and releases.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }
  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }
  /// Unbiased value in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) fail(Errc::InternalError, "Rng::below(0)");
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

/// Mixes a base seed with task coordinates; gives shard-invariant per-task
/// seeds for sweeps.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  SplitMix64 sm{seed ^ (a * 0x9E3779B97F4A7C15ull) ^ (b * 0xC2B2AE3D27D4EB4Full) ^
                (c * 0x165667B19E3779F9ull)};
  return sm.next();
}

}  // namespace ffd
