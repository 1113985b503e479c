#include "ffdiamond/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace ffd {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotMonic: return "NotMonic";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::CtxMismatch: return "CtxMismatch";
    case Errc::NotASubfieldCardinality: return "NotASubfieldCardinality";
    case Errc::CardinalityCapExceeded: return "CardinalityCapExceeded";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::CoefficientOutOfField: return "CoefficientOutOfField";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::WeakCancellationFails: return "WeakCancellationFails";
    case Errc::EquivalenceViolation: return "EquivalenceViolation";
    case Errc::CoefficientDescentFailure: return "CoefficientDescentFailure";
    case Errc::NoFastPath: return "NoFastPath";
    case Errc::InternalError: return "InternalError";
  }
  return "UnknownError";
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // These twelve bases are a proven deterministic witness set for n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t c, std::uint64_t x0) {
  auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
  std::uint64_t x = x0, y = x0, d = 1, q = 1, ys = 0;
  std::uint64_t r = 1;
  const std::uint64_t m = 128;
  while (d == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && d == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      d = std::gcd(q, n);
      k += m;
    }
    r <<= 1;
  }
  if (d == n) {
    do {
      ys = f(ys);
      d = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (d == 1);
  }
  return d;
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) { out.push_back(n); return; }
  std::uint64_t d = n;
  for (std::uint64_t c = 1; d == n; ++c) d = pollard_brent(n, c, 2);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n < 2) return out;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p = (p == 2 ? 3 : p + 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    std::vector<std::uint64_t> rest;
    factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.emplace_back(rest[i], static_cast<int>(j - i));
      i = j;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t sz = out.size();
    std::uint64_t pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(std::uint64_t n) {
  if (n == 0) fail(Errc::PreconditionViolated, "mobius(0)");
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n < 2) fail(Errc::PreconditionViolated, "smallest_prime_factor needs n >= 2");
  return factorize(n).front().first;
}

bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& e) {
  if (q < 2) return false;
  auto f = factorize(q);
  if (f.size() != 1) return false;
  p = f[0].first;
  e = static_cast<unsigned>(f[0].second);
  return true;
}

std::uint64_t ord_mod(std::uint64_t k, std::uint64_t r) {
  if (k == 0) fail(Errc::PreconditionViolated, "ord_mod needs k >= 1");
  if (k == 1) return 1;
  r %= k;
  if (std::gcd(k, r) != 1) fail(Errc::NotCoprime, "ord_mod requires gcd(k, r) == 1");
  // Group order phi(k); strip primes from it until minimal.
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factorize(k)) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  std::uint64_t t = phi;
  for (const auto& [p, e] : factorize(phi)) {
    for (int i = 0; i < e; ++i) {
      if (t % p == 0 && powmod_u64(r, t / p, k) == 1) t /= p;
      else break;
    }
  }
  return t;
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return std::nullopt;
  return a * b;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    auto m = checked_mul(r, b);
    if (!m) return std::nullopt;
    r = *m;
  }
  return r;
}

}  // namespace ffd
