#pragma once
// 64-bit modular arithmetic helpers: mul/pow/inv mod m, integer sqrt,
// deterministic Miller-Rabin, Kronecker symbol, Tonelli-Shanks.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace frobangle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// inverse of a mod m (extended Euclid); requires gcd(a, m) = 1
inline u64 inv_mod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("inv_mod: argument not invertible");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// deterministic for all 64-bit inputs with this base set
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

// Kronecker symbol (a|n) for n >= 1
inline int kronecker_symbol(i64 a, u64 n) {
  if (n == 0) throw std::invalid_argument("kronecker_symbol: n must be >= 1");
  int result = 1;
  if ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    int k = 0;
    while ((n & 1) == 0) { n >>= 1; ++k; }
    i64 a8 = ((a % 8) + 8) % 8;
    if ((k & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  if (a < 0) {
    if (n % 4 == 3) result = -result;
    a = -a;
  }
  u64 ua = static_cast<u64>(a) % n;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(ua, n);
    if ((ua & 3) == 3 && (n & 3) == 3) result = -result;
    ua %= n;
  }
  return n == 1 ? result : 0;
}

// square root of a mod odd prime p, or nullopt if a is a non-residue
inline std::optional<u64> tonelli_shanks(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if ((p & 3) == 3) return pow_mod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) { q >>= 1; ++s; }
  u64 z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s;
  u64 c = pow_mod(z, q, p);
  u64 t = pow_mod(a, q, p);
  u64 r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) { t2 = mul_mod(t2, t2, p); ++i; }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

}  // namespace frobangle
