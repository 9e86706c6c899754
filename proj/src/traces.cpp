#include "frobangle/traces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "frobangle/arith.hpp"
#include "frobangle/primes.hpp"
#include "worker_pool.hpp"

namespace frobangle {

namespace {

i128 discriminant_term(long long a, long long b) {
  i128 a3 = i128(a) * a * a;
  return 4 * a3 + 27 * i128(b) * b;
}

// prime factors of 2|4a^3+27b^2| (trial division, then one primality test)
std::vector<u64> bad_prime_set(long long a, long long b) {
  i128 disc = discriminant_term(a, b);
  if (disc == 0) throw std::invalid_argument("make_curve: singular model (4a^3 + 27b^2 = 0)");
  if (disc < 0) disc = -disc;
  u128 n = u128(2) * static_cast<u128>(disc);
  std::vector<u64> out;
  for (u64 q = 2; q <= 1000000 && u128(q) * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) {
    if (n >> 64 || !is_prime(static_cast<u64>(n)))
      throw std::invalid_argument("make_curve: cannot factor the discriminant");
    out.push_back(static_cast<u64>(n));
  }
  return out;  // ascending by construction
}

u64 reduce_mod(long long v, u64 p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<long long>(p) : r);
}

// x^3 + ax + b mod p
u64 curve_rhs(const CMCurve& curve, u64 p, u64 x) {
  u64 am = reduce_mod(curve.a, p), bm = reduce_mod(curve.b, p);
  u64 x2 = mul_mod(x, x, p);
  return (mul_mod(x2, x, p) + mul_mod(am, x, p) + bm) % p;
}

int legendre(u64 r, u64 p) {
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

double theta_from_trace(long long a_p, u64 p) {
  double arg = static_cast<double>(a_p) / (2.0 * std::sqrt(static_cast<double>(p)));
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

bool on_curve(const CMCurve& curve, u64 p, const ECPoint& P) {
  if (P.infinity) return true;
  if (P.x >= p || P.y >= p) return false;
  return mul_mod(P.y, P.y, p) == curve_rhs(curve, p, P.x);
}

// group law without re-validation; callers check on_curve once
ECPoint add_impl(const CMCurve& curve, u64 p, const ECPoint& P, const ECPoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  u64 lambda;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return {};  // vertical line
    u64 num = (3 * u128(P.x) % p) * P.x % p;
    num = (num + reduce_mod(curve.a, p)) % p;
    lambda = mul_mod(num, inv_mod(2 * u128(P.y) % p, p), p);
  } else {
    u64 dy = (Q.y + p - P.y) % p;
    u64 dx = (Q.x + p - P.x) % p;
    lambda = mul_mod(dy, inv_mod(dx, p), p);
  }
  u64 x3 = (mul_mod(lambda, lambda, p) + 2 * p - P.x - Q.x) % p;
  u64 y3 = (mul_mod(lambda, (P.x + p - x3) % p, p) + p - P.y) % p;
  return {x3, y3, false};
}

ECPoint mul_impl(const CMCurve& curve, u64 p, ECPoint P, u64 k) {
  ECPoint acc;
  while (k) {
    if (k & 1) acc = add_impl(curve, p, acc, P);
    P = add_impl(curve, p, P, P);
    k >>= 1;
  }
  return acc;
}

ECPoint negate(u64 p, const ECPoint& P) {
  if (P.infinity) return P;
  return {P.x, P.y == 0 ? 0 : p - P.y, false};
}

}  // namespace

bool is_bad_prime(const CMCurve& curve, u64 p) {
  if (std::binary_search(curve.bad_primes.begin(), curve.bad_primes.end(), p)) return true;
  i128 disc = 2 * discriminant_term(curve.a, curve.b);
  if (disc < 0) disc = -disc;
  return p != 0 && disc % p == 0;
}

long long point_count_oracle(const CMCurve& curve, u64 p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("point_count_oracle: odd prime required");
  if (is_bad_prime(curve, p)) throw std::invalid_argument("point_count_oracle: p is a bad prime");
  if (p > kOracleCeiling) throw std::invalid_argument("point_count_oracle: p exceeds the ceiling");
  long long sum = 0;  // #E = p + 1 + sum_x legendre(x^3+ax+b), so a_p = -sum
  for (u64 x = 0; x < p; ++x) sum += legendre(curve_rhs(curve, p, x), p);
  return -sum;
}

CMCurve make_curve(long long a, long long b, int d) {
  constexpr long long kCoeffCap = 1ll << 40;
  if (a < -kCoeffCap || a > kCoeffCap || b < -kCoeffCap || b > kCoeffCap)
    throw std::invalid_argument("make_curve: |a|, |b| <= 2^40 required");
  CMCurve curve{a, b, field_for_d(d), bad_prime_set(a, b)};
  // the model must show the trace dichotomy of its field: a_p = 0 exactly at
  // inert primes (checked small, where the oracle is cheap)
  for (u64 p : sieve_range(2, 1000).primes) {
    if (is_bad_prime(curve, p)) continue;
    Splitting st = splitting_type(curve.field, p);
    if (st == Splitting::Ramified) continue;
    long long ap = point_count_oracle(curve, p);
    if ((ap == 0) != (st == Splitting::Inert))
      throw std::invalid_argument("make_curve: model is not CM by Q(sqrt(-" + std::to_string(d) +
                                  ")) (dichotomy fails at p=" + std::to_string(p) + ")");
  }
  return curve;
}

CMCurve catalog_curve(int d) {
  switch (d) {
    case 1: return make_curve(-1, 0, 1);
    case 2: return make_curve(-270, 1512, 2);
    case 3: return make_curve(0, 1, 3);
    case 7: return make_curve(-35, -98, 7);
    case 11: return make_curve(-264, 1694, 11);
    case 19: return make_curve(-152, 722, 19);
    case 43: return make_curve(-3440, 77658, 43);
    case 67: return make_curve(-29480, 1948226, 67);
    case 163: return make_curve(-8697680, 9873093538ll, 163);
    default: throw std::invalid_argument("catalog_curve: no model for d=" + std::to_string(d));
  }
}

std::optional<std::pair<u64, u64>> cornacchia_4p(const ImagQuadField& field, u64 p) {
  const u64 D = static_cast<u64>(field.abs_discriminant);
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("cornacchia_4p: odd prime required");
  if (D % p == 0) throw std::invalid_argument("cornacchia_4p: p ramifies; caller must exclude");
  auto root = tonelli_shanks(p - D % p, p);
  if (!root) return std::nullopt;  // -D_K is a non-residue: p inert
  u64 x0 = *root;
  if ((x0 & 1) != (D & 1)) x0 = p - x0;  // need x0^2 = -D mod 4 as well
  u64 r0 = 2 * p, r1 = x0;
  const u64 limit = isqrt_u64(4 * p);
  while (r1 > limit) {
    u64 r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  u64 c = 4 * p - r1 * r1;
  if (r1 == 0 || c % D != 0) throw std::logic_error("cornacchia_4p: descent failed on a split prime");
  u64 t = c / D;
  u64 v = isqrt_u64(t);
  if (v * v != t) throw std::logic_error("cornacchia_4p: descent failed on a split prime");
  u64 u = r1;
  // canonical representative of the unit orbit: minimal u, then minimal v
  std::pair<u64, u64> best{u, v};
  auto consider = [&](u64 uu, u64 vv) {
    if (std::make_pair(uu, vv) < best) best = {uu, vv};
  };
  if (D == 4) {
    consider(2 * v, u / 2);
  } else if (D == 3) {
    u64 d1 = u > 3 * v ? u - 3 * v : 3 * v - u;
    consider(d1 / 2, (u + v) / 2);
    u64 d2 = u > v ? u - v : v - u;
    consider((u + 3 * v) / 2, d2 / 2);
  }
  return best;
}

std::vector<long long> trace_candidates(const ImagQuadField& field, u64 p,
                                        std::pair<u64, u64> rep) {
  const u64 D = static_cast<u64>(field.abs_discriminant);
  auto [u, v] = rep;
  if (u128(u) * u + u128(D) * v * v != u128(4) * p)
    throw std::invalid_argument("trace_candidates: rep does not satisfy u^2 + D v^2 = 4p");
  std::set<long long> out;
  auto both = [&](long long t) {
    out.insert(t);
    out.insert(-t);
  };
  both(static_cast<long long>(u));
  if (D == 4) {
    both(2 * static_cast<long long>(v));
  } else if (D == 3) {
    both((static_cast<long long>(u) + 3 * static_cast<long long>(v)) / 2);
    both((static_cast<long long>(u) - 3 * static_cast<long long>(v)) / 2);
  }
  return {out.begin(), out.end()};
}

ECPoint ec_add(const CMCurve& curve, u64 p, const ECPoint& P, const ECPoint& Q) {
  if (!on_curve(curve, p, P) || !on_curve(curve, p, Q))
    throw std::invalid_argument("ec_add: point not on curve");
  return add_impl(curve, p, P, Q);
}

ECPoint ec_scalar_mul(const CMCurve& curve, u64 p, const ECPoint& P, u64 k) {
  if (is_bad_prime(curve, p)) throw std::invalid_argument("ec_scalar_mul: p is a bad prime");
  if (!on_curve(curve, p, P)) throw std::invalid_argument("ec_scalar_mul: point not on curve");
  return mul_impl(curve, p, P, k);
}

ECPoint random_point(const CMCurve& curve, u64 p, SplitMix64& rng) {
  // y = 0 points are accepted: they carry little order information, but some
  // tiny groups consist of nothing else, and skipping them would spin forever.
  for (;;) {
    u64 x = rng.below(p);
    u64 r = curve_rhs(curve, p, x);
    if (r == 0) return {x, 0, false};
    if (auto y = tonelli_shanks(r, p)) return {x, *y, false};
  }
}

namespace {

// One filtering pass: keep candidates t whose group order p + 1 - sign*t
// annihilates max_rounds random points of `target`.  sign = +1 on the curve
// itself; sign = -1 on a quadratic twist, whose order is p + 1 + a_p.
void annihilation_rounds(const CMCurve& target, u64 p, std::vector<long long>& alive, int sign,
                         SplitMix64& rng, int max_rounds) {
  for (int round = 0; round < max_rounds && alive.size() > 1; ++round) {
    ECPoint P = random_point(target, p, rng);
    // (p+1-st) P = O  <=>  (p+1) P = (st) P; one large ladder, then small ones
    ECPoint big = mul_impl(target, p, P, p + 1);
    std::vector<long long> next;
    for (long long t : alive) {
      long long st = sign * t;
      u64 mag = static_cast<u64>(st < 0 ? -st : st);
      ECPoint tP = mul_impl(target, p, P, mag);
      if (st < 0) tP = negate(p, tP);
      if (tP.infinity == big.infinity && tP.x == big.x && tP.y == big.y) next.push_back(t);
    }
    if (next.empty())
      throw std::logic_error("disambiguate_by_annihilation: the true trace cannot be eliminated");
    alive = std::move(next);
  }
}

}  // namespace

std::optional<long long> disambiguate_by_annihilation(const CMCurve& curve, u64 p,
                                                      const std::vector<long long>& candidates,
                                                      u64 seed, int max_rounds) {
  std::vector<long long> alive = candidates;
  SplitMix64 rng(mix_seed(seed, p));
  annihilation_rounds(curve, p, alive, +1, rng, max_rounds);
  if (alive.size() > 1) {
    // Annihilation stalls exactly when the group exponent divides several
    // candidate orders (near-square structure).  The quadratic twist has
    // order p + 1 + a_p with its own structure, so a second pass there kills
    // the tie unless both groups are simultaneously degenerate.
    u64 delta = 2;
    while (legendre(delta, p) != -1) ++delta;
    u64 d2 = mul_mod(delta, delta, p), d3 = mul_mod(d2, delta, p);
    CMCurve twist = curve;
    twist.a = static_cast<long long>(mul_mod(reduce_mod(curve.a, p), d2, p));
    twist.b = static_cast<long long>(mul_mod(reduce_mod(curve.b, p), d3, p));
    annihilation_rounds(twist, p, alive, -1, rng, max_rounds);
  }
  if (alive.size() == 1) return alive[0];
  return std::nullopt;
}

FrobeniusRecord resolve_trace(const CMCurve& curve, u64 p, const ResolveOptions& options) {
  if (is_bad_prime(curve, p)) throw std::invalid_argument("resolve_trace: p is a bad prime");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("resolve_trace: odd prime required");
  Splitting st = splitting_type(curve.field, p);
  if (st == Splitting::Inert) return {p, st, 0, std::numbers::pi / 2, false, 0, 0};
  if (st == Splitting::Ramified) {
    long long ap = point_count_oracle(curve, p);  // rare: good primes dividing D_K only
    return {p, st, ap, theta_from_trace(ap, p), false, 0, 0};
  }
  auto rep = cornacchia_4p(curve.field, p);
  if (!rep) throw std::logic_error("resolve_trace: split prime without a 4p representation");
  auto candidates = trace_candidates(curve.field, p, *rep);
  long long ap;
  if (p <= options.fallback_threshold) {
    ap = point_count_oracle(curve, p);
  } else if (auto t = disambiguate_by_annihilation(curve, p, candidates, options.seed,
                                                   options.max_rounds)) {
    ap = *t;
  } else if (p <= kOracleCeiling) {
    ap = point_count_oracle(curve, p);  // annihilation stalled on a small group exponent
  } else {
    throw std::runtime_error("resolve_trace: trace ambiguous after " +
                             std::to_string(options.max_rounds) + " rounds at p=" +
                             std::to_string(p));
  }
  if (!std::binary_search(candidates.begin(), candidates.end(), ap))
    throw std::logic_error("resolve_trace: resolved trace escapes the unit-orbit candidates");
  if (i128(ap) * ap > i128(4) * p) throw std::logic_error("resolve_trace: Hasse bound violated");
  return {p, st, ap, theta_from_trace(ap, p), true, rep->first, rep->second};
}

std::vector<FrobeniusRecord> resolve_range(const CMCurve& curve, u64 lo, u64 hi,
                                           const ResolveOptions& options, int threads) {
  constexpr u64 kUnit = 1ull << 16;
  if (hi <= lo) throw std::invalid_argument("resolve_range: hi > lo required");
  u64 n_units = (hi - lo + kUnit - 1) / kUnit;
  std::vector<std::vector<FrobeniusRecord>> per_unit(n_units);
  run_units(n_units, threads, [&](u64 i) {
    u64 ulo = lo + i * kUnit;
    u64 uhi = std::min(hi, ulo + kUnit);
    if (ulo < 2) ulo = 2;
    if (uhi <= ulo) return;
    for (u64 p : sieve_range(ulo, uhi).primes) {
      if (!is_bad_prime(curve, p)) per_unit[i].push_back(resolve_trace(curve, p, options));
    }
  });
  std::vector<FrobeniusRecord> out;
  for (auto& chunk : per_unit) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

double cos_m_theta(const FrobeniusRecord& record, int m) {
  if (record.splitting != Splitting::Split)
    throw std::invalid_argument("cos_m_theta: split records only");
  if (m < 0) throw std::invalid_argument("cos_m_theta: m >= 0 required");
  if (m == 0) return 1.0;
  // Chebyshev c_k = 2 c c_{k-1} - c_{k-2}; long double keeps the drift of the
  // recurrence (~m^2 eps) below 1e-9 out to m = 10^4
  long double c = std::cos(static_cast<long double>(record.theta_p));
  long double prev = 1.0, cur = c;
  for (int k = 2; k <= m; ++k) {
    long double nxt = 2.0l * c * cur - prev;
    prev = cur;
    cur = nxt;
  }
  return static_cast<double>(cur);
}

}  // namespace frobangle
