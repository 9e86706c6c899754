#pragma once
// Frobenius traces and angles for CM curves y^2 = x^3 + ax + b:
// brute-force point count, Cornacchia representation 4p = u^2 + D v^2,
// unit-orbit trace candidates, and disambiguation by annihilation tests
// in the group E(F_p).
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "frobangle/fields.hpp"
#include "frobangle/rng.hpp"

namespace frobangle {

struct CMCurve {
  long long a, b;
  ImagQuadField field;
  std::vector<std::uint64_t> bad_primes;  // primes dividing 2(4a^3 + 27b^2), ascending
};

// one curve per field, validated at construction (a_p = 0 <=> p inert, good p < 1000)
CMCurve catalog_curve(int d);
// custom model; rejects |a|,|b| > 2^40, non-CM models, unfactorable discriminants
CMCurve make_curve(long long a, long long b, int d);

bool is_bad_prime(const CMCurve& curve, std::uint64_t p);

struct FrobeniusRecord {
  std::uint64_t p;
  Splitting splitting;
  long long a_p;
  double theta_p;  // in [0, pi]; arccos clamped at the Hasse boundary
  bool has_generator = false;
  std::uint64_t u = 0, v = 0;  // u^2 + D_K v^2 = 4p when present
};

inline constexpr std::uint64_t kOracleCeiling = 1000000;

// a_p = p + 1 - #E(F_p) by summing Legendre symbols; pre: p odd, good, <= ceiling
long long point_count_oracle(const CMCurve& curve, std::uint64_t p);

// canonical solution of u^2 + D_K v^2 = 4p (minimal u, then minimal v);
// none iff p is inert. pre: p odd, p not dividing D_K
std::optional<std::pair<std::uint64_t, std::uint64_t>> cornacchia_4p(const ImagQuadField& field,
                                                                     std::uint64_t p);

// all traces of unit multiples of the generator, sorted ascending
std::vector<long long> trace_candidates(const ImagQuadField& field, std::uint64_t p,
                                        std::pair<std::uint64_t, std::uint64_t> rep);

struct ECPoint {
  std::uint64_t x = 0, y = 0;
  bool infinity = true;
};

// group law helpers; points are validated against the curve equation
ECPoint ec_add(const CMCurve& curve, std::uint64_t p, const ECPoint& P, const ECPoint& Q);
ECPoint ec_scalar_mul(const CMCurve& curve, std::uint64_t p, const ECPoint& P, std::uint64_t k);
ECPoint random_point(const CMCurve& curve, std::uint64_t p, SplitMix64& rng);

// Filters candidates t by (p + 1 - t) P = O over seeded pseudo-random points;
// returns the survivor, or nothing if several candidates still annihilate
// every sampled point after max_rounds (small-p group structure can make the
// ambiguity permanent, e.g. full 2-torsion with exponent | both orders).
std::optional<long long> disambiguate_by_annihilation(const CMCurve& curve, std::uint64_t p,
                                                      const std::vector<long long>& candidates,
                                                      std::uint64_t seed, int max_rounds);

struct ResolveOptions {
  std::uint64_t fallback_threshold = 10000;  // oracle below this
  int max_rounds = 64;
  std::uint64_t seed = 0;
};

// pre: p not in bad_primes; ramified good p gets an oracle-backed record
FrobeniusRecord resolve_trace(const CMCurve& curve, std::uint64_t p,
                              const ResolveOptions& options = {});

// records for every good prime in (lo, hi], ascending, deterministic for a
// given seed regardless of thread count (0 threads = hardware default)
std::vector<FrobeniusRecord> resolve_range(const CMCurve& curve, std::uint64_t lo,
                                           std::uint64_t hi, const ResolveOptions& options = {},
                                           int threads = 0);

// cos(m theta_p) by the Chebyshev recurrence, carried in long double so the
// m <= 10^4 drift stays below 1e-9 even with sin(theta_p) ~ 1e-4.
// pre: record.splitting == Split, m >= 0
double cos_m_theta(const FrobeniusRecord& record, int m);

}  // namespace frobangle
