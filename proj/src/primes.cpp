#include "frobangle/primes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "frobangle/arith.hpp"
#include "frobangle/fixed_sum.hpp"

namespace frobangle {

std::vector<std::uint32_t> small_primes_upto(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
      composite[j] = true;
  }
  return out;
}

namespace {

void check_range(u64 lo, u64 hi, const SieveLimits& limits) {
  if (lo < 2) throw std::invalid_argument("sieve_range: lo >= 2 required");
  if (hi <= lo) throw std::invalid_argument("sieve_range: hi > lo required");
  if (hi > limits.max_hi)
    throw std::invalid_argument("sieve_range: hi exceeds the configured maximum " +
                                std::to_string(limits.max_hi));
}

// odd-only sieve of one chunk (clo, chi]; visits primes ascending
template <class Fn>
void sieve_chunk(u64 clo, u64 chi, const std::vector<std::uint32_t>& base, Fn&& visit) {
  u64 first = clo + 1;          // smallest candidate in the chunk
  if ((first & 1) == 0) ++first;
  if (first < 3) first = 3;
  if (first > chi) return;
  u64 nbits = (chi - first) / 2 + 1;  // odd numbers first, first+2, ..., <= chi
  std::vector<std::uint64_t> marked((nbits + 63) / 64, 0);
  for (std::uint32_t q : base) {
    if (q == 2) continue;
    u64 q2 = static_cast<u64>(q) * q;
    if (q2 > chi) break;
    u64 s = (clo / q + 1) * q;  // first multiple of q > clo
    if (s < q2) s = q2;
    if ((s & 1) == 0) s += q;
    for (; s <= chi; s += 2 * static_cast<u64>(q)) {
      u64 idx = (s - first) / 2;
      marked[idx >> 6] |= 1ull << (idx & 63);
    }
  }
  for (u64 idx = 0; idx < nbits; ++idx) {
    if (!(marked[idx >> 6] >> (idx & 63) & 1)) visit(first + 2 * idx);
  }
}

template <class Fn>
void run_sieve(u64 lo, u64 hi, const SieveLimits& limits, Fn&& visit) {
  check_range(lo, hi, limits);
  u64 step = limits.segment_size < 64 ? 64 : limits.segment_size;
  auto base = small_primes_upto(static_cast<std::uint32_t>(isqrt_u64(hi)));
  for (u64 clo = lo; clo < hi; ) {
    u64 chi = (hi - clo > step) ? clo + step : hi;
    sieve_chunk(clo, chi, base, visit);
    clo = chi;
  }
}

}  // namespace

PrimeSegment sieve_range(u64 lo, u64 hi, const SieveLimits& limits) {
  PrimeSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  run_sieve(lo, hi, limits, [&](u64 p) { seg.primes.push_back(p); });
  return seg;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn,
                    const SieveLimits& limits) {
  run_sieve(lo, hi, limits, [&](u64 p) { fn(p); });
}

u64 count_primes(u64 lo, u64 hi, const SieveLimits& limits) {
  u64 n = 0;
  run_sieve(lo, hi, limits, [&](u64) { ++n; });
  return n;
}

BrunTitchmarshResult brun_titchmarsh_check(u64 X, u64 Y, const SieveLimits& limits) {
  if (X < 1 || Y < 2) throw std::invalid_argument("brun_titchmarsh_check: X >= 1, Y >= 2 required");
  u64 lo = X < 2 ? 2 : X;
  u64 count = count_primes(lo, X + Y, limits);
  if (X < 2 && X + Y >= 2) ++count;  // the prime 2 sits below the sieve floor
  double bound = 2.0 * static_cast<double>(Y) / std::log(static_cast<double>(Y));
  return {count, bound, static_cast<double>(count) <= bound};
}

double log_weighted_count(const PrimeSegment& seg) {
  FixedSum sum;
  for (u64 p : seg.primes) sum.add(std::log(static_cast<double>(p)));
  return sum.value();
}

}  // namespace frobangle
