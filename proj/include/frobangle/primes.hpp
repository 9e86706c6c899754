#pragma once
// Segmented sieve over half-open ranges (lo, hi], plus a Brun-Titchmarsh
// style sanity check for prime counts in short intervals.
#include <cstdint>
#include <functional>
#include <vector>

namespace frobangle {

struct PrimeSegment {
  std::uint64_t lo = 0, hi = 0;  // primes p with lo < p <= hi
  std::vector<std::uint64_t> primes;
};

struct SieveLimits {
  std::uint64_t max_hi = 1ull << 46;
  std::uint64_t segment_size = 1ull << 22;  // numbers per internal chunk
};

// simple sieve of all primes <= limit (including 2)
std::vector<std::uint32_t> small_primes_upto(std::uint32_t limit);

// requires 2 <= lo < hi <= limits.max_hi
PrimeSegment sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveLimits& limits = {});

// streaming variants (same range convention, no materialized vector)
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    const SieveLimits& limits = {});
std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi, const SieveLimits& limits = {});

struct BrunTitchmarshResult {
  std::uint64_t count;  // primes in (X, X+Y]
  double bound;         // 2Y / log Y
  bool holds;
};

// requires X >= 2, Y >= 2
BrunTitchmarshResult brun_titchmarsh_check(std::uint64_t X, std::uint64_t Y,
                                           const SieveLimits& limits = {});

// sum of log p over the segment (0 for an empty segment)
double log_weighted_count(const PrimeSegment& seg);

}  // namespace frobangle
