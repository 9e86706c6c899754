#pragma once
// Verification engine: the CM angle measure mu, log-weighted angle sums over
// short prime windows (x, x+h], quadratic character and Groessencharacter
// power sums, the majorant/minorant sandwich bound, sweeps, and the error
// envelope exp(-c (log x)^{1/3} / (log log x)^{1/3}).
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobangle/fixed_sum.hpp"
#include "frobangle/interval.hpp"
#include "frobangle/primes.hpp"
#include "frobangle/traces.hpp"

namespace frobangle {

// a stated precondition fails (window shape, exponent budget, interval width)
class ConstraintError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mass |I|/(2pi) plus an atom of 1/2 at pi/2
double mu_measure(const AngleInterval& I);

struct WindowConfig {
  std::uint64_t x;
  std::uint64_t h;
  double delta;      // window exponent: x^{1-delta} <= h <= x
  double theta_exp;  // interval exponent: |I| >= x^{-theta_exp}
  int M;             // sandwich degree, 1 <= M <= sqrt(x)/log x
};

// empty string when valid, else the violated inequality
std::string check_window_config(const WindowConfig& config);
std::string check_interval_width(const WindowConfig& config, const AngleInterval& I);

struct VerificationReport {
  std::uint64_t x = 0, h = 0;
  double alpha = 0, beta = 0;
  double raw_sum = 0;  // sum of log p over good p in (x, x+h] with theta_p in I
  double mu = 0;
  double expected = 0;  // mu * h
  double rel_error = 0;
  std::uint64_t n_split = 0, n_inert = 0;
  double char_sum = 0;
  std::array<double, 3> grossen_sums{};  // m = 1, 2, 3
  double pnt_deviation = 0;              // (sum log p)/h - 1 over all primes
  double error_envelope = 0;             // error_model(x, c)
  bool params_ok = true;                 // false when run past the stated constraints
};

struct WindowOptions {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware default
  std::uint64_t fallback_threshold = 10000;
  double envelope_c = 1.0;
  bool unsafe_params = false;  // compute anyway on constraint violation, flag the report
};

// resolved records for the good primes of (x, x+h], plus the plain log sum
struct WindowData {
  std::uint64_t x = 0, h = 0;
  std::vector<FrobeniusRecord> records;  // ascending p; bad/ramified excluded
  std::uint64_t n_excluded = 0;
  double all_log_sum = 0;  // over every prime in (x, x+h]
};

WindowData compute_window(const CMCurve& curve, std::uint64_t x, std::uint64_t h,
                          const WindowOptions& options = {});

// exact fixed-point partials; raw == split_part (+ inert_logs if pi/2 in I)
struct WindowSums {
  FixedSum raw;
  FixedSum split_part;
  FixedSum inert_logs;
};
WindowSums interval_sums(const WindowData& data, const AngleInterval& I);

// pre (curve form): x > 100 * max(bad_primes + {D_K}), sqrt(x) log x <= h <= x
VerificationReport weighted_angle_sum(const WindowData& data, const AngleInterval& I);
VerificationReport weighted_angle_sum(const CMCurve& curve, std::uint64_t x, std::uint64_t h,
                                      const AngleInterval& I, const WindowOptions& options = {});

// sum of chi_K(p) log p over (x, x+h]; sieve-direct, no trace resolution
double character_sum(const ImagQuadField& field, std::uint64_t x, std::uint64_t h,
                     int threads = 0);

// sum of cos(m theta_p) log p over split p in (x, x+h]; m = 0 gives the
// split-prime log sum
double grossen_sum(const WindowData& data, int m);
double grossen_sum(const CMCurve& curve, std::uint64_t x, std::uint64_t h, int m,
                   const WindowOptions& options = {});

struct SandwichBracket {
  double lower, direct, upper;
};

// lower/upper = sum_m b_m^{-/+} grossen_sum(m); pre: 1 <= M <= sqrt(x)/log x
SandwichBracket sandwich_bracket(const WindowData& data, const AngleInterval& I, int M);
SandwichBracket sandwich_bracket(const CMCurve& curve, std::uint64_t x, std::uint64_t h,
                                 const AngleInterval& I, int M, const WindowOptions& options = {});

// pre: x >= 16, c > 0
double error_model(std::uint64_t x, double c);

// full report for one window; enforces every constraint unless options.unsafe_params
VerificationReport verify(const CMCurve& curve, const WindowConfig& config,
                          const AngleInterval& I, const WindowOptions& options = {});

struct SweepEntry {
  WindowConfig config;
  AngleInterval interval;
};

// one CSV row per entry (header included); invalid entries become error rows
std::string sweep_csv(const CMCurve& curve, const std::vector<SweepEntry>& entries,
                      const WindowOptions& options = {});

}  // namespace frobangle
