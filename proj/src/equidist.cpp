#include "frobangle/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "frobangle/arith.hpp"
#include "frobangle/report_io.hpp"
#include "frobangle/selberg.hpp"
#include "worker_pool.hpp"

namespace frobangle {

namespace {

constexpr u64 kUnit = 1ull << 16;

u64 hypothesis_floor(const CMCurve& curve) {
  u64 mx = static_cast<u64>(curve.field.abs_discriminant);
  if (!curve.bad_primes.empty()) mx = std::max(mx, curve.bad_primes.back());
  return 100 * mx;
}

// empty when the short-window shape holds, else the violated inequality
std::string check_window_shape(const CMCurve& curve, u64 x, u64 h) {
  if (x <= hypothesis_floor(curve))
    return "x > 100*max(bad primes, D_K) violated: x = " + std::to_string(x) + " <= " +
           std::to_string(hypothesis_floor(curve));
  double sx = std::sqrt(static_cast<double>(x)) * std::log(static_cast<double>(x));
  if (static_cast<double>(h) < sx)
    return "sqrt(x) log x <= h violated: h = " + std::to_string(h) + " < " + std::to_string(sx);
  if (h > x) return "h <= x violated: h = " + std::to_string(h);
  return "";
}

}  // namespace

double mu_measure(const AngleInterval& I) {
  return I.length() / (2.0 * std::numbers::pi) + (I.contains_half_pi() ? 0.5 : 0.0);
}

std::string check_window_config(const WindowConfig& c) {
  if (c.x < 3) return "x >= 3 violated: x = " + std::to_string(c.x);
  if (!(c.delta > 0)) return "delta > 0 violated: delta = " + std::to_string(c.delta);
  if (!(c.theta_exp > 0))
    return "theta_exp > 0 violated: theta_exp = " + std::to_string(c.theta_exp);
  if (!(c.delta + c.theta_exp < 5.0 / 24.0))
    return "delta + theta_exp < 5/24 violated: " + std::to_string(c.delta) + " + " +
           std::to_string(c.theta_exp) + " = " + std::to_string(c.delta + c.theta_exp);
  if (c.h > c.x) return "h <= x violated: h = " + std::to_string(c.h);
  double hmin = std::pow(static_cast<double>(c.x), 1.0 - c.delta);
  if (static_cast<double>(c.h) + 1.0 < hmin)
    return "x^(1-delta) <= h violated: need h >= " + std::to_string(hmin) + ", got " +
           std::to_string(c.h);
  double mmax = std::sqrt(static_cast<double>(c.x)) / std::log(static_cast<double>(c.x));
  if (c.M < 1 || static_cast<double>(c.M) > mmax)
    return "1 <= M <= sqrt(x)/log x violated: M = " + std::to_string(c.M) + ", cap = " +
           std::to_string(mmax);
  return "";
}

std::string check_interval_width(const WindowConfig& c, const AngleInterval& I) {
  double wmin = std::pow(static_cast<double>(c.x), -c.theta_exp);
  if (I.length() < wmin)
    return "|I| >= x^(-theta_exp) violated: |I| = " + std::to_string(I.length()) +
           " < " + std::to_string(wmin);
  return "";
}

WindowData compute_window(const CMCurve& curve, u64 x, u64 h, const WindowOptions& options) {
  if (h == 0) throw std::invalid_argument("compute_window: h >= 1 required");
  if (x < 2) throw std::invalid_argument("compute_window: x >= 2 required");
  ResolveOptions ropts;
  ropts.fallback_threshold = options.fallback_threshold;
  ropts.seed = options.seed;
  const u64 lo = x, hi = x + h;
  const u64 n_units = (hi - lo + kUnit - 1) / kUnit;
  struct Unit {
    std::vector<FrobeniusRecord> records;
    FixedSum logs;
    u64 excluded = 0;
  };
  std::vector<Unit> units(n_units);
  run_units(n_units, options.threads, [&](u64 i) {
    u64 ulo = lo + i * kUnit;
    u64 uhi = std::min(hi, lo + (i + 1) * kUnit);
    if (uhi <= ulo) return;
    Unit& unit = units[i];
    for (u64 p : sieve_range(ulo, uhi).primes) {
      unit.logs.add(std::log(static_cast<double>(p)));
      if (is_bad_prime(curve, p) || splitting_type(curve.field, p) == Splitting::Ramified) {
        ++unit.excluded;
        continue;
      }
      unit.records.push_back(resolve_trace(curve, p, ropts));
    }
  });
  WindowData data;
  data.x = x;
  data.h = h;
  FixedSum logs;
  for (auto& unit : units) {
    data.records.insert(data.records.end(), unit.records.begin(), unit.records.end());
    logs.merge(unit.logs);
    data.n_excluded += unit.excluded;
  }
  data.all_log_sum = logs.value();
  return data;
}

WindowSums interval_sums(const WindowData& data, const AngleInterval& I) {
  WindowSums sums;
  for (const auto& r : data.records) {
    double lg = std::log(static_cast<double>(r.p));
    bool in = I.contains(r.theta_p);
    if (in) sums.raw.add(lg);
    if (r.splitting == Splitting::Split && in) sums.split_part.add(lg);
    if (r.splitting == Splitting::Inert) sums.inert_logs.add(lg);
  }
  return sums;
}

VerificationReport weighted_angle_sum(const WindowData& data, const AngleInterval& I) {
  WindowSums sums = interval_sums(data, I);
  VerificationReport report;
  report.x = data.x;
  report.h = data.h;
  report.alpha = I.alpha;
  report.beta = I.beta;
  report.raw_sum = sums.raw.value();
  report.mu = mu_measure(I);
  report.expected = report.mu * static_cast<double>(data.h);
  report.rel_error = report.expected > 0 ? report.raw_sum / report.expected - 1.0 : 0.0;
  for (const auto& r : data.records) {
    if (r.splitting == Splitting::Split) ++report.n_split;
    else if (r.splitting == Splitting::Inert) ++report.n_inert;
  }
  report.pnt_deviation = data.all_log_sum / static_cast<double>(data.h) - 1.0;
  return report;
}

VerificationReport weighted_angle_sum(const CMCurve& curve, u64 x, u64 h, const AngleInterval& I,
                                      const WindowOptions& options) {
  std::string violation = check_window_shape(curve, x, h);
  if (!violation.empty() && !options.unsafe_params) throw ConstraintError(violation);
  VerificationReport report = weighted_angle_sum(compute_window(curve, x, h, options), I);
  report.params_ok = violation.empty();
  return report;
}

double character_sum(const ImagQuadField& field, u64 x, u64 h, int threads) {
  if (h == 0) throw std::invalid_argument("character_sum: h >= 1 required");
  if (x < 2) throw std::invalid_argument("character_sum: x >= 2 required");
  const u64 lo = x, hi = x + h;
  const u64 n_units = (hi - lo + kUnit - 1) / kUnit;
  std::vector<FixedSum> partial(n_units);
  run_units(n_units, threads, [&](u64 i) {
    u64 ulo = lo + i * kUnit;
    u64 uhi = std::min(hi, lo + (i + 1) * kUnit);
    if (uhi <= ulo) return;
    for (u64 p : sieve_range(ulo, uhi).primes) {
      int chi = kronecker_chi(field, p);
      if (chi != 0) partial[i].add(chi * std::log(static_cast<double>(p)));
    }
  });
  FixedSum total;
  for (const auto& s : partial) total.merge(s);
  return total.value();
}

double grossen_sum(const WindowData& data, int m) {
  if (m < 0) throw std::invalid_argument("grossen_sum: m >= 0 required");
  FixedSum sum;
  for (const auto& r : data.records) {
    if (r.splitting != Splitting::Split) continue;
    sum.add(cos_m_theta(r, m) * std::log(static_cast<double>(r.p)));
  }
  return sum.value();
}

double grossen_sum(const CMCurve& curve, u64 x, u64 h, int m, const WindowOptions& options) {
  return grossen_sum(compute_window(curve, x, h, options), m);
}

namespace {

// g[m] = sum over split p of cos(m theta_p) log p, m = 0..M; same recurrence
// and rounding as cos_m_theta, so entries match grossen_sum bit for bit
std::vector<FixedSum> split_power_sums(const WindowData& data, int M) {
  std::vector<FixedSum> g(M + 1);
  for (const auto& r : data.records) {
    if (r.splitting != Splitting::Split) continue;
    double lg = std::log(static_cast<double>(r.p));
    long double c = std::cos(static_cast<long double>(r.theta_p));
    long double prev = 1.0l, cur = c;
    g[0].add(lg);
    if (M >= 1) g[1].add(static_cast<double>(cur) * lg);
    for (int k = 2; k <= M; ++k) {
      long double nxt = 2.0l * c * cur - prev;
      prev = cur;
      cur = nxt;
      g[k].add(static_cast<double>(cur) * lg);
    }
  }
  return g;
}

void check_sandwich_degree(u64 x, int M) {
  double mmax = std::sqrt(static_cast<double>(x)) / std::log(static_cast<double>(x));
  if (M < 1 || static_cast<double>(M) > mmax)
    throw ConstraintError("1 <= M <= sqrt(x)/log x violated: M = " + std::to_string(M) +
                          ", cap = " + std::to_string(mmax));
}

}  // namespace

SandwichBracket sandwich_bracket(const WindowData& data, const AngleInterval& I, int M) {
  check_sandwich_degree(data.x, M);
  auto lower_poly = build_selberg(I, M, PolySign::Minorant);
  auto upper_poly = build_selberg(I, M, PolySign::Majorant);
  auto g = split_power_sums(data, M);
  double lower = 0.0, upper = 0.0;
  for (int m = 0; m <= M; ++m) {
    double gm = g[m].value();
    lower += lower_poly.coeffs[m] * gm;
    upper += upper_poly.coeffs[m] * gm;
  }
  double direct = interval_sums(data, I).split_part.value();
  double slack = 1e-6 * static_cast<double>(data.h);
  if (lower > direct + slack || direct > upper + slack)
    throw std::logic_error("sandwich_bracket: containment failed");
  return {lower, direct, upper};
}

SandwichBracket sandwich_bracket(const CMCurve& curve, u64 x, u64 h, const AngleInterval& I,
                                 int M, const WindowOptions& options) {
  check_sandwich_degree(x, M);
  return sandwich_bracket(compute_window(curve, x, h, options), I, M);
}

double error_model(u64 x, double c) {
  if (x < 16) throw ConstraintError("error_model: x >= 16 required");
  if (!(c > 0)) throw ConstraintError("error_model: c > 0 required");
  double lx = std::log(static_cast<double>(x));
  return std::exp(-c * std::cbrt(lx) / std::cbrt(std::log(lx)));
}

VerificationReport verify(const CMCurve& curve, const WindowConfig& config,
                          const AngleInterval& I, const WindowOptions& options) {
  std::string violation = check_window_config(config);
  if (violation.empty()) violation = check_interval_width(config, I);
  if (violation.empty()) violation = check_window_shape(curve, config.x, config.h);
  if (!violation.empty() && !options.unsafe_params) throw ConstraintError(violation);
  WindowData data = compute_window(curve, config.x, config.h, options);
  VerificationReport report = weighted_angle_sum(data, I);
  report.char_sum = character_sum(curve.field, config.x, config.h, options.threads);
  for (int m = 1; m <= 3; ++m) report.grossen_sums[m - 1] = grossen_sum(data, m);
  report.error_envelope = config.x >= 16 ? error_model(config.x, options.envelope_c) : 0.0;
  report.params_ok = violation.empty();
  return report;
}

std::string sweep_csv(const CMCurve& curve, const std::vector<SweepEntry>& entries,
                      const WindowOptions& options) {
  std::ostringstream out;
  out << kReportCsvHeader << ",error\n";
  for (const auto& entry : entries) {
    try {
      VerificationReport report = verify(curve, entry.config, entry.interval, options);
      out << report_csv_row(report) << ",\n";
    } catch (const ConstraintError& err) {
      std::string msg = err.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << entry.config.x << ',' << entry.config.h << ',' << format_g17(entry.interval.alpha)
          << ',' << format_g17(entry.interval.beta) << ",,,,,,,," << msg << "\n";
    }
  }
  return out.str();
}

}  // namespace frobangle
