#include "frobangle/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frobangle {

// Circle construction on [0,1]: F(x) = (B-A) + V(x-B) - V(x-A)
//   +- Fejer mass /(2K), with V the Vaaler approximation to the sawtooth and
// K = M+1.  Folding S(theta) = F(theta/2pi) + F(-theta/2pi) collapses to a
// pure cosine series; sines cancel, so only the coefficients below survive:
//   b_0   = |I|/pi +- 2/K
//   b_m   = (2 Jw(m/K)/(pi m)) (sin(m beta) - sin(m alpha))
//           +- (2/K)(1 - m/K)   (cos(m alpha) + cos(m beta)),   Jw(t) = pi t (1-t) cot(pi t) + t
// J = [alpha/2pi, beta/2pi] sits inside [0, 1/2], so nothing wraps.
SelbergPolynomial build_selberg(const AngleInterval& interval, int M, PolySign sign) {
  if (M < 1 || M > 1000000)
    throw std::invalid_argument("build_selberg: 1 <= M <= 10^6 required");
  const double a = interval.alpha, b = interval.beta;
  const double K = M + 1;
  const double s = sign == PolySign::Majorant ? 1.0 : -1.0;
  std::vector<double> coeffs(M + 1);
  coeffs[0] = (b - a) / std::numbers::pi + s * 2.0 / K;
  for (int m = 1; m <= M; ++m) {
    double t = m / K;
    double jw = std::numbers::pi * t * (1 - t) / std::tan(std::numbers::pi * t) + t;
    double main = 2.0 * jw / (std::numbers::pi * m) * (std::sin(m * b) - std::sin(m * a));
    double fej = 2.0 / K * (1 - t) * (std::cos(m * a) + std::cos(m * b));
    coeffs[m] = main + s * fej;
  }
  return {sign, M, interval, std::move(coeffs)};
}

double evaluate(const SelbergPolynomial& poly, double theta) {
  if (!(theta >= 0.0) || !(theta <= std::numbers::pi))
    throw std::invalid_argument("evaluate: theta in [0, pi] required");
  // Clenshaw for sum b_m cos(m theta)
  const double c = 2.0 * std::cos(theta);
  double u1 = 0.0, u2 = 0.0;
  for (int m = poly.M; m >= 1; --m) {
    double u0 = poly.coeffs[m] + c * u1 - u2;
    u2 = u1;
    u1 = u0;
  }
  return poly.coeffs[0] + 0.5 * c * u1 - u2;
}

ExtremalReport verify_extremal(const SelbergPolynomial& poly, int grid_points) {
  if (grid_points < 100)
    throw std::invalid_argument("verify_extremal: grid_points >= 100 required");
  const double a = poly.interval.alpha, b = poly.interval.beta;
  const double eps = 1e-9;  // construction pins the endpoint values; skip them
  double worst = -HUGE_VAL;
  for (int i = 0; i < grid_points; ++i) {
    double theta = std::min(std::numbers::pi * i / (grid_points - 1), std::numbers::pi);
    if (std::abs(theta - a) < eps || std::abs(theta - b) < eps) continue;
    double ind = (theta >= a && theta <= b) ? 1.0 : 0.0;
    double val = evaluate(poly, theta);
    double violation = poly.sign == PolySign::Majorant ? ind - val : val - ind;
    worst = std::max(worst, violation);
  }
  return {worst, worst <= eps};
}

double max_decay_ratio(const SelbergPolynomial& poly) {
  double len = poly.interval.length();
  double worst = 0.0;
  for (int m = 1; m <= poly.M; ++m) {
    double cap = std::min(len, 1.0 / m) + 1.0 / poly.M;
    worst = std::max(worst, std::abs(poly.coeffs[m]) / cap);
  }
  return worst;
}

}  // namespace frobangle
