#pragma once
// Majorant/minorant cosine polynomials for interval indicators on [0, pi]:
//   S(theta) = sum_{m=0}^{M} b_m cos(m theta),  S- <= 1_[alpha,beta] <= S+,
// built by folding the circle (Selberg-Vaaler) extremal functions.
#include <vector>

#include "frobangle/interval.hpp"

namespace frobangle {

enum class PolySign { Majorant, Minorant };

struct SelbergPolynomial {
  PolySign sign;
  int M;  // degree
  AngleInterval interval;
  std::vector<double> coeffs;  // b_0 .. b_M
};

// pre: 1 <= M <= 10^6
SelbergPolynomial build_selberg(const AngleInterval& interval, int M, PolySign sign);

// Clenshaw evaluation; pre: 0 <= theta <= pi
double evaluate(const SelbergPolynomial& poly, double theta);

struct ExtremalReport {
  double max_violation;  // worst signed violation over the grid (<= 0 is clean)
  bool holds;
};

// Checks the one-sided bound against the indicator on a uniform grid,
// skipping a 1e-9 neighborhood of each endpoint. pre: grid_points >= 100
ExtremalReport verify_extremal(const SelbergPolynomial& poly, int grid_points);

// |b_m| <= C (min(|I|, 1/m) + 1/M) for 1 <= m <= M; C frozen by calibration
inline constexpr double kSelbergDecayC = 4.0;
double max_decay_ratio(const SelbergPolynomial& poly);

}  // namespace frobangle
