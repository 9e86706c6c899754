#pragma once
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frobangle {

// closed subinterval [alpha, beta] of [0, pi]
struct AngleInterval {
  double alpha, beta;

  AngleInterval(double a, double b) : alpha(a), beta(b) {
    if (!(a >= 0.0) || !(a < b) || !(b <= std::numbers::pi))
      throw std::invalid_argument("AngleInterval: need 0 <= alpha < beta <= pi");
  }

  double length() const { return beta - alpha; }

  bool contains(double theta) const {
    return theta >= alpha - 1e-12 && theta <= beta + 1e-12;
  }

  bool contains_half_pi() const { return contains(std::numbers::pi / 2); }
};

}  // namespace frobangle
