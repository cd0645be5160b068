#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace netgeo {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
  std::int64_t evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    abs_error_bound += other.abs_error_bound;
    evaluations += other.evaluations;
    return *this;
  }
};

struct QuadratureOptions {
  double rel_tol = 1e-12;
  // Accepted absolute error when the integral is close to zero.
  double abs_tol = 1e-15;
  // Cap on the number of panels of the adaptive subdivision.
  int max_panels = 4000;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Globally adaptive 15-point Gauss-Kronrod on [a, b]: the panel with the
// largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * L1). Either limit may be infinite. Throws
// NumericalError when the panel budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace netgeo
