#include "netgeo/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "netgeo/errors.hpp"

namespace netgeo {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) return result;
  if (a > b) {
    result = integrate(f, b, a, options);
    result.value = -result.value;
    return result;
  }

  // Infinite limits are mapped onto a finite interval in t:
  //   [a, inf)   x = a + t / (1 - t),  t in [0, 1)
  //   (-inf, b]  x = b - t / (1 - t)
  //   (-inf, inf) x = t / (1 - t^2),   t in (-1, 1)
  std::function<double(double)> g;
  double lo = a;
  double hi = b;
  std::int64_t evaluations = 0;
  const bool left_inf = std::isinf(a);
  const bool right_inf = std::isinf(b);
  if (!left_inf && !right_inf) {
    g = [&](double x) { return f(x); };
  } else if (!left_inf) {
    g = [&, a](double t) {
      const double s = 1.0 - t;
      return s == 0.0 ? 0.0 : f(a + t / s) / (s * s);
    };
    lo = 0.0;
    hi = 1.0;
  } else if (!right_inf) {
    g = [&, b](double t) {
      const double s = 1.0 - t;
      return s == 0.0 ? 0.0 : f(b - t / s) / (s * s);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    g = [&](double t) {
      const double s = 1.0 - t * t;
      return s == 0.0 ? 0.0 : f(t / s) * (1.0 + t * t) / (s * s);
    };
    lo = -1.0;
    hi = 1.0;
  }

  auto evaluate = [&](double pa, double pb) {
    Panel p{pa, pb};
    p.value = Rule::integrate(
        [&](double x) {
          ++evaluations;
          return g(x);
        },
        pa, pb, 0, 0.0, &p.error, &p.l1);
    return p;
  };

  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const Panel first = evaluate(lo, hi);
  panels.push(first);
  value = first.value;
  error = first.error;
  l1 = first.l1;
  auto converged = [&] { return error <= std::max(options.abs_tol, options.rel_tol * l1); };

  int count = 1;
  while (!converged() && count < options.max_panels) {
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split any further
    panels.pop();
    const Panel left = evaluate(worst.a, mid);
    const Panel right = evaluate(mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Running sums drift; recompute from the final panels.
  value = error = l1 = 0.0;
  for (; !panels.empty(); panels.pop()) {
    value += panels.top().value;
    error += panels.top().error;
    l1 += panels.top().l1;
  }

  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw NumericalError("quadrature produced a non-finite value");
  }
  if (!converged()) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: value " << value << ", error estimate "
        << error;
    throw NumericalError(msg.str());
  }
  result.value = value;
  result.abs_error_bound = error;
  result.evaluations = evaluations;
  return result;
}

}  // namespace netgeo
