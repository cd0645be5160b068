#include "netgeo/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "netgeo/errors.hpp"

namespace netgeo::analytic {

namespace {

constexpr double kEulerGamma = std::numbers::egamma;

// log(1 + z^p) without overflowing z^p.
double log1p_power(double z, int p) {
  if (z > 1.0) return p * std::log(z) + std::log1p(std::pow(z, -p));
  return std::log1p(std::pow(z, p));
}

double k0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double i0 = 1.0;
  double harmonic = 0.0;
  double tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < 1e-18 * std::abs(tail) && term < 1e-18 * i0) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + tail;
}

// Steed's method for the second continued fraction (Temme), order 0.
double k0_continued_fraction(double x) {
  constexpr double kEps = 1e-17;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

// Integrals over y in (0, inf) are taken in u = sqrt(y), which removes the
// logarithmic behaviour of K0 at the origin.
QuadratureResult integrate_in_sqrt(const std::function<double(double)>& f_of_y, std::vector<double> y_breaks,
                                   const QuadratureOptions& options = {}) {
  std::vector<double> u_breaks{0.0};
  for (double y : y_breaks) {
    if (y > 0.0 && std::isfinite(y)) u_breaks.push_back(std::sqrt(y));
  }
  std::sort(u_breaks.begin(), u_breaks.end());
  u_breaks.erase(std::unique(u_breaks.begin(), u_breaks.end()), u_breaks.end());
  u_breaks.push_back(kInfinity);

  auto integrand = [&](double u) {
    const double y = u * u;
    if (y == 0.0 || !std::isfinite(y)) return 0.0;
    return f_of_y(y) * 2.0 * u;
  };
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < u_breaks.size(); ++i) total += integrate(integrand, u_breaks[i], u_breaks[i + 1], options);
  return total;
}

double v2_diag_integrand(double y) {
  return 2.0 * bessel_k0(2.0 * std::sqrt(y)) * log1p_power(y, 2) / y;
}

double v2_offdiag_integrand(double y) {
  return 2.0 * bessel_k0(2.0 * std::sqrt(y + 1.0)) * std::sqrt(1.0 + 2.0 / y) * log1p_power(y, 2) / y;
}

QuadratureResult normalize(QuadratureResult raw, bool normalized, double kappa2) {
  if (!normalized) return raw;
  const double factor = 0.5 * std::exp(kappa2);
  raw.value *= factor;
  raw.abs_error_bound *= factor;
  return raw;
}

double remark4_integrand(double theta3, double y) {
  const double z = theta3 * y;
  if (z == 0.0) return 0.0;
  return log1p_power(z, 3) / z * bessel_difference(y);
}

}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: argument must be positive");
  if (std::isinf(x)) return 0.0;
  return x <= 2.0 ? k0_series(x) : k0_continued_fraction(x);
}

QuadratureResult bessel_integral_form(double y) {
  if (!(y > 0.0)) throw std::domain_error("bessel_integral_form: y must be positive");
  // The integrand in s peaks at s = log(sqrt(y)) and decays doubly exponentially.
  const double centre = 0.5 * std::log(y);
  auto f = [y](double s) { return std::exp(-std::exp(s) - y * std::exp(-s)); };
  QuadratureResult r = integrate(f, -kInfinity, centre);
  r += integrate(f, centre, kInfinity);
  return r;
}

QuadratureResult v2_diag_quadrature(bool normalized, double kappa2) {
  return normalize(integrate_in_sqrt(v2_diag_integrand, {1.0, 10.0}), normalized, kappa2);
}

QuadratureResult v2_offdiag_quadrature(bool normalized, double kappa2) {
  return normalize(integrate_in_sqrt(v2_offdiag_integrand, {1.0, 10.0}), normalized, kappa2);
}

QuadratureResult empty_volume_n1() {
  auto f = [](double t) { return t == 0.0 ? 1.0 : std::exp(-t) * std::log1p(t) / t; };
  QuadratureResult r = integrate(f, 0.0, 1.0);
  r += integrate(f, 1.0, kInfinity);
  r.value *= std::sqrt(0.5);
  r.abs_error_bound *= std::sqrt(0.5);
  return r;
}

QuadratureResult empty_volume_n2() {
  QuadratureResult r = v2_diag_quadrature(false);
  r.value *= 0.5;
  r.abs_error_bound *= 0.5;
  return r;
}

double bessel_difference(double y) {
  return bessel_k0(2.0 * std::sqrt(y)) - std::sqrt(1.0 + 2.0 / y) * bessel_k0(2.0 * std::sqrt(y + 1.0));
}

double varphi(double y) {
  if (!(y > 0.0)) throw std::domain_error("varphi: argument must be positive");
  return log1p_power(y, 2) / y * bessel_difference(y);
}

VarphiRoot find_varphi_root() {
  double lo = 1e-12;
  double hi = 0.5;
  if (!(varphi(lo) < 0.0 && varphi(hi) > 0.0)) {
    throw NumericalError("find_varphi_root: no sign change bracketed in (1e-12, 0.5)");
  }
  VarphiRoot root;
  while (hi - lo > 1e-17 && root.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    const double value = varphi(mid);
    ++root.iterations;
    if (value == 0.0) {
      lo = hi = mid;
      break;
    }
    (value < 0.0 ? lo : hi) = mid;
    if (mid == lo && mid == hi) break;
  }
  root.y0 = 0.5 * (lo + hi);
  root.residual = varphi(root.y0);
  return root;
}

VarphiIntegral integrate_varphi() {
  VarphiIntegral out;
  out.root = find_varphi_root();
  const double u0 = std::sqrt(out.root.y0);
  auto integrand = [](double u) {
    const double y = u * u;
    if (y == 0.0 || !std::isfinite(y)) return 0.0;
    return varphi(y) * 2.0 * u;
  };
  out.negative_part = integrate(integrand, 0.0, u0);
  out.positive_part = integrate(integrand, u0, 1.0);
  out.positive_part += integrate(integrand, 1.0, kInfinity);
  out.total = out.negative_part;
  out.total += out.positive_part;
  return out;
}

VarphiBoundsReport check_varphi_bounds(int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("check_varphi_bounds: grid_points must be at least 2");
  const VarphiIntegral integral = integrate_varphi();
  const double y0 = integral.root.y0;
  const double k0_2 = bessel_k0(2.0);
  const double phi1 = varphi(1.0);

  VarphiBoundsReport report;
  report.y0 = y0;
  report.small_y_bound_holds = true;
  for (int i = 1; i <= grid_points; ++i) {
    const double y = y0 * i / grid_points;
    if (varphi(y) < -k0_2 / (1.0 + y * y)) report.small_y_bound_holds = false;
  }
  report.large_y_bound_holds = true;
  for (int i = 0; i <= grid_points; ++i) {
    const double y = 1.0 + 59.0 * i / grid_points;
    if (varphi(y) < phi1 * std::exp(1.0 - y)) report.large_y_bound_holds = false;
  }
  report.positive_integral = integral.positive_part.value;
  report.exponential_bound_integral = phi1;  // phi(1) * int_1^inf exp(1 - y) dy
  report.bessel_bound_integral = k0_2 * std::atan(y0);
  report.negative_integral_magnitude = -integral.negative_part.value;
  report.chain_holds = report.positive_integral > report.exponential_bound_integral &&
                       report.exponential_bound_integral > report.bessel_bound_integral &&
                       report.bessel_bound_integral > report.negative_integral_magnitude;
  return report;
}

QuadratureResult remark4_inner(double theta3) {
  if (!(theta3 > 0.0)) throw std::domain_error("remark4_inner: theta3 must be positive");
  static const double y0 = find_varphi_root().y0;
  QuadratureOptions options;
  options.rel_tol = 1e-10;
  options.abs_tol = 0.0;  // the value scales like theta3^2 as theta3 -> 0
  return integrate_in_sqrt([theta3](double y) { return remark4_integrand(theta3, y); },
                           {y0, 1.0 / theta3, 1.0, 10.0, 100.0, 1000.0}, options);
}

Remark4Report remark4_check(std::span<const double> theta3_grid) {
  Remark4Report report;
  report.grid.assign(theta3_grid.begin(), theta3_grid.end());
  std::sort(report.grid.begin(), report.grid.end());
  if (report.grid.empty() || !(report.grid.front() > 0.0)) {
    throw std::invalid_argument("remark4_check: grid must be non-empty and positive");
  }
  for (double t : report.grid) {
    const double inner = remark4_inner(t).value;
    report.inner_values.push_back(inner);
    if (inner < 0.0) report.negative_at.push_back(t);
  }

  // Beyond kCutoff the exp(-t) weight is below 1e-26 and the tail is bounded
  // analytically: |inner(t)| <= 1.13 * int |bessel_difference|, the weight
  // log(1 + z^3)/z peaking at about 1.1244 near z = 2.51.
  constexpr double kCutoff = 60.0;
  std::vector<double> breaks{0.0};
  for (double t : report.grid) {
    if (t < kCutoff) breaks.push_back(t);
  }
  breaks.push_back(kCutoff);
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  QuadratureOptions outer;
  // Kept well above the inner accuracy so inner-integral noise cannot drive
  // the outer subdivision.
  outer.rel_tol = 1e-7;
  outer.abs_tol = 1e-13;
  std::int64_t inner_evaluations = 0;
  auto integrand = [&](double t) {
    if (t == 0.0) return 0.0;
    const QuadratureResult inner = remark4_inner(t);
    inner_evaluations += inner.evaluations;
    return std::exp(-t) * inner.value;
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    report.double_integral += integrate(integrand, breaks[i], breaks[i + 1], outer);
  }
  const QuadratureResult abs_bound =
      integrate_in_sqrt([](double y) { return std::abs(bessel_difference(y)); }, {find_varphi_root().y0, 1.0},
                        QuadratureOptions{1e-6, 0.0});
  report.double_integral.abs_error_bound += std::exp(-kCutoff) * 1.13 * abs_bound.value;
  report.double_integral.evaluations += inner_evaluations;
  return report;
}

std::vector<double> default_remark4_grid() {
  return {1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1e3, 3e3, 1e4, 3e4, 1e5};
}

}  // namespace netgeo::analytic
