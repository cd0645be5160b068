#pragma once

#include <span>
#include <vector>

#include "netgeo/quadrature.hpp"

// Independent analytic/quadrature path for the two- and three-vertex cases.
namespace netgeo::analytic {

// Modified Bessel function of the second kind, order 0. Power series for
// x <= 2, Steed's continued fraction above. Throws std::domain_error for x <= 0.
double bessel_k0(double x);

// int_0^inf exp(-t - y/t) / t dt, integrated in s = log t. Equals 2 K0(2 sqrt(y)).
QuadratureResult bessel_integral_form(double y);

// Volume integrals of the two-vertex networks after the (theta1, y / theta1)
// change of variables and the inner theta1 integral 2 K0(2 sqrt(y)):
//
//   diag:    int_0^inf 2 K0(2 sqrt(y)) log(1 + y^2) / y dy
//   offdiag: int_0^inf 2 K0(2 sqrt(y + 1)) sqrt(1 + 2/y) log(1 + y^2) / y dy
//
// Raw mode returns those integrals as written. Normalized mode multiplies by
// exp(kappa2) / 2, the constants dropped by the reduction, so the results are
// directly comparable with estimate_volume(..., kappa2).
QuadratureResult v2_diag_quadrature(bool normalized, double kappa2 = 0.0);
QuadratureResult v2_offdiag_quadrature(bool normalized, double kappa2 = 0.0);

// kappa = 0 volume of the empty one-vertex network:
// 2^(-1/2) int_0^inf exp(-t) log(1 + t) / t dt.
QuadratureResult empty_volume_n1();
// kappa = 0 volume of the empty two-vertex network (raw diag integral / 2).
QuadratureResult empty_volume_n2();

// K0(2 sqrt(y)) - sqrt(1 + 2/y) K0(2 sqrt(y + 1)).
double bessel_difference(double y);

// log(1 + y^2) / y * bessel_difference(y). Throws std::domain_error for y <= 0.
double varphi(double y);

struct VarphiRoot {
  double y0 = 0.0;
  double residual = 0.0;  // varphi(y0)
  int iterations = 0;
};

// Single sign change of varphi, bracketed in (0, 0.5) and refined by bisection.
VarphiRoot find_varphi_root();

struct VarphiIntegral {
  VarphiRoot root;
  QuadratureResult negative_part;  // int_0^y0 varphi (<= 0)
  QuadratureResult positive_part;  // int_y0^inf varphi (>= 0)
  QuadratureResult total;
};

VarphiIntegral integrate_varphi();

// Numerical check of the two lower bounds used to compare the negative and
// positive parts of the varphi integral, and of the resulting chain
// int_y0^inf varphi > varphi(1) > K0(2) atan(y0) > -int_0^y0 varphi.
struct VarphiBoundsReport {
  double y0 = 0.0;
  bool small_y_bound_holds = false;  // varphi >= -K0(2)/(1+y^2) on (0, y0]
  bool large_y_bound_holds = false;  // varphi >= varphi(1) exp(1-y) on [1, 60]
  double positive_integral = 0.0;
  double exponential_bound_integral = 0.0;
  double bessel_bound_integral = 0.0;
  double negative_integral_magnitude = 0.0;
  bool chain_holds = false;
};

VarphiBoundsReport check_varphi_bounds(int grid_points = 2000);

// Inner integral of the three-vertex reduction at fixed theta3:
// int_0^inf log(1 + (theta3 y)^3) / (theta3 y) * bessel_difference(y) dy.
QuadratureResult remark4_inner(double theta3);

struct Remark4Report {
  QuadratureResult double_integral;  // int_0^inf exp(-t) inner(t) dt
  std::vector<double> grid;
  std::vector<double> inner_values;
  std::vector<double> negative_at;  // grid points with inner(t) < 0
};

// Evaluates the inner integral on `theta3_grid` (positive, any order) and
// the exponentially weighted outer integral, splitting the outer range at
// the grid points.
Remark4Report remark4_check(std::span<const double> theta3_grid);

// Log-spaced default grid reaching theta3 = 1e5.
std::vector<double> default_remark4_grid();

}  // namespace netgeo::analytic
