#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "netgeo/analytic.hpp"
#include "netgeo/errors.hpp"
#include "netgeo/quadrature.hpp"
#include "netgeo/volume.hpp"
#include "oracles/oracles.hpp"

using namespace netgeo;
namespace an = netgeo::analytic;

namespace {

double k0_std(double x) { return std::cyl_bessel_k(0.0, x); }

// Simpson in s = log y over [e^-40, e^6]; the integrands below vanish like y
// at the origin and like exp(-2 sqrt(y)) at infinity.
double log_simpson(const std::function<double(double)>& f_of_y) {
  return oracle::simpson([&](double s) {
    const double y = std::exp(s);
    return f_of_y(y) * y;
  }, -40.0, 6.0, 400000);
}

McConfig config(std::int64_t samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0).value, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity).value, 1.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -kInfinity, kInfinity).value,
              std::sqrt(std::numbers::pi), 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, -kInfinity, 0.0).value, 1.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return x; }, 1.0, 0.0).value, -0.5, 1e-15);
  const QuadratureResult r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  EXPECT_NEAR(r.value, 2.0, 1e-14);
  EXPECT_LE(r.abs_error_bound, 1e-11);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Quadrature, DivergentIntegralThrows) {
  EXPECT_THROW(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), NumericalError);
}

TEST(BesselK0, MatchesStandardLibrary) {
  for (double x : {1e-8, 1e-3, 0.1, 0.5, 1.0, 1.9999, 2.0, 2.0001, 3.0, 7.5, 20.0, 100.0, 600.0}) {
    EXPECT_NEAR(an::bessel_k0(x), k0_std(x), 1e-12 * k0_std(x)) << "x=" << x;
  }
}

TEST(BesselK0, MatchesIntegralRepresentation) {
  for (double x : {0.5, 1.0, 4.0}) EXPECT_NEAR(an::bessel_k0(x), oracle::k0_by_quadrature(x), 1e-10 * k0_std(x));
  EXPECT_NEAR(an::bessel_k0(1.0), 0.42102443824070833, 1e-15);
}

TEST(BesselK0, SmallArgumentAsymptote) {
  const double x = 1e-6;
  const double asymptote = -std::log(x / 2.0) - std::numbers::egamma;
  EXPECT_NEAR(an::bessel_k0(x) / asymptote, 1.0, 1e-6);
  EXPECT_THROW(an::bessel_k0(0.0), std::domain_error);
  EXPECT_THROW(an::bessel_k0(-1.0), std::domain_error);
}

TEST(BesselK0, IntegralIdentity) {
  for (double y : {0.1, 1.0, 10.0}) {
    const double lhs = 2.0 * an::bessel_k0(2.0 * std::sqrt(y));
    EXPECT_LT(std::abs(lhs - an::bessel_integral_form(y).value), 1e-8) << "y=" << y;
    // Same identity with the oracle's own integration.
    const double rhs = oracle::simpson([y](double s) { return std::exp(-std::exp(s) - y * std::exp(-s)); }, -40.0, 8.0, 200000);
    EXPECT_LT(std::abs(lhs - rhs), 1e-8) << "y=" << y;
  }
}

TEST(TwoVertex, RawIntegralsMatchSimpsonOracle) {
  const double diag = log_simpson([](double y) { return 2.0 * k0_std(2.0 * std::sqrt(y)) * std::log1p(y * y) / y; });
  const double offd = log_simpson([](double y) {
    return 2.0 * k0_std(2.0 * std::sqrt(y + 1.0)) * std::sqrt(1.0 + 2.0 / y) * std::log1p(y * y) / y;
  });
  const QuadratureResult d = an::v2_diag_quadrature(false);
  const QuadratureResult o = an::v2_offdiag_quadrature(false);
  EXPECT_NEAR(d.value, diag, 1e-9);
  EXPECT_NEAR(o.value, offd, 1e-9);
  EXPECT_GT(o.value, 0.0);
  // The two-vertex inequality with certain sign.
  EXPECT_GT(d.value - o.value - d.abs_error_bound - o.abs_error_bound, 0.0);
}

TEST(TwoVertex, TailBeyondFiftyIsSmall) {
  // exp(-2 sqrt(50)) sets the scale: a few 1e-7, not negligible at 1e-10.
  const double tail = log_simpson([](double y) {
    if (y < 50.0) return 0.0;
    return 2.0 * k0_std(2.0 * std::sqrt(y + 1.0)) * std::sqrt(1.0 + 2.0 / y) * std::log1p(y * y) / y;
  });
  EXPECT_GT(tail, 0.0);
  EXPECT_LT(tail, 1e-6);
}

TEST(TwoVertex, EmptyVolumesMatchOracles) {
  // n = 1: sqrt(1/2) int exp(-t) log(1 + t) / t dt.
  const double n1 = std::sqrt(0.5) * oracle::simpson([](double s) {
    const double t = std::exp(s);
    return std::exp(-t) * std::log1p(t);
  }, -40.0, 4.0, 200000);
  EXPECT_NEAR(an::empty_volume_n1().value, n1, 1e-10);
  EXPECT_NEAR(an::empty_volume_n2().value, 0.5 * an::v2_diag_quadrature(false).value, 1e-15);
}

TEST(TwoVertex, NormalizedQuadratureMatchesMonteCarlo) {
  const KappaRecord kappa = calibrate_kappa(2, config(400'000, 77));
  McConfig cfg = config(400'000, 78);
  const VolumeEstimate empty = estimate_volume(Network::empty(2), kappa.kappa, cfg);
  const VolumeEstimate edge = estimate_volume(clique_network(2, 2), kappa.kappa, cfg);
  const QuadratureResult qd = an::v2_diag_quadrature(true, kappa.kappa);
  const QuadratureResult qo = an::v2_offdiag_quadrature(true, kappa.kappa);
  // kappa enters both sides through exp(kappa) and cancels.
  EXPECT_LE(std::abs(empty.value - qd.value), 3.0 * empty.std_error + qd.abs_error_bound);
  EXPECT_LE(std::abs(edge.value - qo.value), 3.0 * edge.std_error + qo.abs_error_bound);
  // The normalized diagonal value is exp(kappa) I0 with I0 the empty two-vertex volume.
  EXPECT_NEAR(qd.value, std::exp(kappa.kappa) * an::empty_volume_n2().value, 1e-12);
}

TEST(Varphi, Limits) {
  EXPECT_LT(std::abs(an::varphi(100.0)), 1e-6);
  EXPECT_LT(std::abs(an::varphi(1e-12)), 1e-6);
  // Leading small-y behaviour: -sqrt(2) K0(2) sqrt(y).
  const double y = 1e-10;
  EXPECT_NEAR(an::varphi(y) / (-std::sqrt(2.0) * k0_std(2.0) * std::sqrt(y)), 1.0, 1e-3);
  EXPECT_THROW(an::varphi(0.0), std::domain_error);
}

TEST(Varphi, SingleSignChange) {
  const an::VarphiRoot root = an::find_varphi_root();
  EXPECT_GT(root.y0, 0.0);
  EXPECT_LT(root.y0, 0.5);
  EXPECT_LT(std::abs(root.residual), 1e-12);
  for (double f : {1e-6, 1e-3, 0.1, 0.9}) EXPECT_LT(an::varphi(root.y0 * f), 0.0);
  for (double f : {1.1, 2.0, 10.0, 1e3, 1e5}) EXPECT_GT(an::varphi(root.y0 * f), 0.0);
}

TEST(Varphi, IntegralPositiveAndMatchesOracle) {
  const an::VarphiIntegral in = an::integrate_varphi();
  EXPECT_LT(in.negative_part.value, 0.0);
  EXPECT_GT(in.positive_part.value, 0.0);
  EXPECT_GT(in.total.value - in.total.abs_error_bound, 0.0);
  const double oracle_total = log_simpson([](double y) {
    return std::log1p(y * y) / y *
           (k0_std(2.0 * std::sqrt(y)) - std::sqrt(1.0 + 2.0 / y) * k0_std(2.0 * std::sqrt(y + 1.0)));
  });
  EXPECT_NEAR(in.total.value, oracle_total, 1e-9);
  // Both raw two-vertex integrals differ by twice this integral.
  EXPECT_NEAR(an::v2_diag_quadrature(false).value - an::v2_offdiag_quadrature(false).value, 2.0 * in.total.value, 1e-10);
}

TEST(Varphi, BoundsChain) {
  const an::VarphiBoundsReport r = an::check_varphi_bounds();
  EXPECT_TRUE(r.small_y_bound_holds);
  EXPECT_TRUE(r.large_y_bound_holds);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_GT(r.positive_integral, r.exponential_bound_integral);
  EXPECT_GT(r.bessel_bound_integral, r.negative_integral_magnitude);
}

TEST(Remark4, InnerIntegralAgainstOracle) {
  for (double t : {0.1, 1.0, 30.0}) {
    const double expected = log_simpson([t](double y) {
      const double z = t * y;
      return std::log1p(z * z * z) / z *
             (k0_std(2.0 * std::sqrt(y)) - std::sqrt(1.0 + 2.0 / y) * k0_std(2.0 * std::sqrt(y + 1.0)));
    });
    EXPECT_NEAR(an::remark4_inner(t).value, expected, 1e-8 * std::max(1.0, std::abs(expected))) << "theta3=" << t;
  }
  EXPECT_GT(an::remark4_inner(1.0).value, 0.0);
  EXPECT_THROW(an::remark4_inner(0.0), std::domain_error);
}

TEST(Remark4, DoubleIntegralPositiveWithNegativeInnerTail) {
  const an::Remark4Report r = an::remark4_check(an::default_remark4_grid());
  EXPECT_GT(r.double_integral.value - r.double_integral.abs_error_bound, 0.0);
  EXPECT_EQ(r.inner_values.size(), r.grid.size());
  ASSERT_FALSE(r.negative_at.empty());
  EXPECT_GE(r.negative_at.front(), 1e3);
  EXPECT_LT(an::remark4_inner(1e5).value, 0.0);
}
