#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "netgeo/analytic.hpp"
#include "netgeo/fisher.hpp"
#include "netgeo/linalg.hpp"
#include "netgeo/sampling.hpp"

namespace netgeo::cli {

namespace {

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

CheckResult make(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)};
}

Network random_network(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) edges.emplace_back(i, j);
    }
  }
  return Network::from_edges(n, edges);
}

// Strictly diagonally dominant, hence inside the domain.
ThetaPoint random_domain_point(const Network& net, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> theta(static_cast<std::size_t>(net.n()));
  for (int i = 0; i < net.n(); ++i) {
    int degree = 0;
    for (int j = 0; j < net.n(); ++j) degree += net.at(i, j);
    theta[static_cast<std::size_t>(i)] = degree + 0.05 + exp1(rng);
  }
  return ThetaPoint(std::move(theta));
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> mapping(static_cast<std::size_t>(n));
  std::iota(mapping.begin(), mapping.end(), 0);
  std::shuffle(mapping.begin(), mapping.end(), rng);
  return Permutation(std::move(mapping));
}

ThetaPoint permute_theta(const ThetaPoint& theta, const Permutation& p) {
  std::vector<double> out(static_cast<std::size_t>(theta.size()));
  for (int i = 0; i < theta.size(); ++i) out[static_cast<std::size_t>(p(i))] = theta[i];
  return ThetaPoint(std::move(out));
}

std::vector<CheckResult> linalg_suite(const RunConfig& cfg, std::ostream&) {
  std::mt19937_64 rng(derive_seed(cfg.seed, 0x6c696e));
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> diag(0.0, 2.5);
  int disagreements = 0;
  int pd_count = 0;
  double worst_adj = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      SymMatrix m(n);
      for (int i = 0; i < n; ++i) {
        m.set(i, i, diag(rng));
        for (int j = i + 1; j < n; ++j) m.set(i, j, off(rng));
      }
      bool minors_positive = true;
      for (int k = 1; k <= n; ++k) minors_positive = minors_positive && determinant(m.leading(k)) > 0.0;
      const bool pd = pd_test(m).is_pd;
      pd_count += pd;
      if (pd != minors_positive) ++disagreements;

      const std::vector<double> prod = m.multiply(adjugate(m));
      const double det = determinant(m);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double expect = i == j ? det : 0.0;
          worst_adj = std::max(worst_adj, std::abs(prod[static_cast<std::size_t>(i * n + j)] - expect));
        }
      }
    }
  }
  return {
      make("linalg.pd_test_vs_leading_minors", disagreements == 0,
           fmt("disagreements %d of 5000 (%d PD)", disagreements, pd_count)),
      make("linalg.adjugate_identity", worst_adj < 1e-10, fmt("max |C adj(C) - det(C) I| = %.3g (tol 1e-10)", worst_adj)),
  };
}

std::vector<CheckResult> fisher_suite(const RunConfig& cfg, std::ostream&) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(derive_seed(cfg.seed, 0x70726f7031));
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 500; ++trial) {
      const Network net = random_network(n, 0.5, rng);
      const SymMatrix c = covariance_at(net, random_domain_point(net, rng));
      const SymMatrix g = fisher_matrix(c);
      const SymMatrix g1 = fisher_matrix_lemma1(c);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double scale = std::sqrt(g(i, i) * g(j, j));
          worst = std::max(worst, std::abs(g(i, j) - g1(i, j)) / scale);
        }
      }
    }
  }
  out.push_back(make("fisher.closed_form_vs_expansion", worst <= 1e-9,
                     fmt("max relative difference %.3g over 2500 instances (tol 1e-9)", worst)));

  const std::int64_t samples = std::min<std::int64_t>(100'000, std::max<std::int64_t>(1000, cfg.effective_samples()));
  int failed = 0;
  int wide = 0;
  double worst_sigmas = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 3;
    const Network net = random_network(n, 0.6, rng);
    const ThetaPoint theta = random_domain_point(net, rng);
    const int mu = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int nu = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const SymMatrix g = fisher_matrix(covariance_at(net, theta));
    const MonteCarloValue mc =
        fisher_entry_mc_oracle(net, theta, mu, nu, samples, derive_seed(cfg.seed, 0x6f7261636c65 + k));
    const double scale = std::sqrt(g(mu, mu) * g(nu, nu));
    const CheckStatus s = agreement_status(mc.estimate - g(mu, nu), mc.std_error, 0.1 * scale);
    failed += s == CheckStatus::kFail;
    wide += s == CheckStatus::kWide;
    if (mc.std_error > 0.0) worst_sigmas = std::max(worst_sigmas, std::abs(mc.estimate - g(mu, nu)) / mc.std_error);
  }
  CheckResult oracle{"fisher.gaussian_expectation_oracle", CheckStatus::kPass,
                     fmt("20 cases at %lld samples, worst %.2f sigma", static_cast<long long>(samples), worst_sigmas)};
  if (failed) oracle.status = CheckStatus::kFail;
  else if (wide) oracle.status = CheckStatus::kWide;
  out.push_back(oracle);
  return out;
}

std::vector<CheckResult> isomorphism_suite(const RunConfig& cfg, std::ostream& err) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(derive_seed(cfg.seed, 0x69736f));
  double worst_det = 0.0;
  double worst_upsilon = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    const Network net = random_network(n, 0.5, rng);
    const ThetaPoint theta = random_domain_point(net, rng);
    const Permutation p = random_permutation(n, rng);
    const SymMatrix c = covariance_at(net, theta);
    const SymMatrix cp = covariance_at(permute_network(net, p), permute_theta(theta, p));
    const double det_g = determinant(fisher_matrix(c));
    const double det_gp = determinant(fisher_matrix(cp));
    worst_det = std::max(worst_det, std::abs(det_g - det_gp) / std::abs(det_g));
    const double u = upsilon(c, n, 0.0);
    const double up = upsilon(cp, n, 0.0);
    worst_upsilon = std::max(worst_upsilon, std::abs(u - up) / std::abs(u));
  }
  out.push_back(make("isomorphism.pointwise_det_g", worst_det <= 1e-12,
                     fmt("max relative change %.3g over 500 permutations (tol 1e-12)", worst_det)));
  out.push_back(make("isomorphism.pointwise_upsilon", worst_upsilon <= 1e-12,
                     fmt("max relative change %.3g over 500 permutations (tol 1e-12)", worst_upsilon)));

  std::vector<KappaRecord> kappas;
  for (int n = 2; n <= 6; ++n) kappas.push_back(obtain_kappa(n, cfg, err));
  McConfig mc = cfg.mc_config();
  int failed = 0;
  int wide = 0;
  double worst_sigmas = 0.0;
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 5;
    const Network net = random_network(n, 0.5, rng);
    const Network image = permute_network(net, random_permutation(n, rng));
    const double kappa = kappas[static_cast<std::size_t>(n - 2)].kappa;
    mc.seed = volume_seed(cfg.seed, 0x100 + 2 * k);
    const EntropyResult a = entropy(estimate_volume(net, kappa, mc), cfg.log_base);
    mc.seed = volume_seed(cfg.seed, 0x101 + 2 * k);
    const EntropyResult b = entropy(estimate_volume(image, kappa, mc), cfg.log_base);
    const double sigma = std::hypot(a.entropy_stderr, b.entropy_stderr);
    const CheckStatus s = agreement_status(a.entropy - b.entropy, sigma, 0.5);
    failed += s == CheckStatus::kFail;
    wide += s == CheckStatus::kWide;
    worst_sigmas = std::max(worst_sigmas, std::abs(a.entropy - b.entropy) / sigma);
  }
  CheckResult e2e{"isomorphism.end_to_end_entropy", CheckStatus::kPass,
                  fmt("10 graphs, worst %.2f sigma", worst_sigmas)};
  if (failed) e2e.status = CheckStatus::kFail;
  else if (wide) e2e.status = CheckStatus::kWide;
  out.push_back(e2e);
  return out;
}

std::vector<CheckResult> calibration_suite(const RunConfig& cfg, std::ostream& err) {
  std::vector<CheckResult> out;
  McConfig mc = cfg.mc_config();
  for (int n = 1; n <= 6; ++n) {
    const KappaRecord kappa = obtain_kappa(n, cfg, err);
    mc.seed = volume_seed(cfg.seed, 0x200 + n);
    const VolumeEstimate v = estimate_volume(Network::empty(n), kappa.kappa, mc);
    const double sigma = std::hypot(v.std_error, kappa.kappa_stderr);
    out.push_back({"calibration.empty_n" + std::to_string(n), agreement_status(v.value - 1.0, sigma, 0.1),
                   fmt("volume %.5f +/- %.2e, %.2f sigma from 1", v.value, sigma, std::abs(v.value - 1.0) / sigma)});
  }
  return out;
}

std::vector<CheckResult> two_vertex_suite(const RunConfig& cfg, std::ostream& err) {
  std::vector<CheckResult> out;
  for (double y : {0.1, 1.0, 10.0}) {
    const double residual = std::abs(2.0 * analytic::bessel_k0(2.0 * std::sqrt(y)) - analytic::bessel_integral_form(y).value);
    out.push_back(make(fmt("bessel.identity_y%g", y), residual < 1e-8, fmt("residual %.3g (tol 1e-8)", residual)));
  }

  const QuadratureResult diag = analytic::v2_diag_quadrature(false);
  const QuadratureResult offd = analytic::v2_offdiag_quadrature(false);
  const double gap = diag.value - offd.value;
  const double gap_bound = diag.abs_error_bound + offd.abs_error_bound;
  out.push_back(make("prop4.quadrature_gap", gap - gap_bound > 0.0,
                     fmt("V1 - V2 = %.12f, error bound %.2e", gap, gap_bound)));

  const KappaRecord kappa = obtain_kappa(2, cfg, err);
  McConfig mc = cfg.mc_config();
  const std::pair<const char*, Network> cases[] = {{"prop4.mc_vs_quadrature_empty", Network::empty(2)},
                                                   {"prop4.mc_vs_quadrature_edge", clique_network(2, 2)}};
  for (int i = 0; i < 2; ++i) {
    const QuadratureResult q = i == 0 ? analytic::v2_diag_quadrature(true, kappa.kappa)
                                      : analytic::v2_offdiag_quadrature(true, kappa.kappa);
    mc.seed = volume_seed(cfg.seed, 0x300 + i);
    // Both sides scale with exp(kappa), so kappa's own error cancels.
    const VolumeEstimate v = estimate_volume(cases[i].second, kappa.kappa, mc);
    const double sigma = v.std_error + q.abs_error_bound;
    out.push_back({cases[i].first, agreement_status(v.value - q.value, sigma, 0.1),
                   fmt("mc %.5f +/- %.2e, quadrature %.6f, %.2f sigma", v.value, v.std_error, q.value,
                       std::abs(v.value - q.value) / sigma)});
  }

  const analytic::VarphiBoundsReport bounds = analytic::check_varphi_bounds();
  const analytic::VarphiRoot root = analytic::find_varphi_root();
  out.push_back(make("varphi.root", root.y0 > 0.0 && root.y0 < 0.5 && std::abs(root.residual) < 1e-12,
                     fmt("y0 = %.12g, |varphi(y0)| = %.2e", root.y0, std::abs(root.residual))));
  const analytic::VarphiIntegral integral = analytic::integrate_varphi();
  out.push_back(make("varphi.integral_positive",
                     integral.total.value - integral.total.abs_error_bound > 0.0,
                     fmt("integral %.10f, error bound %.2e", integral.total.value, integral.total.abs_error_bound)));
  out.push_back(make("varphi.lower_bounds",
                     bounds.small_y_bound_holds && bounds.large_y_bound_holds && bounds.chain_holds,
                     fmt("%.6f > %.6f > %.6f > %.6f", bounds.positive_integral, bounds.exponential_bound_integral,
                         bounds.bessel_bound_integral, bounds.negative_integral_magnitude)));
  return out;
}

std::vector<CheckResult> three_vertex_suite(const RunConfig&, std::ostream&) {
  const std::vector<double> grid = analytic::default_remark4_grid();
  const analytic::Remark4Report report = analytic::remark4_check(grid);
  const QuadratureResult& d = report.double_integral;
  std::string negative = report.negative_at.empty() ? "none" : "";
  for (double t : report.negative_at) negative += (negative.empty() ? "" : ",") + fmt("%g", t);
  return {
      make("remark4.double_integral_positive", d.value - d.abs_error_bound > 0.0,
           fmt("value %.10f, error bound %.2e", d.value, d.abs_error_bound)),
      make("remark4.inner_negative_at_large_theta3", !report.negative_at.empty(), "negative at theta3 = " + negative),
  };
}

std::vector<CheckResult> monotonicity_suite(const RunConfig& cfg, std::ostream& err) {
  std::vector<CheckResult> out;
  for (int n = 2; n <= 6; ++n) {
    const KappaRecord kappa = obtain_kappa(n, cfg, err);
    McConfig mc = cfg.mc_config();
    mc.seed = volume_seed(cfg.seed, 0x400 + n);
    const SimplexTable table = simplex_table(n, mc, cfg.log_base, kappa);
    for (const MonotonicityStep& step : monotonicity_check(table)) {
      const double sigma = step.sigmas != 0.0 ? step.margin / step.sigmas : 0.0;
      out.push_back({fmt("monotonicity.n%d_k%d", n, step.k), ordering_status(step.margin, sigma),
                     fmt("V%d - V%d = %.5f, %.1f sigma", step.k, step.k + 1, step.margin, step.sigmas)});
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "PASS";
    case CheckStatus::kFail:
      return "FAIL";
    case CheckStatus::kWide:
      return "WIDE";
  }
  return "FAIL";
}

CheckStatus agreement_status(double difference, double sigma, double wide_sigma) {
  if (!std::isfinite(difference) || !std::isfinite(sigma)) return CheckStatus::kFail;
  if (sigma > wide_sigma) return CheckStatus::kWide;
  return std::abs(difference) <= 3.0 * sigma ? CheckStatus::kPass : CheckStatus::kFail;
}

CheckStatus ordering_status(double margin, double sigma) {
  if (!std::isfinite(margin) || !std::isfinite(sigma)) return CheckStatus::kFail;
  if (margin > 3.0 * sigma) return CheckStatus::kPass;
  if (margin < -3.0 * sigma) return CheckStatus::kFail;
  return CheckStatus::kWide;
}

std::vector<VerifySuite> verify_suites() {
  return {
      {"linalg", linalg_suite},
      {"fisher", fisher_suite},
      {"isomorphism", isomorphism_suite},
      {"calibration", calibration_suite},
      {"two-vertex", two_vertex_suite},
      {"three-vertex", three_vertex_suite},
      {"monotonicity", monotonicity_suite},
  };
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  int pass = 0;
  int fail = 0;
  int wide = 0;
  for (const VerifySuite& suite : verify_suites()) {
    for (const CheckResult& r : suite.run(cfg, err)) {
      out << to_string(r.status) << "  " << r.name << "  " << r.detail << '\n';
      out.flush();
      pass += r.status == CheckStatus::kPass;
      fail += r.status == CheckStatus::kFail;
      wide += r.status == CheckStatus::kWide;
    }
  }
  out << "# " << pass << " passed, " << fail << " failed, " << wide << " inconclusive ("
      << cfg.effective_samples() << " samples per estimate, seed " << cfg.seed << ")\n";
  return fail == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace netgeo::cli
