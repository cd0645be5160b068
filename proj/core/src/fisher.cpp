#include "netgeo/fisher.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "netgeo/errors.hpp"

namespace netgeo {

namespace {

constexpr double kSeriesThreshold = 1e-4;
// Rounding slack for det(adj(C)^2) relative to its Hadamard bound.
constexpr double kNegativeDetSlack = 1e-14;

void require_pd(const SymMatrix& c, const char* who) {
  if (!pd_test(c).is_pd) {
    throw NotPositiveDefiniteError(std::string(who) + ": covariance matrix is not positive definite");
  }
}

}  // namespace

double log1p_ratio(double x) {
  if (x < kSeriesThreshold) {
    // 1 - x/2 + x^2/3 - x^3/4; truncation error below x^4/5 < 2e-17.
    return 1.0 + x * (-0.5 + x * (1.0 / 3.0 - x * 0.25));
  }
  return std::log1p(x) / x;
}

SymMatrix covariance_at(const Network& net, const ThetaPoint& theta) {
  if (theta.size() != net.n()) {
    throw std::invalid_argument("covariance_at: theta has " + std::to_string(theta.size()) +
                                " entries, network has " + std::to_string(net.n()) + " vertices");
  }
  SymMatrix c(net.n());
  for (int i = 0; i < net.n(); ++i) {
    c.set(i, i, theta[i]);
    for (int j = i + 1; j < net.n(); ++j) c.set(i, j, static_cast<double>(net.at(i, j)));
  }
  return c;
}

SymMatrix fisher_matrix(const SymMatrix& c) {
  require_pd(c, "fisher_matrix");
  const double det = determinant(c);
  const SymMatrix adj = adjugate(c);
  SymMatrix g(c.n());
  for (int mu = 0; mu < c.n(); ++mu) {
    for (int nu = mu; nu < c.n(); ++nu) {
      const double inv = adj(mu, nu) / det;
      g.set(mu, nu, 0.5 * inv * inv);
    }
  }
  return g;
}

SymMatrix fisher_matrix_lemma1(const SymMatrix& c) {
  require_pd(c, "fisher_matrix_lemma1");
  const int n = c.n();
  const SymMatrix inv = inverse_by_elimination(c);

  SymMatrix g(n);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) {
      const double f0 = 0.25 * inv(mu, mu) * inv(nu, nu);

      double first = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          first += c(i, j) * (inv(i, mu) * inv(j, mu) * inv(nu, nu) + inv(i, nu) * inv(j, nu) * inv(mu, mu));
        }
      }
      first *= -0.25;

      double second = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double cij = c(i, j);
          if (cij == 0.0) continue;
          for (int h = 0; h < n; ++h) {
            for (int k = 0; k < n; ++k) {
              const double chk = c(h, k);
              if (chk == 0.0) continue;
              const double terms = inv(i, mu) * inv(j, mu) * inv(h, nu) * inv(k, nu) +
                                   inv(k, mu) * inv(j, mu) * inv(h, nu) * inv(i, nu) +
                                   inv(h, mu) * inv(j, mu) * inv(k, nu) * inv(i, nu) +
                                   inv(k, mu) * inv(i, mu) * inv(h, nu) * inv(j, nu) +
                                   inv(h, mu) * inv(i, mu) * inv(k, nu) * inv(j, nu) +
                                   inv(i, nu) * inv(j, nu) * inv(h, mu) * inv(k, mu);
              second += cij * chk * terms;
            }
          }
        }
      }
      second *= 0.125;

      g.set(mu, nu, f0 + first + second);
    }
  }
  return g;
}

MonteCarloValue fisher_entry_mc_oracle(const Network& net, const ThetaPoint& theta, int mu, int nu,
                                       std::int64_t samples, std::uint64_t seed) {
  const int n = net.n();
  if (mu < 0 || nu < 0 || mu >= n || nu >= n) throw std::out_of_range("fisher_entry_mc_oracle: index out of range");
  if (samples < 1000) throw std::invalid_argument("fisher_entry_mc_oracle: needs at least 1000 samples");

  const SymMatrix c = covariance_at(net, theta);
  std::vector<double> chol(c.data().begin(), c.data().end());
  if (!kernels::cholesky_in_place(chol, n)) {
    throw NotPositiveDefiniteError("fisher_entry_mc_oracle: covariance matrix is not positive definite");
  }
  const SymMatrix inv = inverse_by_elimination(c);

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> z(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));

  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (double& v : z) v = normal(engine);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k <= i; ++k) acc += chol[static_cast<std::size_t>(i) * n + k] * z[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(i)] = acc;
    }
    double proj_mu = 0.0, proj_nu = 0.0;
    for (int a = 0; a < n; ++a) {
      proj_mu += inv(a, mu) * x[static_cast<std::size_t>(a)];
      proj_nu += inv(a, nu) * x[static_cast<std::size_t>(a)];
    }
    const double score_mu = -0.5 * (inv(mu, mu) - proj_mu * proj_mu);
    const double score_nu = -0.5 * (inv(nu, nu) - proj_nu * proj_nu);
    const double product = score_mu * score_nu;

    const double delta = product - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (product - mean);
  }
  const auto count = static_cast<double>(samples);
  return {mean, std::sqrt(m2 / (count - 1.0) / count)};
}

MetricEvaluation evaluate_metric(const Network& net, const ThetaPoint& theta) {
  MetricEvaluation eval;
  eval.theta = theta;
  eval.c = covariance_at(net, theta);
  eval.det_c = determinant(eval.c);
  eval.adj_c = adjugate(eval.c);
  eval.in_domain = pd_test(eval.c).is_pd;
  if (eval.in_domain) eval.g = fisher_matrix(eval.c);
  return eval;
}

IntegrandCore integrand_core(const Network& net, const ThetaPoint& theta) {
  if (theta.size() != net.n()) throw std::invalid_argument("integrand_core: theta length differs from n");
  IntegrandEvaluator evaluator(net);
  return evaluator(theta.values());
}

IntegrandEvaluator::IntegrandEvaluator(const Network& net)
    : n_(net.n()),
      adjacency_(net.adjacency().begin(), net.adjacency().end()),
      c_(adjacency_.size()),
      work_(adjacency_.size()),
      adj_(adjacency_.size()),
      minor_(static_cast<std::size_t>(std::max(1, (n_ - 1) * (n_ - 1)))) {}

IntegrandCore IntegrandEvaluator::operator()(std::span<const double> theta) {
  const auto n = static_cast<std::size_t>(n_);
  if (theta.size() != n) throw std::invalid_argument("IntegrandEvaluator: theta length differs from n");

  c_ = adjacency_;
  for (std::size_t i = 0; i < n; ++i) c_[i * n + i] = theta[i];

  work_ = c_;
  if (!kernels::cholesky_in_place(work_, n_)) return {0.0, true, false};
  double diag_product = 1.0;
  for (std::size_t i = 0; i < n; ++i) diag_product *= work_[i * n + i];
  const double det = diag_product * diag_product;

  kernels::symmetric_adjugate(c_, n_, adj_, minor_);
  double hadamard_bound = 1.0;
  for (double& v : adj_) v *= v;
  for (std::size_t i = 0; i < n; ++i) hadamard_bound *= adj_[i * n + i];
  double det_h = kernels::determinant_in_place(adj_, n_);
  if (det_h < 0.0) {
    if (det_h < -kNegativeDetSlack * hadamard_bound) {
      throw std::logic_error("IntegrandEvaluator: det(adj(C)^2) is significantly negative at a PD point");
    }
    det_h = 0.0;
  }

  const double half_power = std::pow(0.5, 0.5 * static_cast<double>(n_));
  const double det_pow = std::pow(det, static_cast<double>(n_));
  IntegrandCore out{0.0, true, true};
  if (std::isfinite(det_pow)) {
    out.value = log1p_ratio(det_pow) * half_power * std::sqrt(det_h);
  } else {
    // det^n overflows: log1p(det^n) ~ n log det.
    const double log_det_pow = static_cast<double>(n_) * std::log(det);
    out.value = std::exp(std::log(log_det_pow) - log_det_pow + 0.5 * std::log(det_h)) * half_power;
  }
  if (out.value == 0.0 && det_h > 0.0) out.log_scale_ok = false;
  return out;
}

}  // namespace netgeo
