#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netgeo/linalg.hpp"
#include "netgeo/network.hpp"

namespace netgeo {

// Everything the metric needs at one parameter point.
struct MetricEvaluation {
  ThetaPoint theta;
  SymMatrix c;      // diag(theta) + adjacency
  double det_c = 0.0;
  SymMatrix adj_c;
  SymMatrix g;      // Fisher matrix; left empty (n() == 0) outside the domain
  bool in_domain = false;
};

// The theta-dependent part of the volume integrand, log[1 + det(C)^n] * sqrt(det G),
// without the exp(kappa - Tr C) factor.
struct IntegrandCore {
  double value = 0.0;
  // False only when a strictly positive value underflowed to zero.
  bool log_scale_ok = true;
  bool in_domain = false;
};

struct MonteCarloValue {
  double estimate = 0.0;
  double std_error = 0.0;
};

SymMatrix covariance_at(const Network& net, const ThetaPoint& theta);

// G(mu, nu) = (c^-1(mu, nu))^2 / 2 through adj(c)/det(c).
// Throws NotPositiveDefiniteError when c is not PD.
SymMatrix fisher_matrix(const SymMatrix& c);

// Same metric assembled from the second-order expansion of the Gaussian
// expectation: f(0) + D f(0) + D^2 f(0) / 2, summed term by term with
// c^-1 from elimination. Kept as an independent route to `fisher_matrix`.
SymMatrix fisher_matrix_lemma1(const SymMatrix& c);

// Direct Monte Carlo estimate of E[d_mu log p * d_nu log p] under x ~ N(0, C(theta)).
// Indices are 0-based. Requires samples >= 1000.
MonteCarloValue fisher_entry_mc_oracle(const Network& net, const ThetaPoint& theta, int mu, int nu,
                                       std::int64_t samples, std::uint64_t seed);

MetricEvaluation evaluate_metric(const Network& net, const ThetaPoint& theta);

IntegrandCore integrand_core(const Network& net, const ThetaPoint& theta);

// log(1 + x) / x, by series for x < 1e-4.
double log1p_ratio(double x);

// Reusable evaluator for the hot loop of the volume estimator. Holds its own
// scratch buffers, so one instance per thread.
class IntegrandEvaluator {
 public:
  explicit IntegrandEvaluator(const Network& net);

  int n() const noexcept { return n_; }
  IntegrandCore operator()(std::span<const double> theta);

 private:
  int n_;
  std::vector<double> adjacency_;
  std::vector<double> c_;
  std::vector<double> work_;
  std::vector<double> adj_;
  std::vector<double> minor_;
};

}  // namespace netgeo
