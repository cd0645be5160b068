#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: plain nested vectors, textbook formulas, brute force.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat minor_of(const Mat& m, std::size_t row, std::size_t col) {
  Mat out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<double> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(r);
  }
  return out;
}

// Laplace expansion along the first row. Exponential cost; fine for n <= 7.
inline double laplace_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  double det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    det += sign * m[0][j] * laplace_det(minor_of(m, 0, j));
  }
  return det;
}

inline Mat cofactor_adjugate(const Mat& m) {
  const std::size_t n = m.size();
  Mat adj(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      adj[j][i] = sign * laplace_det(minor_of(m, i, j));
    }
  }
  return adj;
}

// Cramer's rule inverse.
inline Mat cramer_inverse(const Mat& m) {
  Mat inv = cofactor_adjugate(m);
  const double det = laplace_det(m);
  for (auto& row : inv) {
    for (double& v : row) v /= det;
  }
  return inv;
}

inline bool leading_minors_positive(const Mat& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    Mat block(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) block[i][j] = m[i][j];
    }
    if (!(laplace_det(block) > 0.0)) return false;
  }
  return true;
}

// Fisher metric from the score covariance definition specialised to
// zero-mean Gaussians with diagonal-only parameter dependence:
// G(mu, nu) = tr(C^-1 E_mu C^-1 E_nu) / 2 with E_mu the unit diagonal matrix.
inline Mat fisher_by_trace(const Mat& c) {
  const Mat inv = cramer_inverse(c);
  const std::size_t n = c.size();
  Mat g(n, std::vector<double>(n));
  for (std::size_t mu = 0; mu < n; ++mu) {
    for (std::size_t nu = 0; nu < n; ++nu) {
      // C^-1 E_mu C^-1 E_nu has a single non-zero column product.
      g[mu][nu] = 0.5 * inv[nu][mu] * inv[mu][nu];
    }
  }
  return g;
}

inline Mat covariance(const std::vector<std::vector<int>>& adjacency, const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  Mat c(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i][j] = i == j ? theta[i] : adjacency[i][j];
  }
  return c;
}

// exp(kappa - Tr C) log(1 + det(C)^n) sqrt(det G), zero outside the PD cone.
inline double volume_integrand(const std::vector<std::vector<int>>& adjacency, const std::vector<double>& theta,
                               double kappa) {
  const Mat c = covariance(adjacency, theta);
  if (!leading_minors_positive(c)) return 0.0;
  const double n = static_cast<double>(theta.size());
  const double det_c = laplace_det(c);
  const double det_g = laplace_det(fisher_by_trace(c));
  double trace = 0.0;
  for (double t : theta) trace += t;
  return std::exp(kappa - trace) * std::log1p(std::pow(det_c, n)) * std::sqrt(det_g);
}

// Composite Simpson on [a, b] with `intervals` (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// K0(x) = int_0^inf exp(-x cosh t) dt; the integrand is below 1e-300 past t = 8 for x >= 0.5.
inline double k0_by_quadrature(double x) {
  const double upper = std::acosh(std::max(1.0, 750.0 / x)) + 1.0;
  return simpson([x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, upper, 20000);
}

// Every permutation p with A[i][j] == B[p(i)][p(j)].
inline std::vector<std::vector<int>> all_isomorphisms(const std::vector<std::vector<int>>& a,
                                                      const std::vector<std::vector<int>>& b) {
  std::vector<std::vector<int>> found;
  if (a.size() != b.size()) return found;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a[i][j] == b[p[i]][p[j]];
    }
    if (ok) found.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return found;
}

// Plain Monte Carlo over exponential proposals with an independent generator.
struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
};

inline McResult naive_volume(const std::vector<std::vector<int>>& adjacency, double kappa, int samples,
                             std::uint32_t seed) {
  std::minstd_rand rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  const std::size_t n = adjacency.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> theta(n);
  for (int s = 0; s < samples; ++s) {
    for (double& t : theta) t = exp1(rng);
    // The proposal density exp(-sum theta) cancels the exp(-Tr C) factor.
    double trace = 0.0;
    for (double t : theta) trace += t;
    const double w = volume_integrand(adjacency, theta, kappa) * std::exp(trace);
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / samples;
  const double var = (sum_sq / samples - mean * mean) * samples / (samples - 1.0);
  return {mean, std::sqrt(var / samples)};
}

}  // namespace oracle
