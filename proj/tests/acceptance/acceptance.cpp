// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails. Runtime is dominated by the 2e7-sample n = 6 table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "netgeo/analytic.hpp"
#include "netgeo/fisher.hpp"
#include "netgeo/linalg.hpp"
#include "netgeo/volume.hpp"

using namespace netgeo;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::filesystem::path work_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "netgeo_acceptance";
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string cli(std::vector<std::string> args, int* code = nullptr) {
  args.insert(args.begin(), "netgeo");
  args.push_back("--kappa-cache");
  args.push_back((work_dir() / "kappa.txt").string());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code) *code = status;
  if (status != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return out.str();
}

McConfig config(std::int64_t samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

Network random_graph(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Network::from_edges(n, edges);
}

ThetaPoint dominant_theta(const Network& net, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> extra(0.05, 2.0);
  std::vector<double> t(static_cast<std::size_t>(net.n()));
  for (int i = 0; i < net.n(); ++i) {
    int degree = 0;
    for (int j = 0; j < net.n(); ++j) degree += net.at(i, j);
    t[static_cast<std::size_t>(i)] = degree + extra(rng);
  }
  return ThetaPoint(t);
}

Permutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  std::shuffle(m.begin(), m.end(), rng);
  return Permutation(m);
}

// Criterion 1. A row passes when its gap to the reference is inside the
// absolute tolerance or inside three of our own standard errors.
Outcome table1() {
  const double volume_ref[] = {1.0, 0.6700, 0.4024, 0.2229, 0.1158, 0.0592};
  const double entropy_ref[] = {0.0, 0.5777, 1.3066, 2.1649, 3.1092, 4.0767};
  int code = 0;
  const json j = json::parse(cli({"table", "--n", "6", "--samples", "20000000", "--seed", "42"}, &code));
  if (code != 0 || j["rows"].size() != 6) return {false, "table run failed"};
  bool ok = true;
  std::string detail;
  for (int k = 0; k < 6; ++k) {
    const auto& row = j["rows"][k];
    const double v = row["volume"];
    const double vs = row["volume_stderr"];
    const double s = row["entropy"];
    const double ss = row["entropy_stderr"];
    const double dv = std::abs(v - volume_ref[k]);
    const double ds = std::abs(s - entropy_ref[k]);
    const bool row_ok = dv <= std::max(0.01, 3.0 * vs) && ds <= std::max(0.03, 3.0 * ss);
    ok = ok && row_ok;
    detail += fmt("\n    k=%d V=%.4f+/-%.4f (ref %.4f, gap %.4f) S=%.4f+/-%.4f (ref %.4f, gap %.4f)%s", k, v, vs,
                  volume_ref[k], dv, s, ss, entropy_ref[k], ds, row_ok ? "" : "  <-- outside");
  }
  return {ok, detail};
}

Outcome prop1() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 500; ++trial) {
      const Network net = random_graph(n, rng);
      const SymMatrix c = covariance_at(net, dominant_theta(net, rng));
      const SymMatrix a = fisher_matrix(c);
      const SymMatrix b = fisher_matrix_lemma1(c);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(a(i, k) - b(i, k)) / std::sqrt(a(i, i) * a(k, k)));
      }
    }
  }
  return {worst <= 1e-9, fmt("max relative entry difference %.3g over 2500 instances (tol 1e-9)", worst)};
}

Outcome gaussian_oracle() {
  std::mt19937_64 rng(202);
  int inside = 0;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 4;
    const Network net = random_graph(n, rng);
    const ThetaPoint theta = dominant_theta(net, rng);
    const int mu = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int nu = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const double closed = fisher_matrix(covariance_at(net, theta))(mu, nu);
    const MonteCarloValue mc = fisher_entry_mc_oracle(net, theta, mu, nu, 100'000, 5000 + k);
    const double sig = std::abs(mc.estimate - closed) / mc.std_error;
    worst = std::max(worst, sig);
    inside += sig <= 3.0;
  }
  return {inside == 20, fmt("%d of 20 cases within 3 stderr at 1e5 samples, worst %.2f sigma", inside, worst)};
}

Outcome isomorphism() {
  std::mt19937_64 rng(303);
  double worst_det = 0.0;
  double worst_ups = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    const Network net = random_graph(n, rng);
    const ThetaPoint theta = dominant_theta(net, rng);
    const Permutation p = random_perm(n, rng);
    std::vector<double> moved(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) moved[static_cast<std::size_t>(p(i))] = theta[i];
    const SymMatrix c = covariance_at(net, theta);
    const SymMatrix cp = covariance_at(permute_network(net, p), ThetaPoint(moved));
    const double dg = determinant(fisher_matrix(c));
    worst_det = std::max(worst_det, std::abs(dg - determinant(fisher_matrix(cp))) / dg);
    const double u = upsilon(c, n, 0.0);
    worst_ups = std::max(worst_ups, std::abs(u - upsilon(cp, n, 0.0)) / u);
  }
  bool ok = worst_det <= 1e-12 && worst_ups <= 1e-12;
  std::string detail = fmt("pointwise: det G %.2g, Upsilon %.2g (tol 1e-12)", worst_det, worst_ups);

  double worst_sigma = 0.0;
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 5;
    const Network net = random_graph(n, rng);
    const Network image = permute_network(net, random_perm(n, rng));
    const KappaRecord kappa = calibrate_kappa(n, config(1'000'000, 40 + n));
    const EntropyResult a = entropy(estimate_volume(net, kappa.kappa, config(1'000'000, 600 + 2 * k)), LogBase::kBase2);
    const EntropyResult b = entropy(estimate_volume(image, kappa.kappa, config(1'000'000, 601 + 2 * k)), LogBase::kBase2);
    worst_sigma = std::max(worst_sigma, std::abs(a.entropy - b.entropy) / std::hypot(a.entropy_stderr, b.entropy_stderr));
  }
  ok = ok && worst_sigma <= 3.0;
  detail += fmt("; end-to-end: worst of 10 graphs %.2f sigma", worst_sigma);
  return {ok, detail};
}

Outcome calibration() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 6; ++n) {
    const KappaRecord kappa = calibrate_kappa(n, config(2'000'000, 42));
    const VolumeEstimate v = estimate_volume(Network::empty(n), kappa.kappa, config(2'000'000, 4242 + n));
    const double sigma = std::hypot(v.std_error, kappa.kappa_stderr);
    const bool row = std::abs(v.value - 1.0) <= 3.0 * sigma;
    ok = ok && row;
    detail += fmt("%sn=%d %.4f+/-%.4f", n == 1 ? "" : ", ", n, v.value, sigma);
  }
  return {ok, detail};
}

Outcome prop4() {
  const QuadratureResult d = analytic::v2_diag_quadrature(false);
  const QuadratureResult o = analytic::v2_offdiag_quadrature(false);
  const double gap = d.value - o.value;
  const double bound = d.abs_error_bound + o.abs_error_bound;
  bool ok = gap - bound > 0.0;
  std::string detail = fmt("V1-V2 = %.10f +/- %.1e", gap, bound);

  const KappaRecord kappa = calibrate_kappa(2, config(2'000'000, 42));
  const std::pair<Network, QuadratureResult> cases[] = {
      {Network::empty(2), analytic::v2_diag_quadrature(true, kappa.kappa)},
      {clique_network(2, 2), analytic::v2_offdiag_quadrature(true, kappa.kappa)}};
  int i = 0;
  for (const auto& [net, q] : cases) {
    const VolumeEstimate v = estimate_volume(net, kappa.kappa, config(2'000'000, 7000 + i++));
    const double sigma = v.std_error + q.abs_error_bound;
    ok = ok && std::abs(v.value - q.value) <= 3.0 * sigma;
    detail += fmt("; mc %.5f vs quadrature %.5f (%.2f sigma)", v.value, q.value, std::abs(v.value - q.value) / sigma);
  }
  return {ok, detail};
}

Outcome bessel() {
  double worst = 0.0;
  for (double y : {0.1, 1.0, 10.0}) {
    const double lhs = 2.0 * analytic::bessel_k0(2.0 * std::sqrt(y));
    worst = std::max(worst, std::abs(lhs - analytic::bessel_integral_form(y).value));
    // Oracle: standard-library K0.
    worst = std::max(worst, std::abs(lhs - 2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(y))));
  }
  return {worst < 1e-8, fmt("max residual %.2g (tol 1e-8)", worst)};
}

Outcome remark4() {
  const analytic::Remark4Report r = analytic::remark4_check(analytic::default_remark4_grid());
  std::string neg;
  for (double t : r.negative_at) neg += fmt(" %g", t);
  const bool ok = r.double_integral.value - r.double_integral.abs_error_bound > 0.0 && !r.negative_at.empty();
  return {ok, fmt("double integral %.8f +/- %.1e; inner negative at theta3 =%s", r.double_integral.value,
                  r.double_integral.abs_error_bound, neg.empty() ? " (none)" : neg.c_str())};
}

Outcome conjecture() {
  bool ok = true;
  double weakest = 1e300;
  std::string where;
  for (int n = 2; n <= 6; ++n) {
    for (const MonotonicityStep& s : monotonicity_check(n, config(2'000'000, 900 + n))) {
      ok = ok && s.margin > 0.0 && s.sigmas > 3.0;
      if (s.sigmas < weakest) {
        weakest = s.sigmas;
        where = fmt("n=%d k=%d margin %.4f", n, s.k, s.margin);
      }
    }
  }
  return {ok, fmt("all consecutive margins > 3 sigma; weakest %.1f sigma (%s)", weakest, where.c_str())};
}

Outcome determinism() {
  int c1 = 0;
  int c8 = 0;
  const std::string a = cli({"table", "--n", "5", "--samples", "1000000", "--threads", "1", "--recalibrate"}, &c1);
  const std::string b = cli({"table", "--n", "5", "--samples", "1000000", "--threads", "8", "--recalibrate"}, &c8);
  const bool ok = c1 == 0 && c8 == 0 && a == b && !a.empty();
  return {ok, fmt("table --n 5 JSON, %zu bytes, %s", a.size(), a == b ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 simplex table reproduction", table1},
      {"2 closed-form metric vs expansion", prop1},
      {"3 Gaussian expectation oracle", gaussian_oracle},
      {"4 isomorphism invariance", isomorphism},
      {"5 calibration", calibration},
      {"6 two-vertex inequality", prop4},
      {"7 Bessel identity", bessel},
      {"8 three-vertex double integral", remark4},
      {"9 monotonicity in k", conjecture},
      {"10 thread-count determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %s  (%.1fs)  %s\n", o.pass ? "PASS" : "FAIL", name, seconds, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::filesystem::remove_all(work_dir());
  return failures == 0 ? 0 : 1;
}
