#include "netgeo/volume.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "netgeo/errors.hpp"
#include "netgeo/fisher.hpp"
#include "netgeo/sampling.hpp"

namespace netgeo {

namespace {

struct ChunkStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t accepted = 0;
};

void merge_into(ChunkStats& total, const ChunkStats& part) {
  if (part.count == 0) return;
  const auto n_a = static_cast<double>(total.count);
  const auto n_b = static_cast<double>(part.count);
  const double n = n_a + n_b;
  const double delta = part.mean - total.mean;
  total.mean += delta * n_b / n;
  total.m2 += part.m2 + delta * delta * n_a * n_b / n;
  total.count += part.count;
  total.accepted += part.accepted;
}

// Runs `body(chunk_index)` for every chunk on up to `threads` workers.
// Results must be written to per-chunk slots by the body.
template <typename Body>
void for_each_chunk(std::int64_t chunks, int threads, Body&& body) {
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(1, chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t c = next++; c < chunks; c = next++) body(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

VolumeEstimate estimate_pseudo_random(const Network& net, double kappa, const McConfig& cfg) {
  const int n = net.n();
  const std::int64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<ChunkStats> partials(static_cast<std::size_t>(chunks));

  for_each_chunk(chunks, cfg.threads, [&](std::int64_t c) {
    IntegrandEvaluator evaluate(net);
    std::mt19937_64 engine(derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
    std::vector<double> theta(static_cast<std::size_t>(n));
    const std::int64_t begin = c * cfg.chunk_size;
    const std::int64_t end = std::min(cfg.samples, begin + cfg.chunk_size);

    ChunkStats stats;
    for (std::int64_t s = begin; s < end; ++s) {
      for (double& t : theta) t = exponential_from_uniform(to_unit_interval(engine()));
      const IntegrandCore core = evaluate(theta);
      if (core.in_domain) ++stats.accepted;
      ++stats.count;
      const double delta = core.value - stats.mean;
      stats.mean += delta / static_cast<double>(stats.count);
      stats.m2 += delta * (core.value - stats.mean);
    }
    partials[static_cast<std::size_t>(c)] = stats;
  });

  ChunkStats total;
  for (const auto& part : partials) merge_into(total, part);

  const double scale = std::exp(kappa);
  const auto count = static_cast<double>(total.count);
  VolumeEstimate out;
  out.value = scale * total.mean;
  out.std_error = total.count > 1 ? scale * std::sqrt(total.m2 / (count - 1.0) / count) : 0.0;
  out.samples_total = total.count;
  out.accepted_fraction = static_cast<double>(total.accepted) / count;
  out.kappa_used = kappa;
  return out;
}

VolumeEstimate estimate_low_discrepancy(const Network& net, double kappa, const McConfig& cfg) {
  const int n = net.n();
  constexpr int R = kQmcReplicates;
  std::vector<std::int64_t> bounds(R + 1);
  for (int r = 0; r <= R; ++r) bounds[static_cast<std::size_t>(r)] = cfg.samples * r / R;

  std::vector<ScrambledHalton> sequences;
  sequences.reserve(R);
  for (int r = 0; r < R; ++r) sequences.emplace_back(n, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));

  struct Partial {
    std::array<double, R> sum{};
    std::int64_t accepted = 0;
  };
  const std::int64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<Partial> partials(static_cast<std::size_t>(chunks));

  for_each_chunk(chunks, cfg.threads, [&](std::int64_t c) {
    IntegrandEvaluator evaluate(net);
    std::vector<double> theta(static_cast<std::size_t>(n));
    const std::int64_t begin = c * cfg.chunk_size;
    const std::int64_t end = std::min(cfg.samples, begin + cfg.chunk_size);
    int r = static_cast<int>(std::upper_bound(bounds.begin(), bounds.end(), begin) - bounds.begin()) - 1;

    Partial part;
    for (std::int64_t i = begin; i < end; ++i) {
      while (i >= bounds[static_cast<std::size_t>(r) + 1]) ++r;
      sequences[static_cast<std::size_t>(r)].point(static_cast<std::uint64_t>(i - bounds[static_cast<std::size_t>(r)]), theta);
      for (double& t : theta) t = exponential_from_uniform(t);
      const IntegrandCore core = evaluate(theta);
      if (core.in_domain) ++part.accepted;
      part.sum[static_cast<std::size_t>(r)] += core.value;
    }
    partials[static_cast<std::size_t>(c)] = part;
  });

  std::array<double, R> sums{};
  std::int64_t accepted = 0;
  for (const auto& part : partials) {
    for (int r = 0; r < R; ++r) sums[static_cast<std::size_t>(r)] += part.sum[static_cast<std::size_t>(r)];
    accepted += part.accepted;
  }
  double mean = 0.0;
  std::array<double, R> means{};
  for (int r = 0; r < R; ++r) {
    const auto size = static_cast<double>(bounds[static_cast<std::size_t>(r) + 1] - bounds[static_cast<std::size_t>(r)]);
    means[static_cast<std::size_t>(r)] = sums[static_cast<std::size_t>(r)] / size;
    mean += means[static_cast<std::size_t>(r)];
  }
  mean /= R;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (R - 1);

  const double scale = std::exp(kappa);
  VolumeEstimate out;
  out.value = scale * mean;
  out.std_error = scale * std::sqrt(var / R);
  out.samples_total = cfg.samples;
  out.accepted_fraction = static_cast<double>(accepted) / static_cast<double>(cfg.samples);
  out.kappa_used = kappa;
  return out;
}

}  // namespace

std::string_view to_string(Sampler sampler) {
  return sampler == Sampler::kPseudoRandom ? "mc" : "qmc";
}

std::string_view to_string(LogBase base) { return base == LogBase::kBase2 ? "2" : "e"; }

void McConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("McConfig: samples must be positive");
  if (chunk_size < 1) throw std::invalid_argument("McConfig: chunk_size must be positive");
  if (sampler == Sampler::kLowDiscrepancy && samples < 2 * kQmcReplicates) {
    throw std::invalid_argument("McConfig: low-discrepancy sampling needs at least " +
                                std::to_string(2 * kQmcReplicates) + " samples");
  }
  if (threads < 1) throw std::invalid_argument("McConfig: threads must be positive");
}

double upsilon(const SymMatrix& c, int n, double kappa) {
  if (c.n() != n) throw std::invalid_argument("upsilon: matrix dimension differs from n");
  return std::exp(kappa - c.trace()) * std::log1p(std::pow(determinant(c), n));
}

VolumeEstimate estimate_volume(const Network& net, double kappa, const McConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(kappa)) throw std::invalid_argument("estimate_volume: kappa must be finite");
  return cfg.sampler == Sampler::kPseudoRandom ? estimate_pseudo_random(net, kappa, cfg)
                                               : estimate_low_discrepancy(net, kappa, cfg);
}

KappaRecord calibrate_kappa(int n, const McConfig& cfg) {
  if (n < 1) throw std::invalid_argument("calibrate_kappa: n must be positive");
  const VolumeEstimate base = estimate_volume(Network::empty(n), 0.0, cfg);
  if (!(base.value > 0.0)) {
    throw NumericalError("calibrate_kappa: empty-network volume estimate is not positive (n = " +
                         std::to_string(n) + ", samples = " + std::to_string(cfg.samples) + ")");
  }
  KappaRecord record;
  record.n = n;
  record.kappa = -std::log(base.value);
  record.kappa_stderr = base.std_error / base.value;
  record.samples = cfg.samples;
  record.seed = cfg.seed;
  return record;
}

EntropyResult entropy(const VolumeEstimate& v, LogBase base) {
  if (!(v.value > 0.0)) throw NumericalError("entropy: volume must be positive");
  const double ln_base = base == LogBase::kBase2 ? std::log(2.0) : 1.0;
  EntropyResult out;
  out.entropy = -std::log(v.value) / ln_base;
  out.entropy_stderr = v.std_error / (v.value * ln_base);
  out.log_base = base;
  return out;
}

std::uint64_t simplex_row_seed(std::uint64_t seed, int k) {
  return derive_seed(seed, 0x5155000000000000ULL + static_cast<std::uint64_t>(k));
}

SimplexTable simplex_table(int n, const McConfig& cfg, LogBase base, std::optional<KappaRecord> kappa) {
  if (n < 1) throw std::invalid_argument("simplex_table: n must be positive");
  if (kappa && kappa->n != n) throw std::invalid_argument("simplex_table: kappa record is for a different n");
  SimplexTable table;
  table.kappa = kappa ? *kappa : calibrate_kappa(n, cfg);
  for (int k = 0; k < n; ++k) {
    McConfig row_cfg = cfg;
    row_cfg.seed = simplex_row_seed(cfg.seed, k);
    SimplexRow row;
    row.k = k;
    row.volume = estimate_volume(clique_network(n, k + 1), table.kappa.kappa, row_cfg);
    row.entropy = entropy(row.volume, base);
    table.rows.push_back(row);
  }
  return table;
}

std::vector<MonotonicityStep> monotonicity_check(const SimplexTable& table) {
  std::vector<MonotonicityStep> steps;
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const VolumeEstimate& a = table.rows[i].volume;
    const VolumeEstimate& b = table.rows[i + 1].volume;
    MonotonicityStep step;
    step.k = table.rows[i].k;
    step.margin = a.value - b.value;
    const double combined = std::hypot(a.std_error, b.std_error);
    step.sigmas = combined > 0.0 ? step.margin / combined : (step.margin > 0.0 ? INFINITY : -INFINITY);
    steps.push_back(step);
  }
  return steps;
}

std::vector<MonotonicityStep> monotonicity_check(int n, const McConfig& cfg) {
  if (n < 2) throw std::invalid_argument("monotonicity_check: n must be at least 2");
  return monotonicity_check(simplex_table(n, cfg));
}

}  // namespace netgeo
