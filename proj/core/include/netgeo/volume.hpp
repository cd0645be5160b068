#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "netgeo/linalg.hpp"
#include "netgeo/network.hpp"

namespace netgeo {

enum class Sampler { kPseudoRandom, kLowDiscrepancy };
enum class LogBase { kNatural, kBase2 };

std::string_view to_string(Sampler sampler);
std::string_view to_string(LogBase base);

// Number of digit-scrambled replicates behind a low-discrepancy estimate.
inline constexpr int kQmcReplicates = 8;

struct McConfig {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::int64_t chunk_size = 1 << 15;
  Sampler sampler = Sampler::kPseudoRandom;
  // Worker cap. Results do not depend on it.
  int threads = 1;

  void validate() const;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples_total = 0;
  double accepted_fraction = 0.0;
  double kappa_used = 0.0;
};

struct EntropyResult {
  double entropy = 0.0;
  double entropy_stderr = 0.0;
  LogBase log_base = LogBase::kBase2;
};

struct KappaRecord {
  int n = 0;
  double kappa = 0.0;
  double kappa_stderr = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// exp[kappa - Tr c] * log[1 + det(c)^n], evaluated literally.
double upsilon(const SymMatrix& c, int n, double kappa);

// Importance-sampled estimate of the regularized volume. Proposals have
// i.i.d. unit-exponential coordinates, whose density exp(-sum theta) is
// exactly exp(-Tr C(theta)); points outside the PD region contribute 0.
//
// Chunk c draws from a stream seeded by derive_seed(cfg.seed, c) and chunk
// partials are reduced in chunk order, so the result is bit-identical for
// any cfg.threads.
VolumeEstimate estimate_volume(const Network& net, double kappa, const McConfig& cfg);

// kappa(n) = -ln I0(n), I0 the kappa = 0 volume of the empty n-vertex network.
// Throws NumericalError if the I0 estimate is not strictly positive.
KappaRecord calibrate_kappa(int n, const McConfig& cfg);

// Throws NumericalError for a non-positive volume.
EntropyResult entropy(const VolumeEstimate& v, LogBase base);

struct SimplexRow {
  int k = 0;  // simplex dimension: clique on k + 1 vertices
  VolumeEstimate volume;
  EntropyResult entropy;
};

struct SimplexTable {
  KappaRecord kappa;
  std::vector<SimplexRow> rows;
};

// Stream seed used for row k of a simplex table; calibration uses cfg.seed.
std::uint64_t simplex_row_seed(std::uint64_t seed, int k);

// Rows k = 0..n-1 for clique_network(n, k + 1). Calibrates kappa(n) unless
// `kappa` is supplied (it must then be for the same n). Row 0 is an
// independent re-estimate of the empty network, i.e. the calibration check.
SimplexTable simplex_table(int n, const McConfig& cfg, LogBase base = LogBase::kBase2,
                           std::optional<KappaRecord> kappa = std::nullopt);

struct MonotonicityStep {
  int k = 0;            // compares rows k and k + 1
  double margin = 0.0;  // V_k - V_{k+1}
  double sigmas = 0.0;  // margin / combined standard error
};

std::vector<MonotonicityStep> monotonicity_check(const SimplexTable& table);
std::vector<MonotonicityStep> monotonicity_check(int n, const McConfig& cfg);

}  // namespace netgeo
