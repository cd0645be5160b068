#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "netgeo/kappa_cache.hpp"
#include "netgeo/network.hpp"
#include "netgeo/volume.hpp"
#include "report.hpp"

namespace netgeo::cli {

enum class Command { kEntropy, kTable, kKappa, kVerify, kIsoCheck };

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitParseError = 2,
  kExitNumericalError = 3,
  kExitSizeBound = 4,
};

inline constexpr std::int64_t kDefaultSamples = 20'000'000;
inline constexpr std::int64_t kDefaultVerifySamples = 400'000;
inline constexpr std::int64_t kDefaultChunkSize = 1 << 15;
inline constexpr const char* kKappaCacheEnv = "NETGEO_KAPPA_CACHE";

struct RunConfig {
  Command command = Command::kEntropy;
  std::optional<std::string> input_path;
  std::optional<std::string> second_input_path;  // iso-check
  GraphFormat graph_format = GraphFormat::kEdgeList;
  std::optional<int> n;
  std::optional<std::int64_t> samples;  // command default when unset
  std::uint64_t seed = 42;
  Sampler sampler = Sampler::kPseudoRandom;
  LogBase log_base = LogBase::kBase2;
  OutputFormat output_format = OutputFormat::kJson;
  std::optional<std::string> kappa_cache_path;  // flag; falls back to env, then default
  bool recalibrate = false;
  int threads = 1;

  std::int64_t effective_samples() const;
  McConfig mc_config() const;
};

// Flag > NETGEO_KAPPA_CACHE > $XDG_CACHE_HOME/netgeo/kappa.txt > ~/.cache/netgeo/kappa.txt.
// Empty when none of them is available (caching disabled).
std::string resolve_kappa_cache_path(const RunConfig& cfg);

// kappa(n) from the cache when allowed, otherwise calibrated (and stored).
// A corrupt cache is reported on `err` and replaced.
KappaRecord obtain_kappa(int n, const RunConfig& cfg, std::ostream& err);

// Seed of the volume run that follows calibration.
std::uint64_t volume_seed(std::uint64_t seed, std::uint64_t stream = 0);

int run_entropy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_kappa(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_iso_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; maps exceptions to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netgeo::cli
