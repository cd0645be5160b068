#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "netgeo/errors.hpp"
#include "netgeo/sampling.hpp"
#include "verify.hpp"

namespace netgeo::cli {

namespace {

std::string display_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

// Usage and argument errors share the parse-error exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int require_n(const RunConfig& cfg) {
  if (!cfg.n) throw UsageError("--n is required for this command");
  if (*cfg.n < 1) throw UsageError("--n must be positive");
  return *cfg.n;
}

}  // namespace

std::int64_t RunConfig::effective_samples() const {
  if (samples) return *samples;
  return command == Command::kVerify ? kDefaultVerifySamples : kDefaultSamples;
}

McConfig RunConfig::mc_config() const {
  McConfig mc;
  mc.samples = effective_samples();
  mc.seed = seed;
  mc.chunk_size = std::min<std::int64_t>(kDefaultChunkSize, mc.samples);
  mc.sampler = sampler;
  mc.threads = threads;
  return mc;
}

std::string resolve_kappa_cache_path(const RunConfig& cfg) {
  if (cfg.kappa_cache_path) return *cfg.kappa_cache_path;
  if (const char* env = std::getenv(kKappaCacheEnv); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return (std::filesystem::path(xdg) / "netgeo" / "kappa.txt").string();
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return (std::filesystem::path(home) / ".cache" / "netgeo" / "kappa.txt").string();
  }
  return {};
}

KappaRecord obtain_kappa(int n, const RunConfig& cfg, std::ostream& err) {
  const McConfig mc = cfg.mc_config();
  // The cache key has no sampler field; low-discrepancy runs always calibrate.
  if (cfg.sampler != Sampler::kPseudoRandom) return calibrate_kappa(n, mc);

  KappaCache cache(resolve_kappa_cache_path(cfg));
  if (cache.path().empty()) return calibrate_kappa(n, mc);

  if (auto loaded = cache.load(); !loaded.ok) {
    err << "warning: " << loaded.error << "; cache rejected, recalibrating\n";
  } else if (!cfg.recalibrate) {
    if (auto hit = cache.find(n, mc.samples, mc.seed)) return *hit;
  }
  const KappaRecord record = calibrate_kappa(n, mc);
  cache.put(record);
  try {
    cache.save();
  } catch (const std::exception& e) {
    err << "warning: could not update kappa cache: " << e.what() << '\n';
  }
  return record;
}

std::uint64_t volume_seed(std::uint64_t seed, std::uint64_t stream) {
  return derive_seed(seed, 0x766f6c0000000000ULL + stream);
}

int run_entropy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.input_path) throw UsageError("entropy needs an input graph file");
  const Network net = read_network_file(*cfg.input_path, cfg.graph_format);
  const KappaRecord kappa = obtain_kappa(net.n(), cfg, err);

  McConfig mc = cfg.mc_config();
  mc.seed = volume_seed(cfg.seed);
  EntropyReport report;
  report.network = display_name(*cfg.input_path);
  report.n = net.n();
  report.kappa = kappa;
  report.volume = estimate_volume(net, kappa.kappa, mc);
  report.entropy = entropy(report.volume, cfg.log_base);
  report.samples = mc.samples;
  report.seed = cfg.seed;
  write_entropy_report(out, report, cfg.output_format);
  return kExitOk;
}

int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int n = require_n(cfg);
  const KappaRecord kappa = obtain_kappa(n, cfg, err);
  const McConfig mc = cfg.mc_config();
  const SimplexTable table = simplex_table(n, mc, cfg.log_base, kappa);
  write_table_report(out, table, n, mc.samples, cfg.seed, cfg.log_base, cfg.output_format);
  return kExitOk;
}

int run_kappa(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int n = require_n(cfg);
  write_kappa_report(out, obtain_kappa(n, cfg, err), cfg.output_format);
  return kExitOk;
}

int run_iso_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.input_path || !cfg.second_input_path) throw UsageError("iso-check needs two graph files");
  const Network a = read_network_file(*cfg.input_path, cfg.graph_format);
  const Network b = read_network_file(*cfg.second_input_path, cfg.graph_format);
  for (int n : {a.n(), b.n()}) {
    if (n > kMaxBruteForceVertices) {
      throw SizeBoundError("iso-check searches exhaustively and is limited to n <= " +
                           std::to_string(kMaxBruteForceVertices) + " (got " + std::to_string(n) + ")");
    }
  }
  std::optional<Permutation> found;
  if (a.n() == b.n()) found = find_isomorphism_bruteforce(a, b);

  std::optional<EntropyReport> ra, rb;
  double sigmas = 0.0;
  if (found) {
    const KappaRecord kappa = obtain_kappa(a.n(), cfg, err);
    McConfig mc = cfg.mc_config();
    auto estimate = [&](const Network& net, const std::string& path, std::uint64_t stream) {
      mc.seed = volume_seed(cfg.seed, stream);
      EntropyReport r;
      r.network = display_name(path);
      r.n = net.n();
      r.kappa = kappa;
      r.volume = estimate_volume(net, kappa.kappa, mc);
      r.entropy = entropy(r.volume, cfg.log_base);
      r.samples = mc.samples;
      r.seed = cfg.seed;
      return r;
    };
    ra = estimate(a, *cfg.input_path, 0);
    rb = estimate(b, *cfg.second_input_path, 1);
    const double combined = std::hypot(ra->entropy.entropy_stderr, rb->entropy.entropy_stderr);
    sigmas = combined > 0.0 ? std::abs(ra->entropy.entropy - rb->entropy.entropy) / combined : 0.0;
  }

  std::string mapping;
  if (found) {
    for (int i = 0; i < found->size(); ++i) mapping += (i ? ", " : "") + std::to_string((*found)(i) + 1);
  }
  const bool agree = !found || sigmas <= 3.0;
  switch (cfg.output_format) {
    case OutputFormat::kJson:
      out << "{\n  \"isomorphic\": " << (found ? "true" : "false");
      if (found) {
        out << ",\n  \"permutation\": [" << mapping << "]";
        out << ",\n  \"entropy_a\": " << json_number(ra->entropy.entropy);
        out << ",\n  \"entropy_a_stderr\": " << json_number(ra->entropy.entropy_stderr);
        out << ",\n  \"entropy_b\": " << json_number(rb->entropy.entropy);
        out << ",\n  \"entropy_b_stderr\": " << json_number(rb->entropy.entropy_stderr);
        out << ",\n  \"sigmas\": " << json_number(sigmas);
        out << ",\n  \"entropies_agree\": " << (agree ? "true" : "false");
      }
      out << "\n}\n";
      break;
    case OutputFormat::kCsv:
      out << "isomorphic,permutation,entropy_a,entropy_a_stderr,entropy_b,entropy_b_stderr,sigmas\n";
      out << (found ? "true" : "false") << ",\"" << mapping << "\",";
      if (found) {
        out << csv_number(ra->entropy.entropy) << ',' << csv_number(ra->entropy.entropy_stderr) << ','
            << csv_number(rb->entropy.entropy) << ',' << csv_number(rb->entropy.entropy_stderr) << ','
            << csv_number(sigmas);
      } else {
        out << ",,,,";
      }
      out << '\n';
      break;
    case OutputFormat::kPlain:
      if (!found) {
        out << "not isomorphic\n";
        break;
      }
      out << "isomorphic\n";
      out << "permutation      " << mapping << " (vertex i of the first graph is the i-th listed vertex of the second)\n";
      out << "entropy a        " << ra->entropy.entropy << " +/- " << ra->entropy.entropy_stderr << '\n';
      out << "entropy b        " << rb->entropy.entropy << " +/- " << rb->entropy.entropy_stderr << '\n';
      out << "difference       " << sigmas << " sigma (" << (agree ? "agree" : "DISAGREE") << ")\n";
      break;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-geometric complexity entropy of networks", "netgeo"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::int64_t samples = 0;
  std::string sampler = "mc";
  std::string log_base = "2";
  std::string format = "json";
  std::string graph_format = "edges";
  std::string path_a, path_b;
  int n = 0;

  app.add_option("--n", n, "Vertex count (table, kappa)");
  app.add_option("--samples", samples, "Monte Carlo proposals per estimate")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--sampler", sampler, "mc (pseudo-random) or qmc (scrambled Halton)")
      ->check(CLI::IsMember({"mc", "qmc"}))
      ->capture_default_str();
  app.add_option("--log-base", log_base, "Entropy logarithm base")
      ->check(CLI::IsMember({"2", "e"}))
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_option("--input-format", graph_format, "Graph file format")
      ->check(CLI::IsMember({"edges", "matrix"}))
      ->capture_default_str();
  app.add_option("--kappa-cache", cfg.kappa_cache_path, "Kappa cache file (overrides NETGEO_KAPPA_CACHE)");
  app.add_flag("--recalibrate", cfg.recalibrate, "Ignore cached kappa values");
  app.add_option("--threads", cfg.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* entropy_cmd = app.add_subcommand("entropy", "Volume and entropy of a graph file");
  entropy_cmd->add_option("graph", path_a, "Graph file")->required();
  auto* table_cmd = app.add_subcommand("table", "Volume/entropy table of k-simplexes on n vertices");
  auto* kappa_cmd = app.add_subcommand("kappa", "Calibrate (or look up) kappa(n)");
  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical verification suites");
  auto* iso_cmd = app.add_subcommand("iso-check", "Search an isomorphism and compare entropies");
  iso_cmd->add_option("graph_a", path_a, "First graph file")->required();
  iso_cmd->add_option("graph_b", path_b, "Second graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  if (app.got_subcommand(entropy_cmd)) cfg.command = Command::kEntropy;
  if (app.got_subcommand(table_cmd)) cfg.command = Command::kTable;
  if (app.got_subcommand(kappa_cmd)) cfg.command = Command::kKappa;
  if (app.got_subcommand(verify_cmd)) cfg.command = Command::kVerify;
  if (app.got_subcommand(iso_cmd)) cfg.command = Command::kIsoCheck;

  if (app.count("--n") > 0) cfg.n = n;
  if (app.count("--samples") > 0) cfg.samples = samples;
  cfg.sampler = sampler == "qmc" ? Sampler::kLowDiscrepancy : Sampler::kPseudoRandom;
  cfg.log_base = log_base == "e" ? LogBase::kNatural : LogBase::kBase2;
  cfg.output_format = format == "csv" ? OutputFormat::kCsv : format == "plain" ? OutputFormat::kPlain : OutputFormat::kJson;
  cfg.graph_format = graph_format == "matrix" ? GraphFormat::kAdjacencyMatrix : GraphFormat::kEdgeList;
  if (!path_a.empty()) cfg.input_path = path_a;
  if (!path_b.empty()) cfg.second_input_path = path_b;

  try {
    switch (cfg.command) {
      case Command::kEntropy:
        return run_entropy(cfg, out, err);
      case Command::kTable:
        return run_table(cfg, out, err);
      case Command::kKappa:
        return run_kappa(cfg, out, err);
      case Command::kVerify:
        return run_verify(cfg, out, err);
      case Command::kIsoCheck:
        return run_iso_check(cfg, out, err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const SizeBoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeBound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalError;
  }
  return kExitOk;
}

}  // namespace netgeo::cli
