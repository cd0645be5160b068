#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "netgeo/volume.hpp"

namespace netgeo::cli {

enum class OutputFormat { kJson, kCsv, kPlain };

struct EntropyReport {
  std::string network;
  int n = 0;
  KappaRecord kappa;
  VolumeEstimate volume;
  EntropyResult entropy;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// JSON numbers use 17 significant digits, CSV numbers 6.
std::string json_number(double v);
std::string csv_number(double v);
std::string json_string(const std::string& s);

void write_entropy_report(std::ostream& out, const EntropyReport& report, OutputFormat format);
void write_table_report(std::ostream& out, const SimplexTable& table, int n, std::int64_t samples,
                        std::uint64_t seed, LogBase base, OutputFormat format);
void write_kappa_report(std::ostream& out, const KappaRecord& record, OutputFormat format);

}  // namespace netgeo::cli
