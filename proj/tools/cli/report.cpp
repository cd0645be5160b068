#include "report.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <vector>

namespace netgeo::cli {

namespace {

std::string format_number(double v, int digits) {
  if (!std::isfinite(v)) return "null";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
  return buffer;
}

struct Row {
  std::string network;
  int n = 0;
  int k = -1;  // table rows only
  double kappa = 0.0;
  VolumeEstimate volume;
  EntropyResult entropy;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

void write_json_row(std::ostream& out, const Row& row, const char* indent) {
  out << indent << "\"network\": " << json_string(row.network) << ",\n";
  out << indent << "\"n\": " << row.n << ",\n";
  if (row.k >= 0) out << indent << "\"k\": " << row.k << ",\n";
  out << indent << "\"kappa\": " << json_number(row.kappa) << ",\n";
  out << indent << "\"volume\": " << json_number(row.volume.value) << ",\n";
  out << indent << "\"volume_stderr\": " << json_number(row.volume.std_error) << ",\n";
  out << indent << "\"entropy\": " << json_number(row.entropy.entropy) << ",\n";
  out << indent << "\"entropy_stderr\": " << json_number(row.entropy.entropy_stderr) << ",\n";
  out << indent << "\"log_base\": " << json_string(std::string(to_string(row.entropy.log_base))) << ",\n";
  out << indent << "\"samples\": " << row.samples << ",\n";
  out << indent << "\"accepted_fraction\": " << json_number(row.volume.accepted_fraction) << ",\n";
  out << indent << "\"seed\": " << row.seed << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_csv(std::ostream& out, const std::vector<Row>& rows, bool with_k) {
  out << "network,n," << (with_k ? "k," : "")
      << "kappa,volume,volume_stderr,entropy,entropy_stderr,log_base,samples,accepted_fraction,seed\n";
  for (const Row& r : rows) {
    out << csv_field(r.network) << ',' << r.n << ',';
    if (with_k) out << r.k << ',';
    out << csv_number(r.kappa) << ',' << csv_number(r.volume.value) << ',' << csv_number(r.volume.std_error) << ','
        << csv_number(r.entropy.entropy) << ',' << csv_number(r.entropy.entropy_stderr) << ','
        << to_string(r.entropy.log_base) << ',' << r.samples << ',' << csv_number(r.volume.accepted_fraction) << ','
        << r.seed << '\n';
  }
}

}  // namespace

std::string json_number(double v) { return format_number(v, 17); }
std::string csv_number(double v) { return format_number(v, 6); }
std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_entropy_report(std::ostream& out, const EntropyReport& report, OutputFormat format) {
  Row row{report.network, report.n, -1, report.kappa.kappa, report.volume, report.entropy, report.samples, report.seed};
  switch (format) {
    case OutputFormat::kJson:
      out << "{\n";
      write_json_row(out, row, "  ");
      out << "}\n";
      break;
    case OutputFormat::kCsv:
      write_csv(out, {row}, false);
      break;
    case OutputFormat::kPlain: {
      char line[256];
      out << "network          " << report.network << '\n';
      out << "vertices         " << report.n << '\n';
      std::snprintf(line, sizeof line, "kappa            %.6f +/- %.2e\n", report.kappa.kappa, report.kappa.kappa_stderr);
      out << line;
      std::snprintf(line, sizeof line, "volume           %.6f +/- %.2e\n", report.volume.value, report.volume.std_error);
      out << line;
      std::snprintf(line, sizeof line, "entropy (log %s)  %.6f +/- %.2e\n",
                    std::string(to_string(report.entropy.log_base)).c_str(), report.entropy.entropy,
                    report.entropy.entropy_stderr);
      out << line;
      std::snprintf(line, sizeof line, "accepted         %.4f of %lld samples (seed %llu)\n",
                    report.volume.accepted_fraction, static_cast<long long>(report.samples),
                    static_cast<unsigned long long>(report.seed));
      out << line;
      break;
    }
  }
}

void write_table_report(std::ostream& out, const SimplexTable& table, int n, std::int64_t samples,
                        std::uint64_t seed, LogBase base, OutputFormat format) {
  std::vector<Row> rows;
  for (const SimplexRow& r : table.rows) {
    rows.push_back(Row{"simplex-" + std::to_string(r.k), n, r.k, table.kappa.kappa, r.volume, r.entropy, samples, seed});
  }
  switch (format) {
    case OutputFormat::kJson:
      out << "{\n";
      out << "  \"n\": " << n << ",\n";
      out << "  \"kappa\": " << json_number(table.kappa.kappa) << ",\n";
      out << "  \"kappa_stderr\": " << json_number(table.kappa.kappa_stderr) << ",\n";
      out << "  \"log_base\": " << json_string(std::string(to_string(base))) << ",\n";
      out << "  \"samples\": " << samples << ",\n";
      out << "  \"seed\": " << seed << ",\n";
      out << "  \"rows\": [\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "    {\n";
        write_json_row(out, rows[i], "      ");
        out << "    }" << (i + 1 < rows.size() ? "," : "") << '\n';
      }
      out << "  ]\n}\n";
      break;
    case OutputFormat::kCsv:
      write_csv(out, rows, true);
      break;
    case OutputFormat::kPlain: {
      char line[256];
      std::snprintf(line, sizeof line, "# n = %d, kappa = %.6f +/- %.2e, %lld samples per row, seed %llu\n", n,
                    table.kappa.kappa, table.kappa.kappa_stderr, static_cast<long long>(samples),
                    static_cast<unsigned long long>(seed));
      out << line;
      out << "#  k    volume     stderr    entropy    stderr\n";
      for (const SimplexRow& r : table.rows) {
        std::snprintf(line, sizeof line, "  %2d  %9.6f  %9.2e  %9.6f  %9.2e\n", r.k, r.volume.value, r.volume.std_error,
                      r.entropy.entropy, r.entropy.entropy_stderr);
        out << line;
      }
      out << "\n\n# k entropy (log " << to_string(base) << ")\n";
      for (const SimplexRow& r : table.rows) {
        std::snprintf(line, sizeof line, "%d %.6f\n", r.k, r.entropy.entropy);
        out << line;
      }
      break;
    }
  }
}

void write_kappa_report(std::ostream& out, const KappaRecord& record, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      out << "{\n";
      out << "  \"n\": " << record.n << ",\n";
      out << "  \"kappa\": " << json_number(record.kappa) << ",\n";
      out << "  \"kappa_stderr\": " << json_number(record.kappa_stderr) << ",\n";
      out << "  \"samples\": " << record.samples << ",\n";
      out << "  \"seed\": " << record.seed << "\n";
      out << "}\n";
      break;
    case OutputFormat::kCsv:
      out << "n,kappa,kappa_stderr,samples,seed\n";
      out << record.n << ',' << csv_number(record.kappa) << ',' << csv_number(record.kappa_stderr) << ','
          << record.samples << ',' << record.seed << '\n';
      break;
    case OutputFormat::kPlain: {
      char line[160];
      std::snprintf(line, sizeof line, "%d %.17g %.17g %lld %llu\n", record.n, record.kappa, record.kappa_stderr,
                    static_cast<long long>(record.samples), static_cast<unsigned long long>(record.seed));
      out << line;
      break;
    }
  }
}

}  // namespace netgeo::cli
