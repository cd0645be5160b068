#include "netgeo/kappa_cache.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netgeo {

namespace {

template <typename T>
bool parse_number(const std::string& token, T& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

std::optional<KappaRecord> KappaCache::parse_line(const std::string& line) {
  std::istringstream in(line);
  std::string tokens[5];
  for (auto& t : tokens) {
    if (!(in >> t)) return std::nullopt;
  }
  std::string extra;
  if (in >> extra) return std::nullopt;

  KappaRecord r;
  if (!parse_number(tokens[0], r.n) || !parse_number(tokens[1], r.kappa) ||
      !parse_number(tokens[2], r.kappa_stderr) || !parse_number(tokens[3], r.samples) ||
      !parse_number(tokens[4], r.seed)) {
    return std::nullopt;
  }
  if (r.n < 1 || r.samples < 1 || !std::isfinite(r.kappa) || !std::isfinite(r.kappa_stderr) ||
      r.kappa_stderr < 0.0) {
    return std::nullopt;
  }
  return r;
}

std::string KappaCache::format_line(const KappaRecord& r) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "%d %.17g %.17g %lld %llu", r.n, r.kappa, r.kappa_stderr,
                static_cast<long long>(r.samples), static_cast<unsigned long long>(r.seed));
  return buffer;
}

KappaCache::LoadResult KappaCache::load() {
  records_.clear();
  if (path_.empty() || !std::filesystem::exists(path_)) return {};
  std::ifstream in(path_);
  if (!in) return {false, "cannot read kappa cache '" + path_ + "'"};

  std::vector<KappaRecord> loaded;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto record = parse_line(line);
    if (!record) {
      return {false, "kappa cache '" + path_ + "' line " + std::to_string(number) + " is malformed"};
    }
    loaded.push_back(*record);
  }
  records_ = std::move(loaded);
  return {};
}

void KappaCache::save() const {
  if (path_.empty()) return;
  const std::filesystem::path target(path_);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write kappa cache '" + path_ + "'");
    out << "# n kappa kappa_stderr samples seed\n";
    for (const auto& r : records_) out << format_line(r) << '\n';
  }
  std::filesystem::rename(tmp, target);
}

std::optional<KappaRecord> KappaCache::find(int n, std::int64_t samples, std::uint64_t seed) const {
  for (const auto& r : records_) {
    if (r.n == n && r.samples == samples && r.seed == seed) return r;
  }
  return std::nullopt;
}

void KappaCache::put(const KappaRecord& record) {
  for (auto& r : records_) {
    if (r.n == record.n && r.samples == record.samples && r.seed == record.seed) {
      r = record;
      return;
    }
  }
  records_.push_back(record);
}

}  // namespace netgeo
