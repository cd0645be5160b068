#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netgeo/volume.hpp"

namespace netgeo {

// Persistent kappa records, one per line: "n kappa kappa_stderr samples seed".
// Blank lines and '#' comments are ignored. Any other malformed line makes
// the whole file invalid.
class KappaCache {
 public:
  KappaCache() = default;
  explicit KappaCache(std::string path) : path_(std::move(path)) {}

  struct LoadResult {
    bool ok = true;
    std::string error;  // set when !ok
  };

  // Missing file is an empty, valid cache. On a malformed file the cache is
  // left empty and the problem is reported.
  LoadResult load();
  // Rewrites the whole file; creates parent directories.
  void save() const;

  std::optional<KappaRecord> find(int n, std::int64_t samples, std::uint64_t seed) const;
  void put(const KappaRecord& record);

  const std::string& path() const noexcept { return path_; }
  const std::vector<KappaRecord>& records() const noexcept { return records_; }

  static std::optional<KappaRecord> parse_line(const std::string& line);
  static std::string format_line(const KappaRecord& record);

 private:
  std::string path_;
  std::vector<KappaRecord> records_;
};

}  // namespace netgeo
