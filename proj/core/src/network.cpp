#include "netgeo/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "netgeo/errors.hpp"

namespace netgeo {

namespace {

// Guards the n*n allocation against absurd headers.
constexpr int kMaxParsedVertices = 1 << 14;

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

int parse_int(std::string_view token, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

int parse_vertex_count(const Line& line) {
  if (line.tokens.size() != 1) {
    throw ParseError("header must contain only the vertex count", line.number);
  }
  int n = parse_int(line.tokens[0], line.number);
  if (n < 1) throw ParseError("vertex count must be positive", line.number);
  if (n > kMaxParsedVertices) {
    throw ParseError("vertex count exceeds " + std::to_string(kMaxParsedVertices), line.number);
  }
  return n;
}

Network parse_edge_list(const std::vector<Line>& lines) {
  const int n = parse_vertex_count(lines.front());
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != 2) {
      throw ParseError("edge line must contain exactly two vertex indices", line.number);
    }
    const int i = parse_int(line.tokens[0], line.number);
    const int j = parse_int(line.tokens[1], line.number);
    for (int v : {i, j}) {
      if (v < 1 || v > n) {
        throw ParseError("vertex index " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n),
                         line.number);
      }
    }
    if (i == j) {
      throw ParseError("self-loop on vertex " + std::to_string(i) + " is not allowed",
                       line.number);
    }
    adjacency[static_cast<std::size_t>(i - 1) * n + (j - 1)] = 1;
    adjacency[static_cast<std::size_t>(j - 1) * n + (i - 1)] = 1;
  }
  return Network(n, std::move(adjacency));
}

Network parse_adjacency_matrix(const std::vector<Line>& lines) {
  const int n = parse_vertex_count(lines.front());
  if (static_cast<int>(lines.size()) - 1 != n) {
    const int line = lines.size() > static_cast<std::size_t>(n) ? lines[static_cast<std::size_t>(n) + 1].number
                                                                  : lines.back().number;
    throw ParseError("expected " + std::to_string(n) + " matrix rows, got " +
                         std::to_string(lines.size() - 1),
                     line);
  }
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r) {
    const Line& line = lines[static_cast<std::size_t>(r) + 1];
    if (static_cast<int>(line.tokens.size()) != n) {
      throw ParseError("matrix row must contain " + std::to_string(n) + " entries", line.number);
    }
    for (int c = 0; c < n; ++c) {
      const int v = parse_int(line.tokens[static_cast<std::size_t>(c)], line.number);
      if (v != 0 && v != 1) throw ParseError("matrix entries must be 0 or 1", line.number);
      if (r == c && v != 0) {
        throw ParseError("self-loop on vertex " + std::to_string(r + 1) + " is not allowed",
                         line.number);
      }
      adjacency[static_cast<std::size_t>(r) * n + c] = static_cast<std::uint8_t>(v);
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      if (adjacency[static_cast<std::size_t>(r) * n + c] != adjacency[static_cast<std::size_t>(c) * n + r]) {
        throw ParseError("adjacency is not symmetric at (" + std::to_string(r + 1) + ", " +
                             std::to_string(c + 1) + ")",
                         lines[static_cast<std::size_t>(r) + 1].number);
      }
    }
  }
  return Network(n, std::move(adjacency));
}

}  // namespace

Network::Network(int n, std::vector<std::uint8_t> adjacency) : n_(n), adjacency_(std::move(adjacency)) {
  if (n < 1) throw std::invalid_argument("Network: vertex count must be positive");
  if (adjacency_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("Network: adjacency must have n*n entries");
  }
  for (int i = 0; i < n; ++i) {
    if (at(i, i) != 0) throw std::invalid_argument("Network: adjacency diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (at(i, j) > 1) throw std::invalid_argument("Network: adjacency entries must be 0 or 1");
      if (at(i, j) != at(j, i)) throw std::invalid_argument("Network: adjacency must be symmetric");
    }
  }
}

Network Network::empty(int n) {
  if (n < 1) throw std::invalid_argument("Network: vertex count must be positive");
  return Network(n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0));
}

Network Network::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 1) throw std::invalid_argument("Network: vertex count must be positive");
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("Network: edge endpoint out of range");
    if (i == j) throw std::invalid_argument("Network: self-loops are not allowed");
    adjacency[static_cast<std::size_t>(i) * n + j] = 1;
    adjacency[static_cast<std::size_t>(j) * n + i] = 1;
  }
  return Network(n, std::move(adjacency));
}

std::vector<std::pair<int, int>> Network::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

int Network::edge_count() const {
  return static_cast<int>(std::count(adjacency_.begin(), adjacency_.end(), std::uint8_t{1}) / 2);
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (int image : mapping_) {
    if (image < 0 || image >= static_cast<int>(mapping_.size()) || seen[static_cast<std::size_t>(image)]) {
      throw std::invalid_argument("Permutation: mapping is not a bijection");
    }
    seen[static_cast<std::size_t>(image)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> mapping(static_cast<std::size_t>(n));
  std::iota(mapping.begin(), mapping.end(), 0);
  return Permutation(std::move(mapping));
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> mapping(images.begin(), images.end());
  for (int& v : mapping) --v;
  return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[static_cast<std::size_t>(mapping_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("Permutation: size mismatch in composition");
  std::vector<int> out(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) out[i] = next(mapping_[i]);
  return Permutation(std::move(out));
}

bool ThetaPoint::all_positive() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

Network parse_network(std::string_view text, GraphFormat format) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("input is empty; expected a vertex count");
  return format == GraphFormat::kEdgeList ? parse_edge_list(lines) : parse_adjacency_matrix(lines);
}

Network read_network_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str(), format);
}

std::string to_edge_list(const Network& net) {
  std::ostringstream out;
  out << net.n() << '\n';
  for (auto [i, j] : net.edges()) out << (i + 1) << ' ' << (j + 1) << '\n';
  return out.str();
}

Network clique_network(int n, int m) {
  if (n < 1) throw std::invalid_argument("clique_network: n must be positive");
  if (m < 1 || m > n) throw std::out_of_range("clique_network: clique size must lie in 1..n");
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) adjacency[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  return Network(n, std::move(adjacency));
}

Network permute_network(const Network& net, const Permutation& p) {
  const int n = net.n();
  if (p.size() != n) throw std::invalid_argument("permute_network: permutation length differs from n");
  std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adjacency[static_cast<std::size_t>(p(i)) * n + p(j)] = net.at(i, j);
    }
  }
  return Network(n, std::move(adjacency));
}

bool verify_isomorphism(const Network& a, const Network& b, const Permutation& p) {
  if (a.n() != b.n() || p.size() != a.n()) {
    throw std::invalid_argument("verify_isomorphism: size mismatch");
  }
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a.at(i, j) != b.at(p(i), p(j))) return false;
    }
  }
  return true;
}

std::optional<Permutation> find_isomorphism_bruteforce(const Network& a, const Network& b) {
  if (a.n() != b.n()) return std::nullopt;
  const int n = a.n();
  if (n > kMaxBruteForceVertices) {
    throw SizeBoundError("isomorphism search is limited to n <= " + std::to_string(kMaxBruteForceVertices) +
                         " vertices (got " + std::to_string(n) + ")");
  }
  if (a.edge_count() != b.edge_count()) return std::nullopt;

  std::vector<int> degree_a(static_cast<std::size_t>(n), 0), degree_b(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      degree_a[static_cast<std::size_t>(i)] += a.at(i, j);
      degree_b[static_cast<std::size_t>(i)] += b.at(i, j);
    }
  }
  auto sorted_a = degree_a, sorted_b = degree_b;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return std::nullopt;

  std::vector<int> mapping(static_cast<std::size_t>(n));
  std::iota(mapping.begin(), mapping.end(), 0);
  do {
    bool degrees_match = true;
    for (int i = 0; i < n && degrees_match; ++i) {
      degrees_match = degree_a[static_cast<std::size_t>(i)] == degree_b[static_cast<std::size_t>(mapping[static_cast<std::size_t>(i)])];
    }
    if (!degrees_match) continue;
    Permutation candidate(mapping);
    if (verify_isomorphism(a, b, candidate)) return candidate;
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  return std::nullopt;
}

}  // namespace netgeo
