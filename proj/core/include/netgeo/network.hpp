#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netgeo {

// Simple undirected network on vertices 0..n-1 with a 0/1 symmetric
// adjacency and zero diagonal. Immutable once constructed.
//
// Indices are 0-based in the API; every text format and diagnostic uses
// 1-based vertex labels.
class Network {
 public:
  // Validates symmetry, zero diagonal and 0/1 entries of a row-major n*n grid.
  Network(int n, std::vector<std::uint8_t> adjacency);

  static Network empty(int n);
  // Edges given as 0-based pairs; duplicates collapse, self-loops throw.
  static Network from_edges(int n, std::span<const std::pair<int, int>> edges);

  int n() const noexcept { return n_; }
  bool adjacent(int i, int j) const { return adjacency_[index(i, j)] != 0; }
  std::uint8_t at(int i, int j) const { return adjacency_[index(i, j)]; }
  std::span<const std::uint8_t> adjacency() const noexcept { return adjacency_; }

  // Sorted 0-based (i, j) pairs with i < j.
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_;
  std::vector<std::uint8_t> adjacency_;
};

// Bijection on {0..n-1}: vertex i is relabelled mapping()[i].
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);

  static Permutation identity(int n);
  // From 1-based images, e.g. {2, 3, 1} is the cycle 1->2->3->1.
  static Permutation from_one_based(std::span<const int> images);

  int size() const noexcept { return static_cast<int>(mapping_.size()); }
  int operator()(int i) const { return mapping_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& mapping() const noexcept { return mapping_; }

  Permutation inverse() const;
  // (a.then(b))(i) == b(a(i)).
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

// A point of the parameter space: one variance per vertex.
class ThetaPoint {
 public:
  ThetaPoint() = default;
  explicit ThetaPoint(std::vector<double> values) : values_(std::move(values)) {}
  ThetaPoint(std::initializer_list<double> values) : values_(values) {}

  int size() const noexcept { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const noexcept { return values_; }

  // Necessary (not sufficient) condition for lying in the domain.
  bool all_positive() const;

 private:
  std::vector<double> values_;
};

enum class GraphFormat { kEdgeList, kAdjacencyMatrix };

Network parse_network(std::string_view text, GraphFormat format);
Network read_network_file(const std::string& path, GraphFormat format);
std::string to_edge_list(const Network& net);

// Clique on the first m vertices, remaining n-m vertices isolated.
Network clique_network(int n, int m);

// Returns P A P^t, i.e. edge {i, j} becomes {p(i), p(j)}.
Network permute_network(const Network& net, const Permutation& p);
bool verify_isomorphism(const Network& a, const Network& b, const Permutation& p);

inline constexpr int kMaxBruteForceVertices = 8;

// Exhaustive search over all n! relabellings. Throws SizeBoundError for
// n > kMaxBruteForceVertices.
std::optional<Permutation> find_isomorphism_bruteforce(const Network& a, const Network& b);

}  // namespace netgeo
