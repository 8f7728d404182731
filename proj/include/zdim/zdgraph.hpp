#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "zdim/matrix.hpp"
#include "zdim/semiring.hpp"

namespace zdim {

using Vertex = std::size_t;

// Simple undirected graph with one adjacency bit row per vertex.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);

  std::size_t size() const { return size_; }
  std::size_t words_per_row() const { return words_; }

  void add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1;
  }
  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + v * words_, words_};
  }
  std::span<std::uint64_t> mutable_row(Vertex v) {
    return {bits_.data() + v * words_, words_};
  }

  std::size_t degree(Vertex v) const;
  std::size_t edge_count() const;
  std::vector<Vertex> neighbors(Vertex v) const;

 private:
  std::size_t size_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

Graph complete_graph(std::size_t m);
Graph path_graph(std::size_t m);

// AB = 0 over an entire antiring iff every nonzero column of A is a zero row
// of B; this depends only on the support classes.
inline bool annihilates(const SupportClass& a, const SupportClass& b, int n) {
  return (full_set(n) & ~a.zero_cols & ~b.zero_rows) == 0;
}

struct GraphOptions {
  Rank matrix_cap = kDefaultMatrixCap;
  int threads = 1;
};

// Gamma(M_n(S)): vertices are the nonzero zero-divisors in ascending rank.
struct ZeroDivisorGraph {
  int n = 0;
  int q = 0;
  std::string semiring_name;
  std::vector<Matrix> vertices;
  std::vector<Rank> ranks;
  std::vector<SupportClass> classes;  // support class of each vertex
  Graph graph;

  std::size_t size() const { return vertices.size(); }
  std::optional<Vertex> index_of(Rank rank) const;
  std::optional<Vertex> index_of(const Matrix& m) const { return index_of(m.rank()); }
};

ZeroDivisorGraph build_graph(const FiniteSemiring& s, int n,
                             const GraphOptions& options = {});

inline constexpr std::uint8_t kInfinity = 255;

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), d_(size * size, kInfinity) {}

  std::size_t size() const { return size_; }
  std::uint8_t at(Vertex u, Vertex v) const { return d_[u * size_ + v]; }
  std::span<const std::uint8_t> row(Vertex u) const { return {d_.data() + u * size_, size_}; }
  std::span<std::uint8_t> mutable_row(Vertex u) { return {d_.data() + u * size_, size_}; }
  bool connected() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> d_;
};

// BFS distances; unreachable vertices get kInfinity. Throws InputError if a
// finite distance would not fit below kInfinity.
std::vector<std::uint8_t> distances_from(const Graph& g, Vertex source);
DistanceMatrix all_pairs_distances(const Graph& g, int threads = 1);

// Throws DisconnectedGraph if some pair is unreachable.
int diameter(const DistanceMatrix& d);
int diameter(const Graph& g, int threads = 1);

enum class TwinKind { kSingleton, kOpen, kClosed };

struct TwinBlock {
  std::vector<Vertex> members;  // ascending
  TwinKind kind = TwinKind::kSingleton;
};

struct TwinPartition {
  std::vector<TwinBlock> blocks;  // ordered by smallest member
  std::vector<std::size_t> block_of;
};

bool open_twins(const Graph& g, Vertex u, Vertex v);    // N(u) = N(v)
bool closed_twins(const Graph& g, Vertex u, Vertex v);  // N[u] = N[v]
inline bool are_twins(const Graph& g, Vertex u, Vertex v) {
  return u != v && (open_twins(g, u, v) || closed_twins(g, u, v));
}

// Maximal twin classes: vertices grouped by equal N(v) and by equal N[v].
TwinPartition twin_classes(const Graph& g);

// Undirected DOT, vertex labels in matrix text form, each edge once with the
// lower index first.
void write_dot(const ZeroDivisorGraph& g, std::ostream& out);
// Header row of vertex ranks, then one row per vertex; "inf" if unreachable.
void write_distance_csv(const ZeroDivisorGraph& g, const DistanceMatrix& d,
                        std::ostream& out);

}  // namespace zdim
