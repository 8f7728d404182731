#include "zdim/zdgraph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "zdim/parallel.hpp"

namespace zdim {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

template <typename F>
void for_each_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word != 0) {
      f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void merge(std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u != v) parent_[std::max(u, v)] = std::min(u, v);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Graph::Graph(std::size_t vertex_count)
    : size_(vertex_count), words_(words_for(vertex_count)),
      bits_(vertex_count * words_for(vertex_count), 0) {}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) return;
  bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t Graph::degree(Vertex v) const {
  std::size_t d = 0;
  for (auto word : row(v)) d += static_cast<std::size_t>(std::popcount(word));
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (Vertex v = 0; v < size_; ++v) total += degree(v);
  return total / 2;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for_each_bit(row(v), [&](std::size_t u) { out.push_back(u); });
  return out;
}

Graph complete_graph(std::size_t m) {
  Graph g(m);
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = u + 1; v < m; ++v) g.add_edge(u, v);
  return g;
}

Graph path_graph(std::size_t m) {
  Graph g(m);
  for (Vertex v = 1; v < m; ++v) g.add_edge(v - 1, v);
  return g;
}

std::optional<Vertex> ZeroDivisorGraph::index_of(Rank rank) const {
  auto it = std::lower_bound(ranks.begin(), ranks.end(), rank);
  if (it == ranks.end() || *it != rank) return std::nullopt;
  return static_cast<Vertex>(it - ranks.begin());
}

ZeroDivisorGraph build_graph(const FiniteSemiring& s, int n, const GraphOptions& options) {
  ZeroDivisorGraph zg;
  zg.n = n;
  zg.q = s.order();
  zg.semiring_name = s.name();
  for_each_matrix(
      n, s.order(),
      [&](const Matrix& m) {
        if (m.is_zero() || !is_zero_divisor(m, s)) return;
        zg.ranks.push_back(m.rank());
        zg.classes.push_back(support_class(m));
        zg.vertices.push_back(m);
      },
      options.matrix_cap);

  const std::size_t v_count = zg.vertices.size();
  zg.graph = Graph(v_count);
  const std::size_t words = zg.graph.words_per_row();

  // Adjacency only depends on the pair of support classes, so build one
  // neighbour row per class and copy it into each member's row.
  std::map<SupportClass, std::size_t> class_index;
  std::vector<SupportClass> class_list;
  std::vector<std::size_t> class_of(v_count);
  for (Vertex v = 0; v < v_count; ++v) {
    auto [it, inserted] = class_index.try_emplace(zg.classes[v], class_list.size());
    if (inserted) class_list.push_back(zg.classes[v]);
    class_of[v] = it->second;
  }
  const std::size_t c_count = class_list.size();
  std::vector<std::uint64_t> members(c_count * words, 0);
  for (Vertex v = 0; v < v_count; ++v) {
    members[class_of[v] * words + v / 64] |= std::uint64_t{1} << (v % 64);
  }
  std::vector<std::uint64_t> class_rows(c_count * words, 0);
  parallel_for(c_count, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = 0; b < c_count; ++b) {
        if (annihilates(class_list[a], class_list[b], n) ||
            annihilates(class_list[b], class_list[a], n)) {
          for (std::size_t w = 0; w < words; ++w)
            class_rows[a * words + w] |= members[b * words + w];
        }
      }
    }
  });
  parallel_for(v_count, options.threads, [&](std::size_t begin, std::size_t end) {
    for (Vertex v = begin; v < end; ++v) {
      auto row = zg.graph.mutable_row(v);
      std::copy_n(class_rows.begin() + class_of[v] * words, words, row.begin());
      row[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
  });
  return zg;
}

bool DistanceMatrix::connected() const {
  return std::find(d_.begin(), d_.end(), kInfinity) == d_.end();
}

std::vector<std::uint8_t> distances_from(const Graph& g, Vertex source) {
  std::vector<std::uint8_t> dist(g.size(), kInfinity);
  if (source >= g.size()) throw InputError("source vertex out of range");
  const std::size_t words = g.words_per_row();
  std::vector<std::uint64_t> visited(words, 0), frontier(words, 0), next(words, 0);
  visited[source / 64] |= std::uint64_t{1} << (source % 64);
  frontier = visited;
  dist[source] = 0;
  int level = 0;
  while (true) {
    std::fill(next.begin(), next.end(), 0);
    for_each_bit(frontier, [&](std::size_t v) {
      auto row = g.row(v);
      for (std::size_t w = 0; w < words; ++w) next[w] |= row[w];
    });
    bool any = false;
    for (std::size_t w = 0; w < words; ++w) {
      next[w] &= ~visited[w];
      visited[w] |= next[w];
      any |= next[w] != 0;
    }
    if (!any) break;
    if (++level >= kInfinity) throw InputError("graph distance exceeds 8-bit storage");
    for_each_bit(next, [&](std::size_t v) { dist[v] = static_cast<std::uint8_t>(level); });
    frontier.swap(next);
  }
  return dist;
}

DistanceMatrix all_pairs_distances(const Graph& g, int threads) {
  DistanceMatrix d(g.size());
  parallel_for(g.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (Vertex v = begin; v < end; ++v) {
      auto dist = distances_from(g, v);
      std::copy(dist.begin(), dist.end(), d.mutable_row(v).begin());
    }
  });
  return d;
}

int diameter(const DistanceMatrix& d) {
  int best = 0;
  for (Vertex u = 0; u < d.size(); ++u) {
    for (Vertex v = 0; v < d.size(); ++v) {
      const int x = d.at(u, v);
      if (x == kInfinity) {
        throw DisconnectedGraph("graph is disconnected: vertices " + std::to_string(u) +
                                " and " + std::to_string(v) + " are unreachable");
      }
      best = std::max(best, x);
    }
  }
  return best;
}

int diameter(const Graph& g, int threads) { return diameter(all_pairs_distances(g, threads)); }

bool open_twins(const Graph& g, Vertex u, Vertex v) {
  auto a = g.row(u);
  auto b = g.row(v);
  return std::equal(a.begin(), a.end(), b.begin());
}

bool closed_twins(const Graph& g, Vertex u, Vertex v) {
  if (u == v) return true;
  if (!g.adjacent(u, v)) return false;
  auto a = g.row(u);
  auto b = g.row(v);
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t x = a[w], y = b[w];
    if (u / 64 == w) x |= std::uint64_t{1} << (u % 64);
    if (v / 64 == w) y |= std::uint64_t{1} << (v % 64);
    if (x != y) return false;
  }
  return true;
}

TwinPartition twin_classes(const Graph& g) {
  const std::size_t v_count = g.size();
  UnionFind uf(v_count);
  std::map<std::vector<std::uint64_t>, Vertex> open_key, closed_key;
  for (Vertex v = 0; v < v_count; ++v) {
    auto row = g.row(v);
    std::vector<std::uint64_t> key(row.begin(), row.end());
    if (auto [it, inserted] = open_key.try_emplace(key, v); !inserted) uf.merge(it->second, v);
    key[v / 64] |= std::uint64_t{1} << (v % 64);
    if (auto [it, inserted] = closed_key.try_emplace(std::move(key), v); !inserted) {
      uf.merge(it->second, v);
    }
  }

  TwinPartition partition;
  partition.block_of.assign(v_count, 0);
  std::vector<std::size_t> block_of_root(v_count, SIZE_MAX);
  for (Vertex v = 0; v < v_count; ++v) {
    const std::size_t root = uf.find(v);
    if (block_of_root[root] == SIZE_MAX) {
      block_of_root[root] = partition.blocks.size();
      partition.blocks.emplace_back();
    }
    partition.block_of[v] = block_of_root[root];
    partition.blocks[block_of_root[root]].members.push_back(v);
  }
  // A twin class is either a clique (closed twins) or independent (open twins).
  for (auto& block : partition.blocks) {
    if (block.members.size() >= 2) {
      block.kind = g.adjacent(block.members[0], block.members[1]) ? TwinKind::kClosed
                                                                  : TwinKind::kOpen;
    }
  }
  return partition;
}

void write_dot(const ZeroDivisorGraph& g, std::ostream& out) {
  out << "graph zero_divisor {\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    out << "  v" << v << " [label=\"" << g.vertices[v].to_text() << "\"];\n";
  }
  for (Vertex u = 0; u < g.size(); ++u) {
    for (Vertex v : g.graph.neighbors(u)) {
      if (u < v) out << "  v" << u << " -- v" << v << ";\n";
    }
  }
  out << "}\n";
}

void write_distance_csv(const ZeroDivisorGraph& g, const DistanceMatrix& d,
                        std::ostream& out) {
  out << "rank";
  for (Rank r : g.ranks) out << "," << r;
  out << "\n";
  for (Vertex u = 0; u < g.size(); ++u) {
    out << g.ranks[u];
    for (Vertex v = 0; v < g.size(); ++v) {
      out << ",";
      if (d.at(u, v) == kInfinity) {
        out << "inf";
      } else {
        out << static_cast<int>(d.at(u, v));
      }
    }
    out << "\n";
  }
}

}  // namespace zdim
