#include "zdim/metric.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace zdim {

namespace {

using Clock = std::chrono::steady_clock;

// Partition refinement: vertices with equal representation get equal ids.
std::vector<std::uint32_t> representation_cells(const DistanceMatrix& d,
                                                std::span<const Vertex> reference) {
  std::vector<std::uint32_t> cell(d.size(), 0);
  std::unordered_map<std::uint64_t, std::uint32_t> renumber;
  for (Vertex w : reference) {
    renumber.clear();
    for (Vertex v = 0; v < d.size(); ++v) {
      const std::uint64_t key = (std::uint64_t{cell[v]} << 8) | d.at(v, w);
      auto [it, inserted] =
          renumber.try_emplace(key, static_cast<std::uint32_t>(renumber.size()));
      cell[v] = it->second;
    }
  }
  return cell;
}

// Dynamic bitset over candidate positions.
using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) {
  std::size_t total = 0;
  for (auto w : b) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

bool intersects(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & b[w]) return true;
  return false;
}

struct BudgetHit {};

// Minimum hitting set of `pairs` (each a set of candidate positions) by
// branch and bound.
class HittingSetSearch {
 public:
  HittingSetSearch(std::vector<Bits> pairs, std::size_t candidates, std::uint64_t budget)
      : pairs_(std::move(pairs)), candidates_(candidates), budget_(budget),
        words_((candidates + 63) / 64) {}

  void run() {
    std::vector<std::size_t> all(pairs_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    Bits excluded(words_, 0);
    root_lower_ = lower_bound(all, excluded);
    best_ = greedy(all);
    try {
      std::vector<std::size_t> chosen;
      search(all, excluded, chosen);
      exact_ = true;
    } catch (const BudgetHit&) {
      exact_ = false;
    }
  }

  bool exact() const { return exact_; }
  std::uint64_t nodes() const { return nodes_; }
  std::size_t root_lower() const { return root_lower_; }
  const std::vector<std::size_t>& best() const { return best_; }

 private:
  Bits allowed(std::size_t pair, const Bits& excluded) const {
    Bits b = pairs_[pair];
    for (std::size_t w = 0; w < words_; ++w) b[w] &= ~excluded[w];
    return b;
  }

  // Number of pairwise disjoint distinguishing sets, fewest members first.
  std::size_t lower_bound(const std::vector<std::size_t>& open, const Bits& excluded) const {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(open.size());
    for (std::size_t p : open) order.emplace_back(popcount(allowed(p, excluded)), p);
    std::sort(order.begin(), order.end());
    Bits used(words_, 0);
    std::size_t count = 0;
    for (auto [size, p] : order) {
      Bits a = allowed(p, excluded);
      if (size == 0) return candidates_ + 1;  // infeasible branch
      if (!intersects(a, used)) {
        ++count;
        for (std::size_t w = 0; w < words_; ++w) used[w] |= a[w];
      }
    }
    return count;
  }

  std::vector<std::size_t> greedy(std::vector<std::size_t> open) const {
    std::vector<std::size_t> chosen;
    while (!open.empty()) {
      std::size_t best_c = 0, best_hits = 0;
      for (std::size_t c = 0; c < candidates_; ++c) {
        std::size_t hits = 0;
        for (std::size_t p : open) hits += test(pairs_[p], c);
        if (hits > best_hits) {
          best_hits = hits;
          best_c = c;
        }
      }
      chosen.push_back(best_c);
      std::erase_if(open, [&](std::size_t p) { return test(pairs_[p], best_c); });
    }
    return chosen;
  }

  void search(const std::vector<std::size_t>& open, const Bits& excluded,
              std::vector<std::size_t>& chosen) {
    if (++nodes_ > budget_) throw BudgetHit{};
    if (open.empty()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(open, excluded) >= best_.size()) return;

    // Branch on the open pair with the fewest usable distinguishers.
    std::size_t pivot = open.front();
    std::size_t pivot_size = SIZE_MAX;
    for (std::size_t p : open) {
      const std::size_t size = popcount(allowed(p, excluded));
      if (size < pivot_size) {
        pivot_size = size;
        pivot = p;
      }
    }
    if (pivot_size == 0) return;

    Bits options = allowed(pivot, excluded);
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (-hits, candidate)
    for (std::size_t c = 0; c < candidates_; ++c) {
      if (!test(options, c)) continue;
      std::size_t hits = 0;
      for (std::size_t p : open) hits += test(pairs_[p], c);
      order.emplace_back(SIZE_MAX - hits, c);
    }
    std::sort(order.begin(), order.end());

    Bits local_excluded = excluded;
    for (auto [key, c] : order) {
      std::vector<std::size_t> rest;
      for (std::size_t p : open)
        if (!test(pairs_[p], c)) rest.push_back(p);
      chosen.push_back(c);
      search(rest, local_excluded, chosen);
      chosen.pop_back();
      set_bit(local_excluded, c);
    }
  }

  std::vector<Bits> pairs_;
  std::size_t candidates_;
  std::uint64_t budget_;
  std::size_t words_;
  std::uint64_t nodes_ = 0;
  std::size_t root_lower_ = 0;
  bool exact_ = false;
  std::vector<std::size_t> best_;
};

std::string optional_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "-";
}

}  // namespace

Representation representation(const DistanceMatrix& d, std::span<const Vertex> reference) {
  Representation r;
  r.reference.assign(reference.begin(), reference.end());
  r.vectors.resize(d.size());
  for (Vertex v = 0; v < d.size(); ++v) {
    r.vectors[v].reserve(reference.size());
    for (Vertex w : reference) r.vectors[v].push_back(d.at(v, w));
  }
  return r;
}

ResolveVerdict is_resolving(const DistanceMatrix& d, std::span<const Vertex> reference) {
  for (Vertex w : reference) {
    if (w >= d.size()) throw InputError("reference vertex out of range");
  }
  const auto cell = representation_cells(d, reference);
  std::unordered_map<std::uint32_t, Vertex> first;
  ResolveVerdict verdict{true, std::nullopt};
  for (Vertex v = 0; v < d.size(); ++v) {
    auto [it, inserted] = first.try_emplace(cell[v], v);
    if (!inserted) {
      verdict.resolving = false;
      verdict.collision = std::pair(it->second, v);
      break;
    }
  }
  return verdict;
}

std::vector<Vertex> to_vertices(const ZeroDivisorGraph& g, std::span<const Matrix> matrices) {
  std::vector<Vertex> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) {
    auto v = g.index_of(m);
    if (!v) throw InputError("matrix " + m.to_text() + " is not a vertex of the graph");
    out.push_back(*v);
  }
  return out;
}

std::vector<Matrix> build_WR(int n, Rank cap) {
  if (n < 2) throw InputError("W_R needs n >= 2");
  const FiniteSemiring b = builtin_boolean();
  const IndexSet first_n_minus_1 = full_set(n - 1);
  const auto classes = zero_divisor_classes(n);
  // Total search space over all class blocks, checked before any work.
  Rank space = 0;
  for (const auto& cls : classes) {
    const int cells = (n - set_size(cls.zero_rows)) * (n - set_size(cls.zero_cols));
    space += cells >= 63 ? cap + 1 : Rank{1} << cells;
    if (space > cap) {
      throw BudgetExceeded("W_R for n = " + std::to_string(n) + " exceeds the cap of " +
                           std::to_string(cap) + " matrices");
    }
  }
  std::vector<Matrix> out;
  for (const auto& cls : classes) {
    auto members = enumerate_class(n, cls, b, cap);
    const int i = set_size(cls.zero_rows);
    const int j = set_size(cls.zero_cols);
    std::size_t skip = 0;  // members[0..skip) belong to R
    if (i > 0 && j > 0) {
      skip = 1;
    } else {
      const int k = std::max(i, j);
      const IndexSet nonempty = i > 0 ? cls.zero_rows : cls.zero_cols;
      if (k <= n - 2) {
        skip = 1;
      } else if (nonempty == first_n_minus_1) {
        skip = members.size();
      }
    }
    for (std::size_t m = skip; m < members.size(); ++m) out.push_back(std::move(members[m]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt predicted_WR_size(int n) {
  if (n < 2) throw InputError("the W_R size formula needs n >= 2");
  BigInt total = 2 * (n - 1);
  for (int i = 0; i <= n - 2; ++i) {
    for (int j = 0; j <= n - 2; ++j) {
      if (i == 0 && j == 0) continue;
      total += binomial(n, i) * binomial(n, j) * (count_class_boolean(n, i, j) - 1);
    }
  }
  return total;
}

BigInt dim_formula_boolean(int n) { return predicted_WR_size(n); }

BigInt dim_formula_general(int n, int q) {
  if (q < 2) throw InputError("the semiring order must be at least 2");
  if (n < 2) throw InputError("the dimension formula needs n >= 2");
  if (q == 2) return dim_formula_boolean(n);
  BigInt value = power(BigInt(q), n * n) - power(BigInt(2), n * n);
  for (int k = 0; k <= n; ++k) {
    BigInt term = binomial(n, k) * (power(power(BigInt(q), n - k) - 1, n) -
                                    power(power(BigInt(2), n - k) - 1, n));
    if (k % 2 == 0) {
      value -= term;
    } else {
      value += term;
    }
  }
  return value + dim_formula_boolean(n) - 2 * (n - 1);
}

std::vector<Matrix> build_general_resolving_set(const FiniteSemiring& s, int n, Rank cap) {
  if (s.order() < 3) throw InputError("the general construction needs |S| >= 3");
  if (n < 2) throw InputError("the general construction needs n >= 2");
  std::vector<Matrix> out;
  for_each_matrix(
      n, s.order(),
      [&](const Matrix& m) {
        if (!m.is_zero() && is_zero_divisor(m, s) && !is_boolean_valued(m, s)) {
          out.push_back(m);
        }
      },
      cap);
  const FiniteSemiring b = builtin_boolean();
  for (const auto& cls : zero_divisor_classes(n)) {
    if (set_size(cls.zero_rows) > n - 2 || set_size(cls.zero_cols) > n - 2) continue;
    auto members = enumerate_class(n, cls, b, cap);
    for (std::size_t m = 1; m < members.size(); ++m) {
      out.push_back(embed_boolean(members[m], s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> forced_twin_elements(const TwinPartition& twins) {
  std::vector<Vertex> out;
  for (const auto& block : twins.blocks) {
    if (block.members.size() < 2) continue;
    out.insert(out.end(), block.members.begin(), block.members.end() - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool any_resolving_extension(const DistanceMatrix& d, std::span<const Vertex> base,
                             std::span<const Vertex> candidates, int k) {
  const auto cell = representation_cells(d, base);
  const std::size_t m = candidates.size();
  if (k < 0 || static_cast<std::size_t>(k) > m) return false;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::unordered_map<std::string, Vertex> seen;
  std::string key;
  while (true) {
    seen.clear();
    bool ok = true;
    for (Vertex v = 0; v < d.size() && ok; ++v) {
      key.assign(reinterpret_cast<const char*>(&cell[v]), sizeof(cell[v]));
      for (std::size_t idx : pick) key.push_back(static_cast<char>(d.at(v, candidates[idx])));
      ok = seen.try_emplace(key, v).second;
    }
    if (ok) return true;
    // next k-combination in lexicographic order
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == m - k + pos) --pos;
    if (pos < 0) return false;
    ++pick[pos];
    for (int t = pos + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
  }
}

ExactResult exact_metric_dimension(const Graph& g, const DistanceMatrix& d,
                                   const SearchOptions& options) {
  if (!d.connected()) throw DisconnectedGraph("metric dimension needs a connected graph");
  ExactResult result;
  const auto forced = forced_twin_elements(twin_classes(g));
  result.forced = forced.size();

  std::vector<bool> is_forced(g.size(), false);
  for (Vertex v : forced) is_forced[v] = true;
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!is_forced[v]) free.push_back(v);
  result.free_vertices = free.size();

  // Pairs the forced set leaves unresolved all lie inside cells of its
  // representation partition; forced vertices are resolved by themselves.
  const auto cell = representation_cells(d, forced);
  std::unordered_map<std::uint32_t, std::vector<Vertex>> cells;
  for (Vertex v : free) cells[cell[v]].push_back(v);
  std::vector<std::vector<Vertex>> groups;
  for (auto& [id, members] : cells)
    if (members.size() >= 2) groups.push_back(std::move(members));
  std::sort(groups.begin(), groups.end());

  const std::size_t words = (free.size() + 63) / 64;
  std::vector<Bits> pairs;
  for (const auto& members : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        Bits mask(words, 0);
        for (std::size_t c = 0; c < free.size(); ++c) {
          if (d.at(members[a], free[c]) != d.at(members[b], free[c])) set_bit(mask, c);
        }
        pairs.push_back(std::move(mask));
      }
    }
  }
  result.unresolved_pairs = pairs.size();

  HittingSetSearch search(std::move(pairs), free.size(), options.node_budget);
  search.run();
  result.exact = search.exact();
  result.nodes = search.nodes();
  result.basis = forced;
  for (std::size_t c : search.best()) result.basis.push_back(free[c]);
  std::sort(result.basis.begin(), result.basis.end());
  result.upper_bound = result.basis.size();
  result.lower_bound = result.exact ? result.upper_bound : forced.size() + search.root_lower();
  return result;
}

ExactResult exact_metric_dimension(const Graph& g, const SearchOptions& options) {
  return exact_metric_dimension(g, all_pairs_distances(g), options);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kBudgetExceeded: return "budget_exceeded";
    case Verdict::kUnchecked: return "unchecked";
  }
  return "unknown";
}

nlohmann::json bigint_to_json(const BigInt& value) {
  if (value >= 0 && value <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return value.convert_to<std::uint64_t>();
  }
  if (value < 0 && value >= BigInt(std::numeric_limits<std::int64_t>::min())) {
    return value.convert_to<std::int64_t>();
  }
  return value.str();
}

nlohmann::json DimReport::to_json() const {
  nlohmann::json j;
  j["formula"] = formula ? bigint_to_json(*formula) : nlohmann::json(nullptr);
  j["constructed_size"] = constructed_size ? nlohmann::json(*constructed_size)
                                           : nlohmann::json(nullptr);
  j["oracle"] = oracle ? nlohmann::json(*oracle) : nlohmann::json(nullptr);
  j["basis_ranks"] = basis_ranks;
  if (witness) {
    j["witness"] = {witness->first, witness->second};
  } else {
    j["witness"] = nullptr;
  }
  j["elapsed_ms"] = elapsed_ms;
  j["verdict"] = verdict_name(verdict);
  return j;
}

std::string DimReport::to_text() const {
  std::ostringstream out;
  out << "semiring          " << semiring << "\n";
  out << "n                 " << n << "\n";
  out << "formula           " << (formula ? formula->str() : "-") << "\n";
  out << "constructed size  " << optional_text(constructed_size) << "\n";
  out << "oracle            " << optional_text(oracle) << "\n";
  if (search) {
    out << "search            forced " << search->forced << ", free "
        << search->free_vertices << ", unresolved pairs " << search->unresolved_pairs
        << ", nodes " << search->nodes << ", bounds [" << search->lower_bound << ", "
        << search->upper_bound << "]\n";
  }
  if (witness) {
    out << "witness           ranks " << witness->first << " and " << witness->second
        << " share a representation\n";
  }
  out << "elapsed ms        " << static_cast<long long>(elapsed_ms) << "\n";
  out << "verdict           " << verdict_name(verdict) << "\n";
  return out.str();
}

DimReport compute_dimension(const FiniteSemiring& s, int n, const DimOptions& options) {
  const auto start = Clock::now();
  DimReport report;
  report.n = n;
  report.semiring = s.name();
  report.formula = s.order() == 2 ? dim_formula_boolean(n) : dim_formula_general(n, s.order());

  bool failed = false;
  bool budget = false;
  if (options.construct || options.exact) {
    try {
      const auto zg = build_graph(s, n, options.graph);
      const auto dist = all_pairs_distances(zg.graph, options.graph.threads);
      if (options.construct) {
        const auto set = s.order() == 2 ? build_WR(n, options.graph.matrix_cap)
                                        : build_general_resolving_set(s, n, options.graph.matrix_cap);
        const auto vertices = to_vertices(zg, set);
        report.constructed_size = vertices.size();
        for (const auto& m : set) report.basis_ranks.push_back(m.rank());
        const auto verdict = is_resolving(dist, vertices);
        if (!verdict.resolving) {
          failed = true;
          report.witness = std::pair(zg.ranks[verdict.collision->first],
                                     zg.ranks[verdict.collision->second]);
        }
      }
      if (options.exact) {
        auto result = exact_metric_dimension(zg.graph, dist, options.search);
        if (result.exact) {
          report.oracle = result.basis.size();
          if (!options.construct) {
            for (Vertex v : result.basis) report.basis_ranks.push_back(zg.ranks[v]);
          }
        } else {
          budget = true;
        }
        report.search = std::move(result);
      }
    } catch (const BudgetExceeded&) {
      budget = true;
    }
  }

  if (report.constructed_size && BigInt(*report.constructed_size) != *report.formula) failed = true;
  if (report.oracle && BigInt(*report.oracle) != *report.formula) failed = true;

  if (failed) {
    report.verdict = Verdict::kFail;
  } else if (budget) {
    report.verdict = Verdict::kBudgetExceeded;
  } else if (report.constructed_size || report.oracle) {
    report.verdict = Verdict::kPass;
  } else {
    report.verdict = Verdict::kUnchecked;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace zdim
