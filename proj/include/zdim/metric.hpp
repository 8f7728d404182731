#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zdim/counting.hpp"
#include "zdim/matrix.hpp"
#include "zdim/zdgraph.hpp"

namespace zdim {

// r(v|W) for every vertex v, in vertex order.
struct Representation {
  std::vector<Vertex> reference;
  std::vector<std::vector<std::uint8_t>> vectors;
};

Representation representation(const DistanceMatrix& d, std::span<const Vertex> reference);

struct ResolveVerdict {
  bool resolving = false;
  // Lowest-index pair of distinct vertices sharing a representation.
  std::optional<std::pair<Vertex, Vertex>> collision;
};

ResolveVerdict is_resolving(const DistanceMatrix& d, std::span<const Vertex> reference);

// Maps matrices to graph vertices; throws InputError for a non-vertex.
std::vector<Vertex> to_vertices(const ZeroDivisorGraph& g, std::span<const Matrix> matrices);

// The resolving set W_R for Gamma(M_n(B)): every class T_{I,J} minus R, where
// R holds the rank-minimal member of each class with both I and J nonempty,
// of each T_{I,∅} and T_{∅,I} with |I| <= n-2, and the singletons
// T_{N_{n-1},∅} and T_{∅,N_{n-1}}. Ascending rank.
std::vector<Matrix> build_WR(int n, Rank cap = kDefaultMatrixCap);

// 2(n-1) + sum over 0 <= i,j <= n-2, (i,j) != (0,0) of C(n,i) C(n,j) (t_{i,j} - 1).
BigInt predicted_WR_size(int n);
BigInt dim_formula_boolean(int n);

// Metric dimension of Gamma(M_n(S)) for an entire antiring with |S| = q.
// q = 2 delegates to dim_formula_boolean.
BigInt dim_formula_general(int n, int q);

// Every non-{0,1}-valued nonzero zero-divisor plus, for n >= 3, the
// embedded Boolean twin elements of the classes with |I|,|J| <= n-2. Requires
// |S| >= 3. Ascending rank.
std::vector<Matrix> build_general_resolving_set(const FiniteSemiring& s, int n,
                                                Rank cap = kDefaultMatrixCap);

// From each twin block of size m >= 2, the m-1 lowest-index members. Any
// resolving set can be moved onto a superset of these by twin transpositions.
std::vector<Vertex> forced_twin_elements(const TwinPartition& twins);

// True iff some k-subset of `candidates` added to `base` resolves the graph.
// Exhaustive; intended for small k.
bool any_resolving_extension(const DistanceMatrix& d, std::span<const Vertex> base,
                             std::span<const Vertex> candidates, int k);

struct SearchOptions {
  std::uint64_t node_budget = 20'000'000;
};

struct ExactResult {
  bool exact = false;  // false when the node budget ran out
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  std::vector<Vertex> basis;  // best resolving set found, ascending
  std::size_t forced = 0;
  std::size_t free_vertices = 0;
  std::size_t unresolved_pairs = 0;  // pairs left unresolved by the forced set
  std::uint64_t nodes = 0;
};

// Exact metric dimension: fix the forced twin elements, then branch and bound
// a minimum hitting set of the per-pair distinguishing sets. Throws
// DisconnectedGraph for a disconnected input.
ExactResult exact_metric_dimension(const Graph& g, const DistanceMatrix& d,
                                   const SearchOptions& options = {});
ExactResult exact_metric_dimension(const Graph& g, const SearchOptions& options = {});

enum class Verdict { kPass, kFail, kBudgetExceeded, kUnchecked };
std::string_view verdict_name(Verdict v);

struct DimReport {
  int n = 0;
  std::string semiring;
  std::optional<BigInt> formula;
  std::optional<std::size_t> constructed_size;
  std::optional<std::size_t> oracle;
  std::vector<Rank> basis_ranks;
  // Unresolved pair (by rank) when the constructed set fails to resolve.
  std::optional<std::pair<Rank, Rank>> witness;
  double elapsed_ms = 0;
  Verdict verdict = Verdict::kUnchecked;

  // Search statistics; text output only.
  std::optional<ExactResult> search;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Integers that fit in 64 bits serialize as JSON numbers, larger ones as
// decimal strings.
nlohmann::json bigint_to_json(const BigInt& value);

struct DimOptions {
  bool exact = false;
  bool construct = false;
  GraphOptions graph;
  SearchOptions search;
};

// Formula value always; the constructed set (W_R or the general set) is built
// and checked for resolving when `construct` is set; the oracle runs when
// `exact` is set. The verdict passes iff all present values agree.
// The basis reported is the constructed set if requested, else the oracle's.
DimReport compute_dimension(const FiniteSemiring& s, int n, const DimOptions& options);

}  // namespace zdim
