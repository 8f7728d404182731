#include "zdim/verify.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

namespace zdim {

namespace {

struct Instance {
  ZeroDivisorGraph zg;
  DistanceMatrix dist;
};

class Context {
 public:
  Context(const FiniteSemiring& s, int n, const VerifyOptions& options)
      : s_(s), b_(builtin_boolean()), n_(n), options_(options) {}

  int n() const { return n_; }
  const FiniteSemiring& semiring() const { return s_; }
  const VerifyOptions& options() const { return options_; }

  const Instance& boolean() {
    if (!boolean_) boolean_ = make(b_);
    return *boolean_;
  }
  const Instance& general() {
    if (s_.order() == 2) return boolean();
    if (!general_) general_ = make(s_);
    return *general_;
  }
  const std::vector<Matrix>& wr() {
    if (!wr_) wr_ = build_WR(n_, options_.graph.matrix_cap);
    return *wr_;
  }

 private:
  std::unique_ptr<Instance> make(const FiniteSemiring& s) {
    auto inst = std::make_unique<Instance>();
    inst->zg = build_graph(s, n_, options_.graph);
    inst->dist = all_pairs_distances(inst->zg.graph, options_.graph.threads);
    return inst;
  }

  const FiniteSemiring& s_;
  FiniteSemiring b_;
  int n_;
  VerifyOptions options_;
  std::unique_ptr<Instance> boolean_;
  std::unique_ptr<Instance> general_;
  std::optional<std::vector<Matrix>> wr_;
};

CheckResult verdict(Check check, bool ok, std::string detail) {
  return {check, ok ? Verdict::kPass : Verdict::kFail, std::move(detail)};
}

CheckResult check_t_singleton(Context& ctx) {
  const int n = ctx.n();
  const FiniteSemiring b = builtin_boolean();
  int classes = 0, bad = 0;
  std::string first_bad;
  for (const auto& cls : zero_divisor_classes(n)) {
    const int i = set_size(cls.zero_rows), j = set_size(cls.zero_cols);
    if (i != n - 1 && j != n - 1) continue;
    ++classes;
    const auto size = enumerate_class(n, cls, b, ctx.options().graph.matrix_cap).size();
    if (size != 1 || count_class_boolean(n, i, j) != 1) {
      if (bad++ == 0) first_bad = to_text(cls) + " has " + std::to_string(size) + " members";
    }
  }
  std::string detail = std::to_string(classes) + " classes with |I|=n-1 or |J|=n-1";
  if (bad) detail += "; " + std::to_string(bad) + " not singletons, e.g. " + first_bad;
  return verdict(Check::kTSingleton, bad == 0 && classes > 0, detail);
}

// Every pair inside each group must be twins; also reports blocks touched.
CheckResult groups_are_twins(Check check, const Instance& inst,
                             const std::map<Rank, std::vector<Vertex>>& groups,
                             const std::string& label) {
  const Graph& g = inst.zg.graph;
  std::size_t pairs = 0, bad = 0;
  std::string first_bad;
  for (const auto& [key, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        ++pairs;
        if (!are_twins(g, members[a], members[b])) {
          if (bad++ == 0) {
            first_bad = inst.zg.vertices[members[a]].to_text() + " / " +
                        inst.zg.vertices[members[b]].to_text();
          }
        }
      }
    }
  }
  std::string detail = std::to_string(groups.size()) + " " + label + ", " +
                       std::to_string(pairs) + " pairs checked";
  if (bad) detail += "; " + std::to_string(bad) + " non-twin pairs, e.g. " + first_bad;
  return verdict(check, bad == 0, detail);
}

CheckResult check_twins(Context& ctx) {
  const auto& inst = ctx.boolean();
  std::map<Rank, std::vector<Vertex>> groups;
  for (Vertex v = 0; v < inst.zg.size(); ++v) {
    const auto& c = inst.zg.classes[v];
    groups[(Rank{c.zero_rows} << 32) | c.zero_cols].push_back(v);
  }
  auto result = groups_are_twins(Check::kTwins, inst, groups, "classes T_{I,J}");
  // Same class must also mean same block of the maximal twin partition.
  const auto twins = twin_classes(inst.zg.graph);
  for (const auto& [key, members] : groups) {
    for (Vertex v : members) {
      if (twins.block_of[v] != twins.block_of[members.front()]) {
        result.verdict = Verdict::kFail;
        result.detail += "; class split across twin blocks";
        return result;
      }
    }
  }
  return result;
}

CheckResult check_wr_size(Context& ctx) {
  const auto built = ctx.wr().size();
  const BigInt predicted = predicted_WR_size(ctx.n());
  return verdict(Check::kWrSize, BigInt(built) == predicted,
                 "|W_R| = " + std::to_string(built) + ", closed form " + predicted.str());
}

CheckResult check_dist2(Context& ctx) {
  const auto& inst = ctx.boolean();
  std::size_t pairs = 0, bad = 0;
  for (Vertex a = 0; a < inst.zg.size(); ++a) {
    const auto& c = inst.zg.classes[a];
    if (set_size(c.zero_rows) != 1 || set_size(c.zero_cols) != 1) continue;
    for (Vertex b = 0; b < inst.zg.size(); ++b) {
      if (b == a) continue;
      ++pairs;
      if (inst.dist.at(a, b) > 2) ++bad;
    }
  }
  return verdict(Check::kDist2, bad == 0 && pairs > 0,
                 std::to_string(pairs) + " pairs with |I_A|=|J_A|=1, " + std::to_string(bad) +
                     " with d > 2");
}

CheckResult check_dist3(Context& ctx) {
  const auto& inst = ctx.boolean();
  std::size_t pairs = 0, bad = 0;
  for (Vertex a = 0; a < inst.zg.size(); ++a) {
    const auto& ca = inst.zg.classes[a];
    for (Vertex b = a + 1; b < inst.zg.size(); ++b) {
      const auto& cb = inst.zg.classes[b];
      const bool rows = ca.zero_cols == 0 && cb.zero_cols == 0 &&
                        (ca.zero_rows & cb.zero_rows) == 0;
      const bool cols = ca.zero_rows == 0 && cb.zero_rows == 0 &&
                        (ca.zero_cols & cb.zero_cols) == 0;
      if (!rows && !cols) continue;
      ++pairs;
      if (inst.dist.at(a, b) != 3) ++bad;
    }
  }
  return verdict(Check::kDist3, bad == 0 && pairs > 0,
                 std::to_string(pairs) + " qualifying pairs, " + std::to_string(bad) +
                     " with d != 3");
}

CheckResult check_wr_resolving(Context& ctx) {
  const auto& inst = ctx.boolean();
  const auto vertices = to_vertices(inst.zg, ctx.wr());
  const auto r = is_resolving(inst.dist, vertices);
  std::string detail = "|W_R| = " + std::to_string(vertices.size()) + " on " +
                       std::to_string(inst.zg.size()) + " vertices";
  if (!r.resolving) {
    detail += "; unresolved pair " + inst.zg.vertices[r.collision->first].to_text() + " / " +
              inst.zg.vertices[r.collision->second].to_text();
  }
  return verdict(Check::kWrResolving, r.resolving, detail);
}

CheckResult from_report(Check check, const DimReport& report) {
  std::ostringstream detail;
  detail << "formula " << (report.formula ? report.formula->str() : "-") << ", constructed "
         << (report.constructed_size ? std::to_string(*report.constructed_size) : "-")
         << ", oracle " << (report.oracle ? std::to_string(*report.oracle) : "-");
  if (report.search) {
    detail << " (forced " << report.search->forced << ", free "
           << report.search->free_vertices << ")";
  }
  if (report.witness) detail << "; constructed set does not resolve";
  return {check, report.verdict, detail.str()};
}

CheckResult check_dim_boolean(Context& ctx) {
  DimOptions options{true, true, ctx.options().graph, ctx.options().search};
  return from_report(Check::kDimBoolean, compute_dimension(builtin_boolean(), ctx.n(), options));
}

CheckResult check_pattern_twins(Context& ctx) {
  const auto& s = ctx.semiring();
  const auto& inst = ctx.general();
  std::map<Rank, std::vector<Vertex>> groups;
  std::size_t bad = 0;
  for (Vertex v = 0; v < inst.zg.size(); ++v) {
    const Matrix p = pattern(inst.zg.vertices[v]);
    groups[p.rank()].push_back(v);
    const auto pv = inst.zg.index_of(embed_boolean(p, s));
    if (!pv || (*pv != v && !are_twins(inst.zg.graph, v, *pv))) ++bad;
  }
  auto result = groups_are_twins(Check::kPatternTwins, inst, groups, "patterns");
  result.detail += "; " + std::to_string(bad) + " matrices not twin to their pattern";
  if (bad) result.verdict = Verdict::kFail;
  return result;
}

CheckResult check_dim_general(Context& ctx) {
  DimOptions options{true, true, ctx.options().graph, ctx.options().search};
  return from_report(Check::kDimGeneral, compute_dimension(ctx.semiring(), ctx.n(), options));
}

}  // namespace

std::string_view check_name(Check check) {
  switch (check) {
    case Check::kTSingleton: return "t-singleton";
    case Check::kTwins: return "twins";
    case Check::kWrSize: return "wr-size";
    case Check::kDist2: return "dist2";
    case Check::kDist3: return "dist3";
    case Check::kWrResolving: return "wr-resolving";
    case Check::kDimBoolean: return "dim-boolean";
    case Check::kPatternTwins: return "pattern-twins";
    case Check::kDimGeneral: return "dim-general";
  }
  return "unknown";
}

std::optional<Check> check_from_name(std::string_view name) {
  for (Check c : kAllChecks)
    if (check_name(c) == name) return c;
  return std::nullopt;
}

std::vector<CheckResult> run_checks(std::span<const Check> checks, const FiniteSemiring& s,
                                    int n, const VerifyOptions& options) {
  if (n < 2) throw InputError("verification needs n >= 2");
  Context ctx(s, n, options);
  std::vector<CheckResult> results;
  for (Check check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{check, Verdict::kUnchecked, {}, 0};
    try {
      switch (check) {
        case Check::kTSingleton: result = check_t_singleton(ctx); break;
        case Check::kTwins: result = check_twins(ctx); break;
        case Check::kWrSize: result = check_wr_size(ctx); break;
        case Check::kDist2: result = check_dist2(ctx); break;
        case Check::kDist3: result = check_dist3(ctx); break;
        case Check::kWrResolving: result = check_wr_resolving(ctx); break;
        case Check::kDimBoolean: result = check_dim_boolean(ctx); break;
        case Check::kPatternTwins: result = check_pattern_twins(ctx); break;
        case Check::kDimGeneral: result = check_dim_general(ctx); break;
      }
    } catch (const BudgetExceeded& e) {
      result = {check, Verdict::kBudgetExceeded, e.what()};
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    results.push_back(std::move(result));
  }
  return results;
}

std::string checks_to_text(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << std::left << std::setw(15) << check_name(r.check) << std::setw(17)
        << verdict_name(r.verdict) << r.detail << "\n";
  }
  return out.str();
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results) {
    out.push_back({{"check", check_name(r.check)},
                   {"verdict", verdict_name(r.verdict)},
                   {"detail", r.detail},
                   {"elapsed_ms", r.elapsed_ms}});
  }
  return out;
}

}  // namespace zdim
