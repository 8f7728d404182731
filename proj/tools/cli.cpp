#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zdim/counting.hpp"
#include "zdim/metric.hpp"
#include "zdim/semiring.hpp"
#include "zdim/verify.hpp"
#include "zdim/zdgraph.hpp"

namespace zdim::cli {

namespace {

struct RunConfig {
  int n = 2;
  std::string builtin;
  std::string file;
  int threads = 1;
  std::uint64_t max_matrices = kDefaultMatrixCap;
  std::uint64_t max_nodes = SearchOptions{}.node_budget;
  bool json = false;

  // counts
  bool check = false;
  // graph
  std::string dot_path;
  std::string csv_path;
  // dim
  bool exact = false;
  bool construct = false;
  std::string basis_path;
  // verify
  std::vector<std::string> lemmas;
  std::vector<std::string> theorems;
  bool all = false;

  GraphOptions graph() const { return {max_matrices, threads}; }
  SearchOptions search() const { return {max_nodes}; }
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_n) {
  auto* builtin = cmd->add_option("--builtin", cfg.builtin,
                                  "builtin semiring: boolean or chain<q> (default boolean)");
  auto* file = cmd->add_option("--file", cfg.file, "semiring definition JSON file");
  builtin->excludes(file);
  if (needs_n) {
    cmd->add_option("--n", cfg.n, "matrix dimension")->check(CLI::Range(2, kMaxDimension));
    cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--max-matrices", cfg.max_matrices, "cap on enumerated matrices")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-nodes", cfg.max_nodes, "cap on search nodes")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_flag("--json", cfg.json, "emit JSON");
}

FiniteSemiring load(const RunConfig& cfg) {
  if (!cfg.file.empty()) return load_semiring_file(cfg.file);
  return builtin_by_name(cfg.builtin.empty() ? "boolean" : cfg.builtin);
}

int cmd_axioms(const RunConfig& cfg, std::ostream& out) {
  SemiringTables tables;
  if (!cfg.file.empty()) {
    std::ifstream in(cfg.file);
    if (!in) throw InputError("cannot open semiring file '" + cfg.file + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("'" + cfg.file + "': " + e.what());
    }
    tables = parse_semiring_tables(doc);
  } else {
    tables = load(cfg).tables();
  }
  const AxiomReport report = check_axioms(tables);
  if (cfg.json) {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << report.to_text();
  }
  return report.all_hold() ? kExitPass : kExitFail;
}

int cmd_counts(const RunConfig& cfg, std::ostream& out) {
  const FiniteSemiring s = load(cfg);
  const int n = cfg.n;
  const int q = s.order();

  // t[i][j] = class size for |I| = i, |J| = j; the (n, n) corner is the zero matrix.
  std::vector<std::vector<BigInt>> t(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = count_no_zero_lines(n - i, n - j, q);
  const BigInt zero_divisors = count_zero_divisors(n, q);

  bool ok = true;
  std::vector<std::string> mismatches;
  if (cfg.check) {
    std::map<SupportClass, BigInt> observed;
    BigInt observed_z = 0;
    for_each_matrix(
        n, q,
        [&](const Matrix& m) {
          const SupportClass cls{m.zero_rows(), m.zero_cols()};
          observed[cls] += 1;
          if (cls.zero_rows != 0 || cls.zero_cols != 0) observed_z += 1;
        },
        cfg.max_matrices);
    const IndexSet full = full_set(n);
    for (IndexSet rows = 0; rows < full; ++rows) {
      for (IndexSet cols = 0; cols < full; ++cols) {
        const BigInt seen = observed.count({rows, cols}) ? observed[{rows, cols}] : BigInt(0);
        if (seen != t[set_size(rows)][set_size(cols)]) {
          mismatches.push_back(to_text(SupportClass{rows, cols}) + ": enumerated " + seen.str() +
                               ", formula " + t[set_size(rows)][set_size(cols)].str());
        }
      }
    }
    if (observed_z != zero_divisors) {
      mismatches.push_back("|Z|: enumerated " + observed_z.str() + ", formula " +
                           zero_divisors.str());
    }
    ok = mismatches.empty();
  }

  if (cfg.json) {
    nlohmann::json table = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < n; ++j) row.push_back(bigint_to_json(t[i][j]));
      table.push_back(row);
    }
    nlohmann::json doc = {{"semiring", s.name()},
                          {"order", q},
                          {"n", n},
                          {"class_counts", table},
                          {"zero_divisors", bigint_to_json(zero_divisors)},
                          {"vertices", bigint_to_json(zero_divisors - 1)}};
    if (cfg.check) {
      doc["check"] = {{"verdict", ok ? "pass" : "fail"}, {"mismatches", mismatches}};
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "semiring " << s.name() << " (q = " << q << "), n = " << n << "\n";
    out << "class sizes |T_{I,J}| by (|I|, |J|):\n";
    out << "  i\\j";
    for (int j = 0; j < n; ++j) out << std::setw(12) << j;
    out << "\n";
    for (int i = 0; i < n; ++i) {
      out << std::setw(5) << i;
      for (int j = 0; j < n; ++j) out << std::setw(12) << t[i][j].str();
      out << "\n";
    }
    out << "zero divisors |Z| = " << zero_divisors.str() << "\n";
    out << "vertices          = " << BigInt(zero_divisors - 1).str() << "\n";
    if (cfg.check) {
      out << "enumeration check: " << (ok ? "pass" : "FAIL") << "\n";
      for (const auto& m : mismatches) out << "  " << m << "\n";
    }
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_graph(const RunConfig& cfg, std::ostream& out) {
  const FiniteSemiring s = load(cfg);
  const auto zg = build_graph(s, cfg.n, cfg.graph());
  const auto dist = all_pairs_distances(zg.graph, cfg.threads);
  const auto twins = twin_classes(zg.graph);

  if (!cfg.dot_path.empty()) {
    std::ofstream f(cfg.dot_path);
    if (!f) throw InputError("cannot write '" + cfg.dot_path + "'");
    write_dot(zg, f);
  }
  if (!cfg.csv_path.empty()) {
    std::ofstream f(cfg.csv_path);
    if (!f) throw InputError("cannot write '" + cfg.csv_path + "'");
    write_distance_csv(zg, dist, f);
  }

  std::optional<int> diam;
  if (dist.connected()) diam = diameter(dist);
  // (size, kind) -> number of blocks
  std::map<std::pair<std::size_t, std::string>, std::size_t> census;
  for (const auto& block : twins.blocks) {
    const char* kind = block.kind == TwinKind::kOpen     ? "open"
                       : block.kind == TwinKind::kClosed ? "closed"
                                                          : "single";
    ++census[{block.members.size(), kind}];
  }

  if (cfg.json) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [key, count] : census) {
      blocks.push_back({{"size", key.first}, {"kind", key.second}, {"count", count}});
    }
    out << nlohmann::json{{"semiring", s.name()},
                          {"n", cfg.n},
                          {"vertices", zg.size()},
                          {"edges", zg.graph.edge_count()},
                          {"connected", dist.connected()},
                          {"diameter", diam ? nlohmann::json(*diam) : nlohmann::json(nullptr)},
                          {"twin_blocks", twins.blocks.size()},
                          {"twin_census", blocks}}
               .dump(2)
        << "\n";
  } else {
    out << "semiring " << s.name() << ", n = " << cfg.n << "\n";
    out << "vertices    " << zg.size() << "\n";
    out << "edges       " << zg.graph.edge_count() << "\n";
    out << "diameter    " << (diam ? std::to_string(*diam) : "disconnected") << "\n";
    out << "twin blocks " << twins.blocks.size() << "\n";
    for (const auto& [key, count] : census) {
      out << "  " << count << " x size " << key.first << " (" << key.second << ")\n";
    }
  }
  return diam ? kExitPass : kExitFail;
}

int cmd_dim(const RunConfig& cfg, std::ostream& out) {
  const FiniteSemiring s = load(cfg);
  DimOptions options{cfg.exact, cfg.construct, cfg.graph(), cfg.search()};
  const DimReport report = compute_dimension(s, cfg.n, options);

  const bool have_basis = cfg.construct || (cfg.exact && report.oracle);
  if (!cfg.basis_path.empty() && have_basis) {
    std::ofstream f(cfg.basis_path);
    if (!f) throw InputError("cannot write '" + cfg.basis_path + "'");
    for (Rank r : report.basis_ranks) f << Matrix::from_rank(r, cfg.n, s.order()).to_text() << "\n";
  }
  if (cfg.json) {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << report.to_text();
    if (cfg.construct && cfg.basis_path.empty()) {
      out << "constructed set:\n";
      for (Rank r : report.basis_ranks) {
        out << "  " << Matrix::from_rank(r, cfg.n, s.order()).to_text() << "\n";
      }
    }
  }
  switch (report.verdict) {
    case Verdict::kFail: return kExitFail;
    case Verdict::kBudgetExceeded: return kExitBudget;
    default: return kExitPass;
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const FiniteSemiring s = load(cfg);
  std::vector<Check> checks;
  auto add = [&](const std::string& name) {
    auto check = check_from_name(name);
    if (!check) throw InputError("unknown check '" + name + "'");
    if (std::find(checks.begin(), checks.end(), *check) == checks.end()) checks.push_back(*check);
  };
  if (cfg.all) {
    checks.assign(std::begin(kAllChecks), std::end(kAllChecks));
  } else {
    for (const auto& l : cfg.lemmas) add(l);
    for (const auto& t : cfg.theorems) add(t);
  }
  if (checks.empty()) throw InputError("nothing to verify: pass --lemma, --theorem or --all");

  VerifyOptions options{cfg.graph(), cfg.search()};
  const auto results = run_checks(checks, s, cfg.n, options);
  if (cfg.json) {
    out << nlohmann::json{{"semiring", s.name()}, {"n", cfg.n}, {"checks", checks_to_json(results)}}
               .dump(2)
        << "\n";
  } else {
    out << "semiring " << s.name() << ", n = " << cfg.n << "\n" << checks_to_text(results);
  }
  bool failed = false, budget = false;
  for (const auto& r : results) {
    failed |= r.verdict == Verdict::kFail;
    budget |= r.verdict == Verdict::kBudgetExceeded;
  }
  return failed ? kExitFail : budget ? kExitBudget : kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zdim: zero-divisor graphs of matrix semirings and their metric dimension"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* axioms = app.add_subcommand("axioms", "check the semiring axioms");
  add_common(axioms, cfg, false);

  auto* counts = app.add_subcommand("counts", "class sizes and zero-divisor counts");
  add_common(counts, cfg, true);
  counts->add_flag("--check", cfg.check, "re-derive every count by enumeration");

  auto* graph = app.add_subcommand("graph", "build the zero-divisor graph");
  add_common(graph, cfg, true);
  graph->add_option("--dot", cfg.dot_path, "write DOT to this path");
  graph->add_option("--csv", cfg.csv_path, "write the distance matrix CSV to this path");

  auto* dim = app.add_subcommand("dim", "metric dimension report");
  add_common(dim, cfg, true);
  dim->add_flag("--exact", cfg.exact, "run the exact branch-and-bound oracle");
  dim->add_flag("--construct", cfg.construct, "build and check the explicit resolving set");
  dim->add_option("--basis-file", cfg.basis_path, "write the basis, one matrix per line");

  auto* verify = app.add_subcommand("verify", "run exhaustive checks of the results");
  add_common(verify, cfg, true);
  verify->add_option("--lemma", cfg.lemmas,
                     "t-singleton, twins, wr-size, dist2, dist3, pattern-twins");
  verify->add_option("--theorem", cfg.theorems, "wr-resolving, dim-boolean, dim-general");
  verify->add_flag("--all", cfg.all, "run every check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitFail;
  }

  try {
    if (axioms->parsed()) return cmd_axioms(cfg, out);
    if (counts->parsed()) return cmd_counts(cfg, out);
    if (graph->parsed()) return cmd_graph(cfg, out);
    if (dim->parsed()) return cmd_dim(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const AxiomViolation& e) {
    err << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}

}  // namespace zdim::cli
