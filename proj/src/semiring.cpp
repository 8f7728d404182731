#include "zdim/semiring.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace zdim {

namespace {

void validate_shape(const SemiringTables& t) {
  if (t.order < 2 || t.order > kMaxSemiringOrder) {
    throw InputError("semiring order must be in [2, " +
                     std::to_string(kMaxSemiringOrder) + "], got " +
                     std::to_string(t.order));
  }
  if (t.one < 0 || t.one >= t.order) {
    throw InputError("'one' index " + std::to_string(t.one) +
                     " is outside the carrier 0.." + std::to_string(t.order - 1));
  }
  auto check_table = [&](const std::vector<std::vector<int>>& table,
                         const char* label) {
    if (static_cast<int>(table.size()) != t.order) {
      throw InputError(std::string(label) + " table has " +
                       std::to_string(table.size()) + " rows, expected " +
                       std::to_string(t.order));
    }
    for (int a = 0; a < t.order; ++a) {
      if (static_cast<int>(table[a].size()) != t.order) {
        throw InputError(std::string(label) + " row " + std::to_string(a) +
                         " has " + std::to_string(table[a].size()) +
                         " entries, expected " + std::to_string(t.order));
      }
      for (int b = 0; b < t.order; ++b) {
        const int v = table[a][b];
        if (v < 0 || v >= t.order) {
          throw InputError(std::string(label) + "[" + std::to_string(a) + "][" +
                           std::to_string(b) + "] = " + std::to_string(v) +
                           " is outside the carrier");
        }
      }
    }
  };
  check_table(t.add, "add");
  check_table(t.mul, "mul");
}

// Returns the witness of the first violation of `axiom`, if any. Loops run in
// lexicographic order so the witness is the minimal-index one.
std::optional<std::vector<int>> find_violation(const SemiringTables& t,
                                               Axiom axiom) {
  const int q = t.order;
  const auto& add = t.add;
  const auto& mul = t.mul;
  switch (axiom) {
    case Axiom::kAddAssociative:
    case Axiom::kMulAssociative: {
      const auto& op = axiom == Axiom::kAddAssociative ? add : mul;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c)
            if (op[op[a][b]][c] != op[a][op[b][c]]) return std::vector{a, b, c};
      return std::nullopt;
    }
    case Axiom::kAddCommutative:
    case Axiom::kMulCommutative: {
      const auto& op = axiom == Axiom::kAddCommutative ? add : mul;
      for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
          if (op[a][b] != op[b][a]) return std::vector{a, b};
      return std::nullopt;
    }
    case Axiom::kLeftDistributive:
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c)
            if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]])
              return std::vector{a, b, c};
      return std::nullopt;
    case Axiom::kRightDistributive:
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c)
            if (mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]])
              return std::vector{a, b, c};
      return std::nullopt;
    case Axiom::kIdentities:
      for (int a = 0; a < q; ++a) {
        if (add[0][a] != a || add[a][0] != a || mul[t.one][a] != a ||
            mul[a][t.one] != a) {
          return std::vector{a};
        }
      }
      return std::nullopt;
    case Axiom::kAnnihilation:
      for (int a = 0; a < q; ++a)
        if (mul[0][a] != 0 || mul[a][0] != 0) return std::vector{a};
      return std::nullopt;
    case Axiom::kEntire:
      for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
          if (mul[a][b] == 0) return std::vector{a, b};
      return std::nullopt;
    case Axiom::kAntinegative:
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          if ((a != 0 || b != 0) && add[a][b] == 0) return std::vector{a, b};
      return std::nullopt;
  }
  return std::nullopt;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<std::vector<int>> table_from_json(const nlohmann::json& doc,
                                              const char* key) {
  if (!doc.contains(key)) {
    throw InputError(std::string("semiring definition is missing '") + key + "'");
  }
  const auto& rows = doc.at(key);
  if (!rows.is_array()) {
    throw InputError(std::string("'") + key + "' must be an array of rows");
  }
  std::vector<std::vector<int>> table;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!rows[a].is_array()) {
      throw InputError(std::string(key) + " row " + std::to_string(a) +
                       " is not an array");
    }
    std::vector<int> row;
    for (std::size_t b = 0; b < rows[a].size(); ++b) {
      const auto& cell = rows[a][b];
      if (!cell.is_number_integer()) {
        throw InputError(std::string(key) + "[" + std::to_string(a) + "][" +
                         std::to_string(b) + "] is not an integer");
      }
      row.push_back(cell.get<int>());
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kAddAssociative: return "add_associative";
    case Axiom::kMulAssociative: return "mul_associative";
    case Axiom::kAddCommutative: return "add_commutative";
    case Axiom::kLeftDistributive: return "left_distributive";
    case Axiom::kRightDistributive: return "right_distributive";
    case Axiom::kIdentities: return "identities";
    case Axiom::kAnnihilation: return "annihilation";
    case Axiom::kMulCommutative: return "mul_commutative";
    case Axiom::kEntire: return "entire";
    case Axiom::kAntinegative: return "antinegative";
  }
  return "unknown";
}

const AxiomVerdict& AxiomReport::verdict(Axiom axiom) const {
  for (const auto& v : verdicts) {
    if (v.axiom == axiom) return v;
  }
  throw std::logic_error("axiom missing from report");
}

bool AxiomReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const AxiomVerdict& v) { return v.holds; });
}

std::string AxiomReport::to_text() const {
  std::ostringstream out;
  out << "semiring: " << name << "\n";
  for (const auto& v : verdicts) {
    out << "  " << axiom_name(v.axiom) << ": " << (v.holds ? "pass" : "FAIL");
    if (!v.holds) out << "  witness (" << join(v.witness) << ")";
    out << "\n";
  }
  out << "verdict: " << (all_hold() ? "pass" : "fail") << "\n";
  return out.str();
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json entry = {{"axiom", axiom_name(v.axiom)}, {"holds", v.holds}};
    entry["witness"] = v.holds ? nlohmann::json(nullptr) : nlohmann::json(v.witness);
    axioms.push_back(std::move(entry));
  }
  return {{"name", name}, {"axioms", axioms},
          {"verdict", all_hold() ? "pass" : "fail"}};
}

bool witness_reproduces(const SemiringTables& t, Axiom axiom,
                        const std::vector<int>& w) {
  const auto& add = t.add;
  const auto& mul = t.mul;
  switch (axiom) {
    case Axiom::kAddAssociative:
      return w.size() == 3 && add[add[w[0]][w[1]]][w[2]] != add[w[0]][add[w[1]][w[2]]];
    case Axiom::kMulAssociative:
      return w.size() == 3 && mul[mul[w[0]][w[1]]][w[2]] != mul[w[0]][mul[w[1]][w[2]]];
    case Axiom::kAddCommutative:
      return w.size() == 2 && add[w[0]][w[1]] != add[w[1]][w[0]];
    case Axiom::kMulCommutative:
      return w.size() == 2 && mul[w[0]][w[1]] != mul[w[1]][w[0]];
    case Axiom::kLeftDistributive:
      return w.size() == 3 &&
             mul[w[0]][add[w[1]][w[2]]] != add[mul[w[0]][w[1]]][mul[w[0]][w[2]]];
    case Axiom::kRightDistributive:
      return w.size() == 3 &&
             mul[add[w[0]][w[1]]][w[2]] != add[mul[w[0]][w[2]]][mul[w[1]][w[2]]];
    case Axiom::kIdentities:
      return w.size() == 1 && (add[0][w[0]] != w[0] || add[w[0]][0] != w[0] ||
                               mul[t.one][w[0]] != w[0] || mul[w[0]][t.one] != w[0]);
    case Axiom::kAnnihilation:
      return w.size() == 1 && (mul[0][w[0]] != 0 || mul[w[0]][0] != 0);
    case Axiom::kEntire:
      return w.size() == 2 && w[0] != 0 && w[1] != 0 && mul[w[0]][w[1]] == 0;
    case Axiom::kAntinegative:
      return w.size() == 2 && (w[0] != 0 || w[1] != 0) && add[w[0]][w[1]] == 0;
  }
  return false;
}

AxiomReport check_axioms(const SemiringTables& tables) {
  validate_shape(tables);
  AxiomReport report;
  report.name = tables.name;
  for (Axiom axiom : kAllAxioms) {
    AxiomVerdict verdict{axiom, true, {}};
    if (auto witness = find_violation(tables, axiom)) {
      verdict.holds = false;
      verdict.witness = std::move(*witness);
    }
    report.verdicts.push_back(std::move(verdict));
  }
  return report;
}

AxiomViolation::AxiomViolation(AxiomReport report)
    : std::runtime_error([&] {
        std::string msg = "semiring '" + report.name + "' rejected:";
        for (const auto& v : report.verdicts) {
          if (!v.holds) {
            msg += " " + std::string(axiom_name(v.axiom)) + " fails at (" +
                   join(v.witness) + ");";
          }
        }
        return msg;
      }()),
      report_(std::move(report)) {}

FiniteSemiring FiniteSemiring::validated(const SemiringTables& tables) {
  AxiomReport report = check_axioms(tables);
  if (!report.all_hold()) throw AxiomViolation(std::move(report));

  FiniteSemiring s;
  s.name_ = tables.name;
  s.order_ = tables.order;
  s.one_ = static_cast<Element>(tables.one);
  s.add_.reserve(tables.order * tables.order);
  s.mul_.reserve(tables.order * tables.order);
  for (int a = 0; a < tables.order; ++a) {
    for (int b = 0; b < tables.order; ++b) {
      s.add_.push_back(static_cast<Element>(tables.add[a][b]));
      s.mul_.push_back(static_cast<Element>(tables.mul[a][b]));
    }
  }
  return s;
}

SemiringTables FiniteSemiring::tables() const {
  SemiringTables t;
  t.name = name_;
  t.order = order_;
  t.one = one_;
  t.add.assign(order_, std::vector<int>(order_));
  t.mul.assign(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      t.add[a][b] = add_[a * order_ + b];
      t.mul[a][b] = mul_[a * order_ + b];
    }
  }
  return t;
}

FiniteSemiring builtin_boolean() {
  SemiringTables t;
  t.name = "boolean";
  t.order = 2;
  t.one = 1;
  t.add = {{0, 1}, {1, 1}};
  t.mul = {{0, 0}, {0, 1}};
  return FiniteSemiring::validated(t);
}

FiniteSemiring builtin_chain(int q) {
  if (q < 2 || q > kMaxSemiringOrder) {
    throw InputError("chain order must be in [2, " +
                     std::to_string(kMaxSemiringOrder) + "], got " +
                     std::to_string(q));
  }
  SemiringTables t;
  t.name = "chain" + std::to_string(q);
  t.order = q;
  t.one = q - 1;
  t.add.assign(q, std::vector<int>(q));
  t.mul.assign(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      t.add[a][b] = std::max(a, b);
      t.mul[a][b] = std::min(a, b);
    }
  }
  return FiniteSemiring::validated(t);
}

FiniteSemiring builtin_by_name(std::string_view name) {
  if (name == "boolean" || name == "B") return builtin_boolean();
  constexpr std::string_view prefix = "chain";
  if (name.substr(0, prefix.size()) == prefix) {
    const auto digits = name.substr(prefix.size());
    int q = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return builtin_chain(q);
    }
  }
  throw InputError("unknown builtin semiring '" + std::string(name) +
                   "' (expected 'boolean' or 'chain<q>')");
}

SemiringTables parse_semiring_tables(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("semiring definition must be a JSON object");
  SemiringTables t;
  try {
    t.name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("order") || !doc.at("order").is_number_integer()) {
      throw InputError("semiring definition needs an integer 'order'");
    }
    t.order = doc.at("order").get<int>();
    if (!doc.contains("one") || !doc.at("one").is_number_integer()) {
      throw InputError("semiring definition needs an integer 'one'");
    }
    t.one = doc.at("one").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("semiring definition: ") + e.what());
  }
  t.add = table_from_json(doc, "add");
  t.mul = table_from_json(doc, "mul");
  return t;
}

nlohmann::json semiring_to_json(const SemiringTables& t) {
  return {{"name", t.name}, {"order", t.order}, {"one", t.one},
          {"add", t.add},   {"mul", t.mul}};
}

FiniteSemiring load_semiring(const nlohmann::json& document) {
  return FiniteSemiring::validated(parse_semiring_tables(document));
}

FiniteSemiring load_semiring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open semiring file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
  return load_semiring(doc);
}

}  // namespace zdim
