#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zdim/errors.hpp"

namespace zdim {

using Element = std::uint8_t;

// Largest carrier we accept; axiom checking is cubic in the order.
inline constexpr int kMaxSemiringOrder = 16;

// Unvalidated operation tables as read from a definition file.
struct SemiringTables {
  std::string name;
  int order = 0;
  int one = 1;
  std::vector<std::vector<int>> add;
  std::vector<std::vector<int>> mul;
};

enum class Axiom {
  kAddAssociative,
  kMulAssociative,
  kAddCommutative,
  kLeftDistributive,
  kRightDistributive,
  kIdentities,
  kAnnihilation,
  kMulCommutative,
  kEntire,
  kAntinegative,
};

inline constexpr std::array<Axiom, 10> kAllAxioms = {
    Axiom::kAddAssociative,  Axiom::kMulAssociative,    Axiom::kAddCommutative,
    Axiom::kLeftDistributive, Axiom::kRightDistributive, Axiom::kIdentities,
    Axiom::kAnnihilation,    Axiom::kMulCommutative,    Axiom::kEntire,
    Axiom::kAntinegative,
};

std::string_view axiom_name(Axiom axiom);

struct AxiomVerdict {
  Axiom axiom;
  bool holds = true;
  // Carrier indices of the first violation found in lexicographic order.
  std::vector<int> witness;
};

struct AxiomReport {
  std::string name;
  std::vector<AxiomVerdict> verdicts;  // one per entry of kAllAxioms, same order

  const AxiomVerdict& verdict(Axiom axiom) const;
  bool holds(Axiom axiom) const { return verdict(axiom).holds; }
  // Semiring axioms plus commutativity, entireness and antinegativity.
  bool all_hold() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Re-evaluates a witness against the tables; true iff it still exhibits the
// violation of `axiom`.
bool witness_reproduces(const SemiringTables& tables, Axiom axiom,
                        const std::vector<int>& witness);

// Exhaustive O(q^3) check. Throws InputError naming the offending cell when
// the tables are malformed.
AxiomReport check_axioms(const SemiringTables& tables);

class AxiomViolation : public std::runtime_error {
 public:
  explicit AxiomViolation(AxiomReport report);
  const AxiomReport& report() const { return report_; }

 private:
  AxiomReport report_;
};

// A finite commutative entire antinegative semiring. Zero is carrier index 0.
// Instances only exist after validation and are immutable.
class FiniteSemiring {
 public:
  // Throws InputError for malformed tables, AxiomViolation otherwise.
  static FiniteSemiring validated(const SemiringTables& tables);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  Element zero() const { return 0; }
  Element one() const { return one_; }
  Element add(Element a, Element b) const { return add_[a * order_ + b]; }
  Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
  bool is_boolean() const { return order_ == 2; }

  SemiringTables tables() const;

  friend bool operator==(const FiniteSemiring& lhs, const FiniteSemiring& rhs) {
    return lhs.order_ == rhs.order_ && lhs.one_ == rhs.one_ &&
           lhs.add_ == rhs.add_ && lhs.mul_ == rhs.mul_;
  }

 private:
  FiniteSemiring() = default;

  std::string name_;
  int order_ = 0;
  Element one_ = 1;
  std::vector<Element> add_;
  std::vector<Element> mul_;
};

FiniteSemiring builtin_boolean();

// Chain 0 < 1 < ... < q-1 with add = max, mul = min, one = q-1.
FiniteSemiring builtin_chain(int q);

// Accepts "boolean" or "chain<q>", e.g. "chain3".
FiniteSemiring builtin_by_name(std::string_view name);

SemiringTables parse_semiring_tables(const nlohmann::json& document);
nlohmann::json semiring_to_json(const SemiringTables& tables);

FiniteSemiring load_semiring(const nlohmann::json& document);
FiniteSemiring load_semiring_file(const std::string& path);

}  // namespace zdim
