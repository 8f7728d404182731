#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zdim/metric.hpp"

namespace zdim {

enum class Check {
  kTSingleton,    // classes with |I| = n-1 or |J| = n-1 are singletons
  kTwins,         // members of one T_{I,J} are twins
  kWrSize,        // |W_R| matches its closed form
  kDist2,         // |I_A| = |J_A| = 1 implies d(A,B) <= 2
  kDist3,         // disjoint zero-row (or zero-column) sets give d(A,B) = 3
  kWrResolving,   // W_R resolves Gamma(M_n(B))
  kDimBoolean,    // formula = |W_R| = exact dimension for B
  kPatternTwins,  // A ~ patt(A), and equal patterns are twins over S
  kDimGeneral,    // formula = constructed size = exact dimension over S
};

inline constexpr Check kAllChecks[] = {
    Check::kTSingleton,   Check::kTwins,      Check::kWrSize,
    Check::kDist2,        Check::kDist3,      Check::kWrResolving,
    Check::kDimBoolean,   Check::kPatternTwins, Check::kDimGeneral,
};

std::string_view check_name(Check check);
std::optional<Check> check_from_name(std::string_view name);

struct CheckResult {
  Check check;
  Verdict verdict = Verdict::kUnchecked;
  std::string detail;
  double elapsed_ms = 0;
};

struct VerifyOptions {
  GraphOptions graph;
  SearchOptions search;
};

// Runs the checks at dimension n. Boolean checks always use B; the pattern
// and general-dimension checks use `s`. Graphs are built once and shared.
std::vector<CheckResult> run_checks(std::span<const Check> checks, const FiniteSemiring& s,
                                    int n, const VerifyOptions& options = {});

std::string checks_to_text(const std::vector<CheckResult>& results);
nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

}  // namespace zdim
