#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "growthlab/tower.hpp"
#include "json.hpp"

namespace growthlab {

inline constexpr int kSchemaVersion = 1;

enum class BoundStatus { Satisfied, Violated, Undecided };
enum class StepStatus { CertifiedTrue, CertifiedFalse, Undecided };

std::string_view to_string(BoundStatus s);
std::string_view to_string(StepStatus s);

/// "num/den", or "num" for integers.
std::string rational_string(const mpq_class& q);

/// Maps a certified comparison "lhs <= rhs" onto a bound status.
BoundStatus status_le(Ordering lhs_vs_rhs);
/// Maps a certified comparison "lhs < rhs" onto a step status.
StepStatus status_lt(Ordering lhs_vs_rhs);

using Parameters = std::vector<std::pair<std::string, std::string>>;

struct BoundReport {
  std::string name;
  Parameters parameters;
  std::string bound;
  std::optional<std::string> measured;
  BoundStatus status = BoundStatus::Undecided;
};

/// Lower bound `bound` against a measured count: Satisfied iff measured >= bound.
BoundReport check_lower_bound(std::string name, Parameters params, const mpq_class& bound,
                              const mpz_class& measured);

/// One certified inequality lhs < rhs (or the relation named in `relation`).
struct StepReport {
  std::string id;
  std::string description;
  std::string lhs;
  std::string relation = "<";
  std::string rhs;
  StepStatus status = StepStatus::Undecided;
  unsigned precision = 0;
  /// Probe rows are informational and do not enter the overall verdict.
  bool counts_toward_verdict = true;
};

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const StepReport& r);

/// 0 all true, 1 a false result present, 2 undecided present and none false.
int exit_code_for(const std::vector<BoundStatus>& statuses);
int exit_code_for(const std::vector<StepReport>& steps);

}  // namespace growthlab
