#include "growthlab/report.hpp"

namespace growthlab {

std::string_view to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Satisfied: return "Satisfied";
    case BoundStatus::Violated: return "Violated";
    case BoundStatus::Undecided: return "Undecided";
  }
  return "Undecided";
}

std::string_view to_string(StepStatus s) {
  switch (s) {
    case StepStatus::CertifiedTrue: return "CertifiedTrue";
    case StepStatus::CertifiedFalse: return "CertifiedFalse";
    case StepStatus::Undecided: return "Undecided";
  }
  return "Undecided";
}

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BoundStatus status_le(Ordering o) {
  switch (o) {
    case Ordering::Less:
    case Ordering::Equal: return BoundStatus::Satisfied;
    case Ordering::Greater: return BoundStatus::Violated;
    case Ordering::Undecided: break;
  }
  return BoundStatus::Undecided;
}

StepStatus status_lt(Ordering o) {
  switch (o) {
    case Ordering::Less: return StepStatus::CertifiedTrue;
    case Ordering::Equal:
    case Ordering::Greater: return StepStatus::CertifiedFalse;
    case Ordering::Undecided: break;
  }
  return StepStatus::Undecided;
}

BoundReport check_lower_bound(std::string name, Parameters params, const mpq_class& bound,
                              const mpz_class& measured) {
  BoundReport r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  r.bound = rational_string(bound);
  r.measured = measured.get_str();
  r.status = mpq_class(measured) >= bound ? BoundStatus::Satisfied : BoundStatus::Violated;
  return r;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  nlohmann::json j = {{"name", r.name}, {"parameters", params}, {"bound", r.bound},
                      {"status", std::string(to_string(r.status))}};
  j["measured"] = r.measured ? nlohmann::json(*r.measured) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const StepReport& r) {
  return {{"id", r.id},
          {"description", r.description},
          {"lhs", r.lhs},
          {"relation", r.relation},
          {"rhs", r.rhs},
          {"status", std::string(to_string(r.status))},
          {"precision", r.precision},
          {"counts_toward_verdict", r.counts_toward_verdict}};
}

int exit_code_for(const std::vector<BoundStatus>& statuses) {
  bool undecided = false;
  for (auto s : statuses) {
    if (s == BoundStatus::Violated) return 1;
    if (s == BoundStatus::Undecided) undecided = true;
  }
  return undecided ? 2 : 0;
}

int exit_code_for(const std::vector<StepReport>& steps) {
  bool undecided = false;
  for (const auto& s : steps) {
    if (!s.counts_toward_verdict) continue;
    if (s.status == StepStatus::CertifiedFalse) return 1;
    if (s.status == StepStatus::Undecided) undecided = true;
  }
  return undecided ? 2 : 0;
}

}  // namespace growthlab
