#pragma once

#include <string>

#include "growthlab/group.hpp"
#include "json.hpp"

namespace growthlab {

// Group-spec documents:
//   {"type": "IntegerMatrixGroup", "dimension": 3,
//    "generators": [["1","1","0", "0","1","0", "0","0","1"], ...]}
//   {"type": "FreeAbelian", "rank": 2}
//   {"type": "FiniteCyclic", "order": 5}
//   {"type": "DirectProduct", "factors": [<spec>, ...]}
// Matrix entries are decimal strings (plain JSON integers are accepted too).
// A generator may be given flat (row-major) or as a list of rows.

GroupSpec group_spec_from_json(const nlohmann::json& doc);
nlohmann::json group_spec_to_json(const GroupSpec& spec);
GroupSpec load_group_spec_file(const std::string& path);

}  // namespace growthlab
