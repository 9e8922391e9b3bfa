#include "growthlab/group_spec_json.hpp"

#include <fstream>

namespace growthlab {

namespace {

using nlohmann::json;

mpz_class parse_entry(const json& v) {
  if (v.is_number_integer()) return mpz_class(v.get<long>());
  if (!v.is_string()) throw GroupSpecError("matrix entries must be integers or decimal strings");
  mpz_class out;
  const std::string s = v.get<std::string>();
  if (s.empty() || out.set_str(s, 10) != 0) throw GroupSpecError("malformed matrix entry '" + s + "'");
  return out;
}

std::size_t positive(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number_integer() || doc[field].get<long long>() <= 0) {
    throw GroupSpecError(std::string("field '") + field + "' must be a positive integer");
  }
  return doc[field].get<std::size_t>();
}

IntMatrix parse_matrix(const json& g, std::size_t n) {
  if (!g.is_array()) throw GroupSpecError("generator must be an array");
  IntMatrix m{n, {}};
  for (const auto& item : g) {
    if (item.is_array()) {
      for (const auto& e : item) m.entries.push_back(parse_entry(e));
    } else {
      m.entries.push_back(parse_entry(item));
    }
  }
  if (m.entries.size() != n * n) throw GroupSpecError("generator does not have dimension^2 entries");
  return m;
}

}  // namespace

GroupSpec group_spec_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw GroupSpecError("group spec must be an object with a string 'type'");
  }
  const std::string type = doc["type"].get<std::string>();
  if (type == "FreeAbelian") return GroupSpec::free_abelian(positive(doc, "rank"));
  if (type == "FiniteCyclic") return GroupSpec::cyclic(positive(doc, "order"));
  if (type == "IntegerMatrixGroup") {
    const std::size_t n = positive(doc, "dimension");
    if (!doc.contains("generators") || !doc["generators"].is_array()) {
      throw GroupSpecError("'generators' must be an array");
    }
    std::vector<IntMatrix> gens;
    for (const auto& g : doc["generators"]) gens.push_back(parse_matrix(g, n));
    return GroupSpec::matrices(n, std::move(gens));
  }
  if (type == "DirectProduct") {
    if (!doc.contains("factors") || !doc["factors"].is_array()) {
      throw GroupSpecError("'factors' must be an array");
    }
    std::vector<GroupSpec> factors;
    for (const auto& f : doc["factors"]) factors.push_back(group_spec_from_json(f));
    return GroupSpec::product(std::move(factors));
  }
  throw GroupSpecError("unknown group type '" + type + "'");
}

json group_spec_to_json(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::FreeAbelian:
      return {{"type", "FreeAbelian"}, {"rank", spec.rank}};
    case GroupSpec::Kind::FiniteCyclic:
      return {{"type", "FiniteCyclic"}, {"order", spec.order}};
    case GroupSpec::Kind::IntegerMatrixGroup: {
      json gens = json::array();
      for (const auto& g : spec.generators) {
        json flat = json::array();
        for (const auto& e : g.entries) flat.push_back(e.get_str());
        gens.push_back(std::move(flat));
      }
      return {{"type", "IntegerMatrixGroup"}, {"dimension", spec.dimension}, {"generators", gens}};
    }
    case GroupSpec::Kind::DirectProduct: {
      json factors = json::array();
      for (const auto& f : spec.factors) factors.push_back(group_spec_to_json(f));
      return {{"type", "DirectProduct"}, {"factors", factors}};
    }
  }
  return json();
}

GroupSpec load_group_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupSpecError("cannot open group spec file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw GroupSpecError("malformed group spec file '" + path + "': " + e.what());
  }
  return group_spec_from_json(doc);
}

}  // namespace growthlab
