#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "growthlab/group.hpp"
#include "growthlab/group_spec_json.hpp"

using namespace growthlab;

namespace {

constexpr std::size_t kBudget = 10'000'000;

IntMatrix mat(std::size_t n, std::vector<long> v) {
  IntMatrix m{n, {}};
  for (long x : v) m.entries.emplace_back(x);
  return m;
}

}  // namespace

TEST_CASE("building groups") {
  const GroupModel z = build_group(GroupSpec::free_abelian(1));
  CHECK(z.valency() == 2);

  CHECK_THROWS_AS(build_group(GroupSpec::matrices(2, {mat(2, {1, 1, 0, 2})})), NonInvertibleGenerator);
  CHECK_THROWS_AS(build_group(GroupSpec::matrices(2, {})), EmptyGeneratorSet);
  CHECK_THROWS_AS(build_group(GroupSpec::matrices(2, {IntMatrix::identity(2)})), IdentityGenerator);

  const GroupModel h = build_group(GroupSpec::heisenberg());
  CHECK(h.valency() == 4);

  // an involution is a single edge
  const GroupModel d = build_group(GroupSpec::infinite_dihedral());
  CHECK(d.valency() == 2);
  const GroupModel c2 = build_group(GroupSpec::cyclic(2));
  CHECK(c2.valency() == 1);
}

TEST_CASE("group laws") {
  const GroupModel h = build_group(GroupSpec::unitriangular(4));
  const auto& x = h.supplied();
  const GroupElement g = compose(compose(x[0], x[1]), inverse(x[2]));
  CHECK(compose(h.identity(), g) == g);
  CHECK(compose(g, h.identity()) == g);
  CHECK(h.is_identity(compose(g, inverse(g))));
  CHECK(power(g, 3) == compose(g, compose(g, g)));
  CHECK(power(g, -2) == inverse(compose(g, g)));
  CHECK(power(g, 0) == h.identity());

  const IntMatrix m = mat(3, {2, 1, 0, 1, 1, 0, 0, 0, 1});
  CHECK(determinant(m) == 1);
  CHECK(m * inverse_unimodular(m) == IntMatrix::identity(3));
  CHECK_THROWS(inverse_unimodular(mat(2, {2, 0, 0, 1})));
}

TEST_CASE("keys are injective on a sample") {
  const GroupModel h = build_group(GroupSpec::product({GroupSpec::heisenberg(), GroupSpec::cyclic(3),
                                                       GroupSpec::free_abelian(2)}));
  const Ball b = enumerate_ball(h, 4, kBudget);
  std::set<std::string> keys;
  for (const auto& e : b.elements) keys.insert(e.key());
  CHECK(keys.size() == b.elements.size());
  // big entries keep distinct keys
  const GroupElement p(Coords{{mpz_class("123456789012345678901234567890")}});
  const GroupElement q(Coords{{mpz_class("-123456789012345678901234567890")}});
  CHECK(p.key() != q.key());
  CHECK(GroupElement(Coords{{mpz_class(-1)}}).key() != GroupElement(Coords{{mpz_class(255)}}).key());
}

TEST_CASE("ball profiles") {
  const BallProfile z = ball_profile(build_group(GroupSpec::free_abelian(1)), 50, kBudget);
  for (std::size_t n = 0; n <= 50; ++n) CHECK(z.cumulative[n] == 2 * n + 1);

  // Z^2: brute-force count of |x| + |y| <= n
  const BallProfile z2 = ball_profile(build_group(GroupSpec::free_abelian(2)), 12, kBudget);
  for (long n = 0; n <= 12; ++n) {
    long count = 0;
    for (long x = -n; x <= n; ++x) {
      for (long y = -n; y <= n; ++y) count += std::labs(x) + std::labs(y) <= n;
    }
    CHECK(z2.cumulative[n] == count);
  }
  CHECK(z2.cumulative[2] == 13);

  const BallProfile h = ball_profile(build_group(GroupSpec::heisenberg()), 3, kBudget);
  CHECK(h.cumulative[0] == 1);
  CHECK(h.cumulative[1] == 5);
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(h.cumulative[n] >= h.cumulative[n - 1]);
    CHECK(h.spheres[n - 1] == h.cumulative[n] - h.cumulative[n - 1]);
  }

  const BallProfile c5 = ball_profile(build_group(GroupSpec::cyclic(5)), 6, kBudget);
  CHECK(c5.exhausted);
  CHECK(c5.cumulative[2] == 5);
  CHECK(c5.spheres[2] == 0);
  CHECK(c5.spheres[5] == 0);

  const BallProfile dinf = ball_profile(build_group(GroupSpec::infinite_dihedral()), 10, kBudget);
  for (std::size_t n = 0; n <= 10; ++n) CHECK(dinf.cumulative[n] == 2 * n + 1);
}

TEST_CASE("budget") {
  const GroupModel z2 = build_group(GroupSpec::free_abelian(2));
  try {
    enumerate_ball(z2, 100, 50);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.completed_radius() < 100);
    CHECK(e.partial().cumulative.size() == e.completed_radius() + 1);
  }
}

TEST_CASE("subgroup counts") {
  const GroupModel z2 = build_group(GroupSpec::free_abelian(2));
  auto first_factor = [](const GroupElement& g) { return std::get<Coords>(g.data()).values[1] == 0; };
  for (std::size_t n = 0; n <= 8; ++n) CHECK(subgroup_ball_count(z2, n, first_factor, kBudget) == 2 * n + 1);

  // Heisenberg centre within B_2, against all products of at most two generators
  const GroupModel h = build_group(GroupSpec::heisenberg());
  auto central = [](const GroupElement& g) {
    const auto& m = std::get<IntMatrix>(g.data());
    return m.at(0, 1) == 0 && m.at(1, 2) == 0;
  };
  std::set<std::string> seen;
  std::vector<GroupElement> all = {h.identity()};
  for (const auto& a : h.symmetric_generators()) {
    all.push_back(a);
    for (const auto& b : h.symmetric_generators()) all.push_back(compose(a, b));
  }
  std::size_t expected = 0;
  for (const auto& g : all) {
    if (seen.insert(g.key()).second && central(g)) ++expected;
  }
  CHECK(subgroup_ball_count(h, 2, central, kBudget) == expected);
  CHECK(subgroup_ball_count(h, 0, central, kBudget) == 1);
}

TEST_CASE("vertex boundaries") {
  const GroupModel z = build_group(GroupSpec::free_abelian(1));
  CHECK(vertex_boundary_size(z, {z.identity()}) == 2);

  const GroupModel z2 = build_group(GroupSpec::free_abelian(2));
  const Ball b1 = enumerate_ball(z2, 1, kBudget);
  CHECK(vertex_boundary_size(z2, b1.elements) == 8);

  const GroupModel c = build_group(GroupSpec::cyclic(7));
  CHECK(vertex_boundary_size(c, enumerate_ball(c, 10, kBudget).elements) == 0);
}

TEST_CASE("builtin registry") {
  CHECK(builtin_spec("builtin:zd:3").rank == 3);
  CHECK(builtin_spec("builtin:heisenberg").dimension == 3);
  CHECK(builtin_spec("builtin:ut:4").generators.size() == 3);
  CHECK(builtin_spec("builtin:cyclic:6").order == 6);
  CHECK_THROWS_AS(builtin_spec("builtin:zd:x"), GroupSpecError);
  CHECK_THROWS_AS(builtin_spec("zd:2"), GroupSpecError);
}

TEST_CASE("group spec json") {
  const GroupSpec spec = GroupSpec::product({GroupSpec::heisenberg(), GroupSpec::cyclic(4)});
  const nlohmann::json j = group_spec_to_json(spec);
  const GroupSpec back = group_spec_from_json(j);
  CHECK(group_spec_to_json(back) == j);

  const auto rows = nlohmann::json::parse(
      R"({"type":"IntegerMatrixGroup","dimension":2,"generators":[[["1","99999999999999999999"],["0","1"]]]})");
  const GroupSpec m = group_spec_from_json(rows);
  CHECK(m.generators[0].at(0, 1) == mpz_class("99999999999999999999"));

  CHECK_THROWS_AS(group_spec_from_json(nlohmann::json::parse(R"({"type":"Nope"})")), GroupSpecError);
  CHECK_THROWS_AS(group_spec_from_json(nlohmann::json::parse(
                      R"({"type":"IntegerMatrixGroup","dimension":2,"generators":[["1","2","3"]]})")),
                  GroupSpecError);
  CHECK_THROWS_AS(load_group_spec_file("/nonexistent/spec.json"), GroupSpecError);
}
