#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "growthlab/nilpotent.hpp"

using namespace growthlab;

TEST_CASE("degrees of rank vectors") {
  CHECK(bass_guivarch(parse_rank_vector("5")) == 5);
  CHECK(bass_guivarch(parse_rank_vector("2,1")) == 4);
  CHECK(bass_guivarch(parse_rank_vector("2,1,1")) == 7);
  CHECK(hirsch(parse_rank_vector("2,1")) == 3);
  CHECK(hirsch(parse_rank_vector("4")) == 4);
  const SandwichCheck s = hirsch_sandwich(parse_rank_vector("2,1"));
  CHECK(s.hirsch == 3);
  CHECK(s.degree == 4);
  CHECK(s.hirsch_times_class == 6);
  CHECK(s.holds);
  CHECK_THROWS(parse_rank_vector("2,,1"));
  CHECK_THROWS(parse_rank_vector("a"));
}

TEST_CASE("torsion-free validation") {
  CHECK(validate_torsion_free(parse_rank_vector("1"), false).valid);
  CHECK_FALSE(validate_torsion_free(parse_rank_vector("2,0,1"), true).valid);
  CHECK_FALSE(validate_torsion_free(parse_rank_vector("1,1"), true).valid);
  CHECK(validate_torsion_free(parse_rank_vector("2,1"), true).valid);
}

TEST_CASE("class bound from the degree") {
  CHECK(max_class(2) == 1);
  CHECK(max_class(4) == 2);
  CHECK(max_class(11) == 4);
  CHECK_THROWS_AS(max_class(1), DegreeTooSmall);
  // every valid noncyclic rank vector has degree >= 1 + c(c+1)/2
  for (const char* text : {"2", "2,1", "2,1,1", "3,2,1", "2,1,1,1"}) {
    const RankVector rv = parse_rank_vector(text);
    const unsigned long c = rv.nilpotency_class();
    CHECK(bass_guivarch(rv) >= 1 + c * (c + 1) / 2);
    CHECK(max_class(bass_guivarch(rv)) >= c);
  }
}

TEST_CASE("multilinearity in the Heisenberg group") {
  const GroupModel h = build_group(GroupSpec::heisenberg());
  const auto& x = h.supplied();
  CHECK(multilinearity_check(h, 2, x, {1, 1}));
  CHECK(multilinearity_check(h, 2, x, {2, 3}));
  CHECK(multilinearity_check(h, 2, x, {0, -4}));

  // [x^2, y^3] = [x, y]^6 with hand-built matrices
  IntMatrix a = IntMatrix::identity(3), b = IntMatrix::identity(3), z = IntMatrix::identity(3);
  a.at(0, 1) = 2;
  b.at(1, 2) = 3;
  z.at(0, 2) = 6;
  const GroupElement ga(a), gb(b);
  CHECK(compose(compose(inverse(ga), inverse(gb)), compose(ga, gb)) == GroupElement(z));

  CHECK_THROWS_AS(multilinearity_check(h, 2, x, {1}), ArityMismatch);
  CHECK_THROWS_AS(multilinearity_check(h, 3, x, {1, 1, 1}), ArityMismatch);
}

TEST_CASE("multilinearity in UT_4") {
  const GroupModel g = build_group(GroupSpec::unitriangular(4));
  CHECK(multilinearity_check(g, 3, g.supplied(), {2, -3, 5}));
  CHECK(multilinearity_check(g, 3, g.supplied(), {-1, -1, -1}));
}
