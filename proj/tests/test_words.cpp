#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "growthlab/words.hpp"

using namespace growthlab;

TEST_CASE("lambda and the length recursion") {
  CHECK(lambda(1) == 1);
  CHECK(lambda(3) == 10);
  for (unsigned k = 1; k <= 30; ++k) {
    CHECK(lambda(k + 1) == 2 * lambda(k) + 2);
    CHECK(simple_commutator_length(k) == lambda(k));
  }
  for (unsigned k = 1; k <= 12; ++k) CHECK(mpz_class(simple_commutator_word(k).size()) == lambda(k));
}

TEST_CASE("simple commutator words") {
  CHECK(to_string(simple_commutator_word(1)) == "x1");
  CHECK(to_string(simple_commutator_word(2)) == "X1 X2 x1 x2");
  CHECK(to_string(simple_commutator_word(3)) == "X2 X1 x2 x1 X3 X1 X2 x1 x2 x3");
}

TEST_CASE("parsing and reduction") {
  const Word w = parse_word("  x1 X12\tx12 x3 ");
  REQUIRE(w.size() == 4);
  CHECK(w[1] == Letter{12, -1});
  CHECK(to_string(free_reduce(w)) == "x1 x3");
  CHECK(free_reduce(parse_word("x1 x2 X2 X1")).empty());
  CHECK(inverse_word(parse_word("x1 X2")) == parse_word("x2 X1"));
  CHECK_THROWS(parse_word("y1"));
  CHECK_THROWS(parse_word("x0"));
  CHECK_THROWS(parse_word("x"));
}

TEST_CASE("evaluation") {
  const GroupModel h = build_group(GroupSpec::heisenberg());
  CHECK(h.is_identity(evaluate_word(h, {}, h.supplied())));

  // [E12, E23] = E13, multiplied out by hand
  const GroupElement c = evaluate_word(h, simple_commutator_word(2), h.supplied());
  IntMatrix e13 = IntMatrix::identity(3);
  e13.at(0, 2) = 1;
  CHECK(c == GroupElement(e13));

  const GroupModel z2 = build_group(GroupSpec::free_abelian(2));
  CHECK(z2.is_identity(evaluate_word(z2, simple_commutator_word(2), z2.supplied())));

  CHECK_THROWS_AS(evaluate_word(h, parse_word("x3"), h.supplied()), IndexOutOfRange);
}
