#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mpfr.h>

#include <cmath>

#include "growthlab/bounds.hpp"

using namespace growthlab;

namespace {

constexpr std::size_t kBudget = 10'000'000;

mpz_class ipow(long b, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), b, e);
  return out;
}

mpq_class frac(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("Minkowski bound") {
  CHECK(minkowski_bound(1) == 2);
  CHECK(minkowski_bound(2) == 24);
  CHECK(minkowski_bound(4) == 40320);
  const GTable table = {{2, 12}};
  CHECK(g_value(2, &table) == 12);
  CHECK(g_value(3, &table) == 720);
}

TEST_CASE("closed-form lower bounds") {
  CHECK(nilp_lower_bound(2, 4) == 1);
  CHECK(nilp_lower_bound(2, 8) == 4);
  CHECK(nilp_lower_bound(1, 1) == mpq_class(1, 2));
  CHECK(vnilp_lower_bound(1, 1, 2) == mpq_class(1, 8));
  CHECK(vnilp_lower_bound(4, 3, 10) == frac(ipow(10, 4), ipow(2, 24) * ipow(720, 4)));
  for (unsigned long d = 1; d <= 6; ++d) {
    for (unsigned long h = 1; h <= 4; ++h) CHECK(vnilp_lower_bound(d, h, 1) < 1);
  }
  CHECK(deg_at_least_bound(4, 10) == frac(ipow(10, 4), ipow(2, 49)));
  CHECK(deg_at_least_bound(1, 3) == mpq_class(3, 2));
  CHECK(vt_lower_bound(1, 1) == mpq_class(1, 32));
  CHECK(vt_lower_bound(2, 10) == frac(100, ipow(2, 8) * ipow(24, 3)));

  const BallProfile z2 = ball_profile(build_group(GroupSpec::free_abelian(2)), 8, kBudget);
  CHECK(z2.cumulative[8] == 145);
  CHECK(nilp_lower_bound(2, 8) <= z2.cumulative[8]);
}

TEST_CASE("epsilon_d at C = 2, d = 1 against a 200-digit oracle") {
  const EpsilonReport r = epsilon_d(1, 2);
  CHECK(r.branch == EpsilonBranch::First);

  // first = 1 / (2^48 * 24^4), second = exp(-exp(2)); both via MPFR at 700 bits
  mpfr_t first, second;
  mpfr_inits2(700, first, second, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(first, 24, MPFR_RNDN);
  mpfr_pow_ui(first, first, 4, MPFR_RNDN);
  mpfr_mul_2ui(first, first, 48, MPFR_RNDN);
  mpfr_ui_div(first, 1, first, MPFR_RNDN);
  mpfr_set_ui(second, 2, MPFR_RNDN);
  mpfr_exp(second, second, MPFR_RNDN);
  mpfr_neg(second, second, MPFR_RNDN);
  mpfr_exp(second, second, MPFR_RNDN);
  CHECK(mpfr_cmp(first, second) < 0);
  CHECK(mpfr_get_d(first, MPFR_RNDN) == doctest::Approx(1.07e-20).epsilon(0.01));
  CHECK(mpfr_get_d(second, MPFR_RNDN) == doctest::Approx(6.2e-4).epsilon(0.01));

  // the enclosure contains the oracle value
  mpfr_log(first, first, MPFR_RNDN);
  mpfr_neg(first, first, MPFR_RNDN);
  const TowerReal inv = recip(r.first);
  const auto [lo, hi] = inv.ln_bounds();
  CHECK(mpfr_cmp(lo.get(), first) <= 0);
  CHECK(mpfr_cmp(first, hi.get()) <= 0);
  mpfr_clears(first, second, static_cast<mpfr_ptr>(nullptr));
}

TEST_CASE("epsilon_d at C = 100") {
  const EpsilonReport r1 = epsilon_d(1, 100);
  CHECK(r1.branch == EpsilonBranch::Second);
  CHECK(compare(r1.value(), recip(exp(exp(TowerReal::from_integer(100))))) == Ordering::Equal);
  for (unsigned long d = 1; d <= 10; ++d) CHECK(epsilon_d(d, 100).branch != EpsilonBranch::Undecided);
  for (unsigned long d = 1; d <= 5; ++d) {
    const Ordering o = compare(epsilon_d(d + 1, 100).value(), epsilon_d(d, 100).value());
    CHECK((o == Ordering::Less || o == Ordering::Equal));
  }
  CHECK_THROWS(epsilon_d(0, 100));
  CHECK_THROWS(epsilon_d(1, 1));
}

TEST_CASE("return probability bound") {
  const TowerReal b = return_prob_bound(1, 2, 1, mpq_class(2));
  // 8 sqrt(2) / (2 sqrt(e)), computed with MPFR
  mpfr_t o;
  mpfr_init2(o, 300);
  mpfr_set_d(o, -0.5, MPFR_RNDN);
  mpfr_exp(o, o, MPFR_RNDN);
  mpfr_mul_ui(o, o, 4, MPFR_RNDN);
  mpfr_t s;
  mpfr_init2(s, 300);
  mpfr_sqrt_ui(s, 2, MPFR_RNDN);
  mpfr_mul(o, o, s, MPFR_RNDN);
  mpfr_log(o, o, MPFR_RNDN);
  const auto [lo, hi] = b.ln_bounds();
  CHECK(mpfr_cmp(lo.get(), o) <= 0);
  CHECK(mpfr_cmp(o, hi.get()) <= 0);
  CHECK(std::exp(mpfr_get_d(lo.get(), MPFR_RNDN)) == doctest::Approx(3.43106).epsilon(1e-5));
  mpfr_clears(o, s, static_cast<mpfr_ptr>(nullptr));

  CHECK(check_return_prob(1, 2, 1, mpq_class(2), mpq_class(1, 2)).status == BoundStatus::Satisfied);
  CHECK(check_return_prob(1, 2, 1, mpq_class(2), mpq_class(4)).status == BoundStatus::Violated);

  // t^{-d/2} scaling: bound(4) * 4^{d/2} = bound(1)
  const TowerReal b4 = return_prob_bound(2, 4, 4, mpq_class(1, 3));
  const TowerReal b1 = return_prob_bound(2, 4, 1, mpq_class(1, 3));
  const TowerReal scaled = b4 * TowerReal::from_integer(4);
  CHECK(compare(scaled.lower(), b1.upper()) != Ordering::Greater);
  CHECK(compare(b1.lower(), scaled.upper()) != Ordering::Greater);

  // with c = epsilon_3 the bound is astronomically large
  const TowerReal huge = return_prob_bound(3, 4, 10, epsilon_d(3, 100).value());
  CHECK(compare(huge, TowerReal::from_integer(1)) == Ordering::Greater);
}

TEST_CASE("isoperimetric bounds") {
  CHECK(ceil_root(mpq_class(10), 2) == 4);
  CHECK(ceil_root(mpq_class(9), 2) == 3);
  CHECK(ceil_root(mpq_class(1, 3), 3) == 1);
  CHECK(iso_bounds(1, 1, mpq_class(2)).csc == mpq_class(1, 2));
  const IsoBounds b = iso_bounds(2, 5, mpq_class(1));
  CHECK(b.csc == mpq_class(5, 8));
  CHECK(b.csc <= 8);
  const IsoBounds one = iso_bounds(3, 1, mpq_class(1, 2));
  CHECK(compare(one.power_form, TowerReal::from_rational(mpq_class(1, 8))) == Ordering::Less);
}

TEST_CASE("criteria on measured profiles") {
  const BallProfile z = ball_profile(build_group(GroupSpec::free_abelian(1)), 10, kBudget);
  const auto hit = linear_growth_criterion(z);
  REQUIRE(hit);
  CHECK(hit->n == 2);
  CHECK(hit->index_bound == 2);
  const auto dinf = linear_growth_criterion(ball_profile(build_group(GroupSpec::infinite_dihedral()), 10, kBudget));
  REQUIRE(dinf);
  CHECK(dinf->n == 2);

  const BallProfile z2 = ball_profile(build_group(GroupSpec::free_abelian(2)), 10, kBudget);
  CHECK_FALSE(linear_growth_criterion(z2));
  CHECK_FALSE(finiteness_flags(z2).finite());
  CHECK(finiteness_flags(z2).wvdd_window.empty());

  const FinitenessFlags c5 = finiteness_flags(ball_profile(build_group(GroupSpec::cyclic(5)), 5, kBudget));
  CHECK(c5.finite());
  CHECK(c5.finite_at.front() == 3);

  CHECK(measured_growth_constant(z, 1) == mpq_class(21, 10));
  CHECK(measured_growth_constant(z2, 2) == mpq_class(221, 100));
}
