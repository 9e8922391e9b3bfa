#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mpfr.h>

#include <cmath>

#include "growthlab/tower.hpp"

using namespace growthlab;

namespace {

TowerReal Z(long v, unsigned prec = 128) { return TowerReal::from_integer(v, prec); }

// ln(value) enclosure bounds converted to doubles, for coarse checks.
std::pair<double, double> ln_range(const TowerReal& x) {
  const auto [lo, hi] = x.ln_bounds();
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

// True when the enclosure of ln(x) contains ln(oracle) computed independently.
bool ln_contains(const TowerReal& x, mpfr_srcptr oracle_ln) {
  const auto [lo, hi] = x.ln_bounds();
  return mpfr_cmp(lo.get(), oracle_ln) <= 0 && mpfr_cmp(oracle_ln, hi.get()) <= 0;
}

}  // namespace

TEST_CASE("integers and factorials are exact") {
  const TowerReal one = Z(1);
  CHECK(one.is_exact());
  CHECK(one.height() == 0);
  CHECK(identical(one.lower(), TowerReal().lower()));

  const TowerReal f = TowerReal::from_factorial(16);
  CHECK(f.is_exact());
  CHECK(compare(f, TowerReal::from_integer(mpz_class("20922789888000"))) == Ordering::Equal);

  CHECK_THROWS_AS(Z(0), NonPositiveInput);
  CHECK_THROWS_AS(Z(-3), NonPositiveInput);
}

TEST_CASE("multiplying by one is the identity") {
  const TowerReal x = TowerReal::pi() * Z(7);
  const TowerReal y = x * Z(1);
  CHECK(identical(x.lower(), y.lower()));
  CHECK(identical(x.upper(), y.upper()));
}

TEST_CASE("8^100 has log10 in [90.3, 90.4]") {
  const auto [lo, hi] = ln_range(pow(Z(8), Z(100)));
  CHECK(lo / std::log(10.0) > 90.3);
  CHECK(hi / std::log(10.0) < 90.4);
}

TEST_CASE("comparisons across heights") {
  CHECK(compare(exp(exp(Z(100))), pow(Z(10), Z(43))) == Ordering::Greater);
  const TowerReal x = Z(12345);
  CHECK(compare(x, x) == Ordering::Equal);
  const TowerReal e8 = pow(Z(8), Z(100));
  const TowerReal a = Z(17) * exp(Z(10) * e8);
  const TowerReal b = Z(17) * exp(Z(100) * e8);
  CHECK(compare(a, b) == Ordering::Less);
  CHECK(compare(b, a) == Ordering::Greater);
  CHECK(compare(exp(a), exp(b)) == Ordering::Less);
}

TEST_CASE("reciprocals") {
  const TowerReal x = exp(exp(Z(50)));
  const TowerReal r = recip(x);
  CHECK(r.is_reciprocal());
  const TowerReal back = recip(r);
  CHECK(identical(back.lower(), x.lower()));
  CHECK(identical(back.upper(), x.upper()));
  CHECK(compare(r, Z(1)) == Ordering::Less);
}

TEST_CASE("sqrt(108 pi) against an MPFR oracle") {
  const TowerReal v = sqrt(Z(108) * TowerReal::pi());
  mpfr_t o;
  mpfr_init2(o, 2000);
  mpfr_const_pi(o, MPFR_RNDN);
  mpfr_mul_ui(o, o, 108, MPFR_RNDN);
  mpfr_sqrt(o, o, MPFR_RNDN);
  mpfr_log(o, o, MPFR_RNDN);
  CHECK(ln_contains(v, o));
  mpfr_clear(o);
  const auto [lo, hi] = ln_range(v);
  CHECK(std::exp(lo) == doctest::Approx(18.4199).epsilon(1e-5));
  CHECK(std::exp(hi) == doctest::Approx(18.4199).epsilon(1e-5));
}

TEST_CASE("towers print and parse in E^h notation") {
  const TowerReal big = exp(exp(Z(1000)));
  CHECK(big.to_string().rfind("E^2[1e3", 0) == 0);
  CHECK(recip(big).to_string().rfind("1/E^2[", 0) == 0);

  for (const TowerReal& x : {big, recip(big), TowerReal::pi(), recip(TowerReal::e()), pow(Z(8), Z(100))}) {
    const TowerReal p = TowerReal::parse(x.to_string(30));
    // the parsed enclosure contains the original one
    CHECK(compare(p.lower(), x.lower()) != Ordering::Greater);
    CHECK(compare(x.upper(), p.upper()) != Ordering::Greater);
  }
  const TowerReal q = TowerReal::parse("3/4");
  CHECK(compare(q, TowerReal::from_rational(mpq_class(74, 100))) == Ordering::Greater);
  CHECK(compare(q, TowerReal::from_rational(mpq_class(76, 100))) == Ordering::Less);
  CHECK_THROWS(TowerReal::parse("E^2[5"));
  CHECK_THROWS(TowerReal::parse(""));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(Z(1) - Z(1), DomainError);
  CHECK_THROWS_AS(Z(2) - Z(3), DomainError);
  CHECK_THROWS_AS(ln(TowerReal::from_rational(mpq_class(1, 2))), DomainError);
  CHECK_THROWS_AS(neg_ln(Z(2)), DomainError);
  CHECK(compare(neg_ln(TowerReal::from_rational(mpq_class(1, 2))), TowerReal::log2()) != Ordering::Less);
}

TEST_CASE("one minus exp(-u) for tiny and moderate u") {
  const TowerReal tiny = recip(exp(exp(Z(100))));
  const TowerReal v = one_minus_exp_neg(tiny);
  // u/(1+u) <= v <= u
  CHECK(compare(v, tiny) != Ordering::Greater);
  const TowerReal m = one_minus_exp_neg(Z(1));
  const auto [lo, hi] = ln_range(m);
  CHECK(std::exp(lo) == doctest::Approx(1 - std::exp(-1.0)));
  CHECK(std::exp(hi) == doctest::Approx(1 - std::exp(-1.0)));
}

TEST_CASE("refinement decides close comparisons") {
  // 1 + 2^-200 vs 1 needs more than 128 bits
  const mpq_class q = 1 + mpq_class(1, mpz_class(1) << 200);
  const RefinedOrdering r = compare_refined([&](unsigned p) { return TowerReal::from_rational(q, p); },
                                            [](unsigned p) { return TowerReal::from_integer(1, p); });
  CHECK(r.ordering == Ordering::Greater);
  CHECK(r.precision > 128);
}
