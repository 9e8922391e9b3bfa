#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "growthlab/coxeter.hpp"

using namespace growthlab;

namespace {

mpz_class double_factorial(unsigned long n) {
  mpz_class out;
  mpz_2fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

using Series = std::vector<mpz_class>;

Series times(const Series& a, const Series& b) {
  Series out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// 1 / (1 - z^m) as a truncated geometric series
Series geometric(std::size_t m, std::size_t n) {
  Series g(n + 1, 0);
  for (std::size_t k = 0; k <= n; k += m) g[k] = 1;
  return g;
}

Series one_minus(std::size_t m, std::size_t n) {
  Series p(n + 1, 0);
  p[0] = 1;
  if (m <= n) p[m] = -1;
  return p;
}

// (1-z)^{-(d+1)} prod_{i=1..d} (1 - z^{2i}) / (1 - z^{2i-1}), by naive
// multiplication of truncated series
Series btilde_by_multiplication(unsigned long d, std::size_t n) {
  Series s(n + 1, 0);
  s[0] = 1;
  for (unsigned long i = 0; i <= d; ++i) s = times(s, geometric(1, n));
  for (unsigned long i = 1; i <= d; ++i) {
    s = times(s, one_minus(2 * i, n));
    s = times(s, geometric(2 * i - 1, n));
  }
  return s;
}

mpq_class frac(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("built-in data") {
  CHECK(coxeter_builtin("Btilde", 3).exponents == std::vector<unsigned long>{1, 3, 5});
  CHECK(coxeter_builtin("Gtilde", 2).exponents == std::vector<unsigned long>{1, 5});
  CHECK_THROWS_AS(coxeter_builtin("Atilde", 3), UnknownFamily);
  CHECK_THROWS_AS(coxeter_builtin("Etilde", 5), UnknownFamily);
  CHECK_THROWS_AS(coxeter_builtin("Btilde", 1), UnknownFamily);
  CHECK(coxeter_builtins_of_rank(2).size() == 2);
}

TEST_CASE("series") {
  const CoxeterDatum b2 = coxeter_builtin("Btilde", 2);
  CHECK(bott_cumulative_series(b2, 0) == std::vector<mpz_class>{1});
  const auto s = bott_cumulative_series(b2, 50);
  CHECK(s[0] == 1);
  CHECK(s[1] == 4);
  for (std::size_t n = 1; n <= 50; ++n) CHECK(s[n] >= s[n - 1]);

  for (unsigned long d = 2; d <= 6; ++d) {
    CHECK(bott_cumulative_series(coxeter_builtin("Btilde", d), 200) == btilde_by_multiplication(d, 200));
  }
}

TEST_CASE("asymptotic constants") {
  for (unsigned long d = 2; d <= 20; ++d) {
    const mpq_class c = asymptotic_constant(coxeter_builtin("Btilde", d));
    CHECK(c * factorial(d) == frac(double_factorial(2 * d), double_factorial(2 * d - 1)));
  }
  CHECK(asymptotic_constant(coxeter_builtin("Gtilde", 2)) == mpq_class(12, 5) / 2);
  CHECK(exponent_product(coxeter_builtin("Etilde", 6)) == mpq_class(324, 77));
  CHECK(exponent_product(coxeter_builtin("Etilde", 7)) == mpq_class(9216, 2431));
  CHECK(exponent_product(coxeter_builtin("Etilde", 8)) == mpq_class(99532800, 30808063));
  CHECK(asymptotic_constant(coxeter_builtin("Etilde", 8)) == mpq_class(99532800, 30808063) / factorial(8));
}

TEST_CASE("convergence of s_N / N^2 for Btilde_2") {
  const CoxeterDatum b2 = coxeter_builtin("Btilde", 2);
  const auto s = bott_cumulative_series(b2, 2000);
  const mpq_class ratio(s[2000], mpz_class(2000) * 2000);
  const mpq_class c = asymptotic_constant(b2);
  CHECK(abs(ratio - c) < c / 10);
}

TEST_CASE("mg windows") {
  CHECK(mg_window(1, 100).upper == 2);
  const MgWindow w2 = mg_window(2, 100);
  CHECK(w2.upper == mpq_class(6, 5));
  CHECK(w2.upper_source == "Gtilde2");
  CHECK(mg_window(5, 100).upper == frac(3840, 945) / 120);
  for (unsigned long d = 1; d <= 8; ++d) {
    const MgWindow w = mg_window(d, 100);
    CHECK(compare(w.lower.value(), TowerReal::from_rational(w.upper)) == Ordering::Less);
  }
}
