#include "growthlab/coxeter.hpp"

#include <array>
#include <cstdint>
#include <numeric>

namespace growthlab {

namespace {

// The exceptional exponent tables are checked at compile time against the
// reduced fractions prod (m+1)/m they must produce.
template <std::size_t N>
constexpr bool product_is(const std::array<std::uint64_t, N>& m, std::uint64_t num, std::uint64_t den) {
  std::uint64_t p = 1, q = 1;
  for (auto e : m) {
    p *= e + 1;
    q *= e;
  }
  const std::uint64_t g = std::gcd(p, q);
  return p / g == num && q / g == den;
}

constexpr std::array<std::uint64_t, 2> kG2{1, 5};
constexpr std::array<std::uint64_t, 6> kE6{1, 4, 5, 7, 8, 11};
constexpr std::array<std::uint64_t, 7> kE7{1, 5, 7, 9, 11, 13, 17};
constexpr std::array<std::uint64_t, 8> kE8{1, 7, 11, 13, 17, 19, 23, 29};

static_assert(product_is(kG2, 12, 5));
static_assert(product_is(kE6, 324, 77));
static_assert(product_is(kE7, 9216, 2431));
static_assert(product_is(kE8, 99532800, 30808063));

template <std::size_t N>
std::vector<unsigned long> to_vector(const std::array<std::uint64_t, N>& a) {
  return std::vector<unsigned long>(a.begin(), a.end());
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

CoxeterDatum coxeter_builtin(const std::string& family, unsigned long rank) {
  if (family == "Btilde") {
    if (rank < 2) throw UnknownFamily("Btilde needs rank >= 2");
    CoxeterDatum b{"Btilde" + std::to_string(rank), {}};
    for (unsigned long i = 1; i <= rank; ++i) b.exponents.push_back(2 * i - 1);
    return b;
  }
  if (family == "Gtilde" && rank == 2) return {"Gtilde2", to_vector(kG2)};
  if (family == "Etilde" && rank == 6) return {"Etilde6", to_vector(kE6)};
  if (family == "Etilde" && rank == 7) return {"Etilde7", to_vector(kE7)};
  if (family == "Etilde" && rank == 8) return {"Etilde8", to_vector(kE8)};
  throw UnknownFamily("unknown Coxeter family " + family + " of rank " + std::to_string(rank));
}

std::vector<CoxeterDatum> coxeter_builtins_of_rank(unsigned long rank) {
  std::vector<CoxeterDatum> out;
  for (const char* family : {"Btilde", "Gtilde", "Etilde"}) {
    try {
      out.push_back(coxeter_builtin(family, rank));
    } catch (const UnknownFamily&) {
    }
  }
  return out;
}

std::vector<mpz_class> bott_cumulative_series(const CoxeterDatum& datum, std::size_t n_max) {
  const std::size_t d = datum.rank();
  // 1/(1-z)^{d+1}: binomial(n+d, d)
  std::vector<mpz_class> c(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    mpz_bin_uiui(c[n].get_mpz_t(), n + d, d);
  }
  for (unsigned long m : datum.exponents) {
    if (m == 0) throw std::invalid_argument("Coxeter exponents must be positive");
    // times (1 - z^{m+1})
    for (std::size_t n = n_max; n >= m + 1; --n) {
      c[n] -= c[n - m - 1];
      if (n == m + 1) break;
    }
    // divided by (1 - z^m)
    for (std::size_t n = m; n <= n_max; ++n) c[n] += c[n - m];
  }
  return c;
}

mpq_class exponent_product(const CoxeterDatum& datum) {
  mpz_class num = 1, den = 1;
  for (unsigned long m : datum.exponents) {
    num *= m + 1;
    den *= m;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class asymptotic_constant(const CoxeterDatum& datum) {
  mpq_class q = exponent_product(datum) / mpq_class(factorial(datum.rank()));
  q.canonicalize();
  return q;
}

MgWindow mg_window(unsigned long d, unsigned long C, unsigned prec) {
  if (d == 0) throw std::invalid_argument("mg_window needs d >= 1");
  MgWindow w;
  w.d = d;
  w.lower = epsilon_d(d, C, prec);
  mpz_class two_d;
  mpz_ui_pow_ui(two_d.get_mpz_t(), 2, d);
  w.upper = mpq_class(two_d, factorial(d));
  w.upper.canonicalize();
  w.upper_source = "Z^" + std::to_string(d);
  for (const auto& datum : coxeter_builtins_of_rank(d)) {
    const mpq_class a = asymptotic_constant(datum);
    if (a < w.upper) {
      w.upper = a;
      w.upper_source = datum.name;
    }
  }
  return w;
}

}  // namespace growthlab
