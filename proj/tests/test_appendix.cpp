#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mpfr.h>

#include <chrono>
#include <map>

#include "growthlab/appendix_gap.hpp"

using namespace growthlab;

namespace {

// MPFR scalar at 2000 bits for oracles
struct Big {
  mpfr_t v;
  Big() { mpfr_init2(v, 2000); }
  ~Big() { mpfr_clear(v); }
  Big(const Big&) = delete;
  Big& operator=(const Big&) = delete;
};

bool ln_contains(const TowerReal& x, mpfr_srcptr ln_oracle) {
  const auto [lo, hi] = x.ln_bounds();
  return mpfr_cmp(lo.get(), ln_oracle) <= 0 && mpfr_cmp(ln_oracle, hi.get()) <= 0;
}

bool contains_integer(const TowerReal& x, const mpz_class& v) {
  const TowerReal p = TowerReal::from_integer(v, x.precision());
  return compare(x.lower(), p.lower()) != Ordering::Greater && compare(p.upper(), x.upper()) != Ordering::Greater;
}

std::map<std::string, StepReport> by_id(const std::vector<StepReport>& steps) {
  std::map<std::string, StepReport> m;
  for (const StepReport& s : steps) m[s.id] = s;
  return m;
}

}  // namespace

TEST_CASE("parameters") {
  CHECK_NOTHROW(GapParams{}.validate());
  GapParams p;
  p.k = 7;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = GapParams{};
  p.C0 = 3999;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = GapParams{};
  p.n = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("rough-embedding constant") {
  CHECK(contains_integer(rough_embedding_constant(1), 10));
  CHECK(contains_integer(rough_embedding_constant(2), 57122));
  CHECK(contains_integer(rough_embedding_constant_alt(2), 2 * 12 * 12 * 12 * 12));

  const mpz_class n("20922789888000");
  Big o, t;
  mpfr_set_z(t.v, mpz_class(8 * n - 3).get_mpz_t(), MPFR_RNDN);
  mpfr_log(t.v, t.v, MPFR_RNDN);
  mpfr_mul_z(t.v, t.v, mpz_class(3 * n - 2).get_mpz_t(), MPFR_RNDN);
  mpfr_const_log2(o.v, MPFR_RNDN);
  mpfr_add(o.v, o.v, t.v, MPFR_RNDN);
  CHECK(ln_contains(rough_embedding_constant(n), o.v));
  CHECK_THROWS(rough_embedding_constant(0));
}

TEST_CASE("site-percolation transfer") {
  const SitePercTransfer one = site_perc_transfer(mpq_class(1), 5);
  CHECK_FALSE(one.complement);
  CHECK(one.value.is_exact());
  CHECK(compare(one.value, TowerReal::from_integer(1)) == Ordering::Equal);

  // 1 - (1 - 2^{-1/10})^{40}
  Big o;
  mpfr_set_ui(o.v, 2, MPFR_RNDN);
  Big e;
  mpfr_set_si(e.v, -1, MPFR_RNDN);
  mpfr_div_ui(e.v, e.v, 10, MPFR_RNDN);
  mpfr_pow(o.v, o.v, e.v, MPFR_RNDN);
  mpfr_ui_sub(o.v, 1, o.v, MPFR_RNDN);
  mpfr_pow_ui(o.v, o.v, 40, MPFR_RNDN);
  mpfr_ui_sub(o.v, 1, o.v, MPFR_RNDN);
  mpfr_log(o.v, o.v, MPFR_RNDN);
  CHECK(ln_contains(site_perc_transfer(mpq_class(1, 2), 1).value, o.v));

  CHECK_THROWS(site_perc_transfer(mpq_class(0), 1));
  CHECK_THROWS(site_perc_transfer(mpq_class(3, 2), 1));
}

TEST_CASE("percolation threshold lower bound") {
  // ((1/20) log 2)^{40}, as 40 (log log 2 - log 20)
  Big o, t;
  mpfr_const_log2(o.v, MPFR_RNDN);
  mpfr_log(o.v, o.v, MPFR_RNDN);
  mpfr_set_ui(t.v, 20, MPFR_RNDN);
  mpfr_log(t.v, t.v, MPFR_RNDN);
  mpfr_sub(o.v, o.v, t.v, MPFR_RNDN);
  mpfr_mul_ui(o.v, o.v, 40, MPFR_RNDN);
  CHECK(ln_contains(epsilon_perc_lower(1), o.v));

  const TowerReal a = epsilon_perc_lower(3, 128, PercLog::Log3_2);
  const TowerReal b = epsilon_perc_lower(3, 128, PercLog::Log2);
  CHECK(compare(a, b) == Ordering::Less);
}

TEST_CASE("gamma_k against an oracle at C = 2, k = 1") {
  // 8 e^{-1/2} / epsilon_1 with epsilon_1 = 1 / (2^48 24^4)
  Big o, t;
  mpfr_set_ui(o.v, 8, MPFR_RNDN);
  mpfr_log(o.v, o.v, MPFR_RNDN);
  mpfr_set_d(t.v, 0.5, MPFR_RNDN);
  mpfr_sub(o.v, o.v, t.v, MPFR_RNDN);
  mpfr_set_ui(t.v, 24, MPFR_RNDN);
  mpfr_pow_ui(t.v, t.v, 4, MPFR_RNDN);
  mpfr_mul_2ui(t.v, t.v, 48, MPFR_RNDN);
  mpfr_log(t.v, t.v, MPFR_RNDN);
  mpfr_add(o.v, o.v, t.v, MPFR_RNDN);
  CHECK(ln_contains(gamma_k(1, GammaBranch::FirstBranch, 2), o.v));
  CHECK(ln_contains(gamma_k(1, GammaBranch::Min, 2), o.v));
}

TEST_CASE("named constants") {
  std::map<std::string, NamedConstant> c;
  for (const NamedConstant& nc : heat_constant_chain(GapParams{}, GammaBranch::FirstBranch)) c.emplace(nc.name, nc);
  CHECK(c.at("c_2").to_string() == "1/64");
  CHECK(c.at("t_2").to_string() == "1/32");
  CHECK(c.at("t").to_string() == "5451776");
  mpz_class d0, p44;
  mpz_ui_pow_ui(p44.get_mpz_t(), 44, 11);
  d0 = p44 * 16384;
  CHECK(c.at("D_0").to_string() == d0.get_str());
  CHECK(c.at("case4 = 3^r").to_string() == "27");
  CHECK(c.at("p_c(3-12 lattice)").to_string().rfind("E^0[8.079", 0) == 0);
  CHECK(c.at("M_candidate").tower->height() == 3);
}

TEST_CASE("certified chain") {
  const auto start = std::chrono::steady_clock::now();
  const auto steps = certify_chain(GapParams{});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 10);
  CHECK(steps.size() >= 12);
  const auto s = by_id(steps);
  for (const char* id : {"U.path_edges", "U.preimages", "c2.lt.t2", "weakening", "sum.gaussian", "eps16.gt.eps",
                         "final.cluster", "p23.transfer"}) {
    CAPTURE(id);
    CHECK(s.at(id).status == StepStatus::CertifiedTrue);
  }
  CHECK(s.at("M.candidate.first").status == StepStatus::CertifiedTrue);
  CHECK(s.at("M.candidate.second").status != StepStatus::CertifiedTrue);
  CHECK_FALSE(s.at("M.candidate.second").counts_toward_verdict);
  CHECK(s.at("M.branch").status == StepStatus::Undecided);
  CHECK(s.at("M.branch").counts_toward_verdict);
  CHECK(exit_code_for(steps) == 2);
}
