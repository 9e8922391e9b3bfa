#include "growthlab/appendix_gap.hpp"

#include <functional>

namespace growthlab {

namespace {

using Fn = std::function<TowerReal(unsigned)>;

TowerReal Z(const mpz_class& v, unsigned prec) { return TowerReal::from_integer(v, prec); }
TowerReal Q(const mpq_class& v, unsigned prec) { return TowerReal::from_rational(v, prec); }

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// c_n = (4n)^{-n}
mpq_class c_of(unsigned long n) { return mpq_class(1, ipow(4 * n, n)); }
// t_n = 1 / (4^n n!)
mpq_class t_of(unsigned long n) { return mpq_class(1, ipow(4, n) * factorial(n)); }

mpz_class d0_of(unsigned long r) {
  const unsigned long m = r * r + 2;
  return ipow(2, r * r + 5) * ipow(4 * m, m);
}

mpz_class t_const(unsigned long r) { return ipow(16, 3) * ipow(r * r + 2, 3); }

// 10 * 8^100 and 100 * 8^100 as towers
TowerReal scaled_8_100(unsigned long factor, unsigned prec) { return Z(factor * ipow(8, 100), prec); }

// exp{-9 exp{100 * 8^100}}
TowerReal final_bound(unsigned prec) {
  return recip(exp(Z(9, prec) * exp(scaled_8_100(100, prec))));
}

// Upper bound of sum_{n>=2} (n-1)^2 / L_n with L_n = 2^{n+1} - 3: exact terms
// through n = 20, then L_n >= 2^n and a geometric tail with ratio
// (21/20)^2 / 2 starting at 20^2 / 2^21.
mpq_class gaussian_sum_upper() {
  mpq_class s = 0;
  for (unsigned long n = 2; n <= 20; ++n) {
    s += mpq_class((n - 1) * (n - 1), ipow(2, n + 1) - 3);
  }
  const mpq_class first(400, ipow(2, 21));
  const mpq_class q(441, 800);
  s += first / (1 - q);
  s.canonicalize();
  return s;
}

// Upper bound of sum_{n>=2} L_n^{-2}: exact through n = 20, then
// L_n^{-2} <= 4^{-n}, tail 4^{-21} * 4/3.
mpq_class inverse_square_sum_upper() {
  mpq_class s = 0;
  for (unsigned long n = 2; n <= 20; ++n) {
    const mpz_class l = ipow(2, n + 1) - 3;
    s += mpq_class(1, l * l);
  }
  s += mpq_class(4, ipow(4, 21) * 3);
  // Round up to twelve decimals to keep the printed bound short.
  const mpz_class scale = ipow(10, 12);
  mpz_class num = s.get_num() * scale;
  mpz_cdiv_q(num.get_mpz_t(), num.get_mpz_t(), s.get_den().get_mpz_t());
  mpq_class out(num, scale);
  out.canonicalize();
  return out;
}

std::string render(const Fn& f, unsigned prec) {
  try {
    return f(prec).to_string();
  } catch (const std::exception&) {
    return "unresolved";
  }
}

StepStatus status_for(const std::string& rel, Ordering o) {
  if (o == Ordering::Undecided) return StepStatus::Undecided;
  bool holds = false;
  if (rel == "<") holds = o == Ordering::Less;
  if (rel == "<=") holds = o == Ordering::Less || o == Ordering::Equal;
  if (rel == ">") holds = o == Ordering::Greater;
  if (rel == ">=") holds = o == Ordering::Greater || o == Ordering::Equal;
  if (rel == "=") holds = o == Ordering::Equal;
  return holds ? StepStatus::CertifiedTrue : StepStatus::CertifiedFalse;
}

StepReport tower_step(std::string id, std::string description, const Fn& lhs, const std::string& rel,
                      const Fn& rhs, unsigned start) {
  const RefinedOrdering o = compare_refined(lhs, rhs, start);
  StepReport s;
  s.id = std::move(id);
  s.description = std::move(description);
  s.relation = rel;
  s.status = status_for(rel, o.ordering);
  s.precision = o.precision;
  s.lhs = render(lhs, o.precision);
  s.rhs = render(rhs, o.precision);
  return s;
}

Ordering exact_order(const mpq_class& a, const mpq_class& b) {
  const int c = cmp(a, b);
  return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

StepReport exact_step(std::string id, std::string description, const mpq_class& lhs,
                      const std::string& rel, const mpq_class& rhs) {
  StepReport s;
  s.id = std::move(id);
  s.description = std::move(description);
  s.relation = rel;
  s.lhs = rational_string(lhs);
  s.rhs = rational_string(rhs);
  s.status = status_for(rel, exact_order(lhs, rhs));
  return s;
}

const char* branch_tag(GammaBranch b) {
  switch (b) {
    case GammaBranch::Min: return "min";
    case GammaBranch::FirstBranch: return "first";
    case GammaBranch::SecondBranch: return "second";
  }
  return "min";
}

// Sum of the case constants other than gamma_{2r+2}:
// 1 + 3^r + 6 (t r / e)^r + gamma_{2r} D_0^{r+1}
TowerReal other_case_constants(const GapParams& p, GammaBranch b, unsigned prec) {
  const TowerReal case5 = Z(6, prec) * pow(Z(t_const(p.r) * p.r, prec) / TowerReal::e(prec), Z(p.r, prec));
  const TowerReal case1 = gamma_k(2 * p.r, b, p.C, prec) * pow(Z(d0_of(p.r), prec), Z(p.r + 1, prec));
  return Z(1 + ipow(3, p.r), prec) + case5 + case1;
}

TowerReal c1_of(const GapParams& p, GammaBranch b, unsigned prec) { return gamma_k(p.k, b, p.C, prec); }

}  // namespace

void GapParams::validate() const {
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (k != 2 * r + 2) throw std::invalid_argument("k must equal 2r + 2");
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (C < 2) throw std::invalid_argument("C must be at least 2");
  // C0 >= 16/a with a > 1/250
  if (C0 < 4000) throw std::invalid_argument("C0 must be at least 4000");
}

std::string_view to_string(GammaBranch b) {
  switch (b) {
    case GammaBranch::Min: return "Min";
    case GammaBranch::FirstBranch: return "FirstBranch";
    case GammaBranch::SecondBranch: return "SecondBranch";
  }
  return "Min";
}

TowerReal rough_embedding_constant(const mpz_class& n, unsigned prec) {
  if (n < 1) throw NonPositiveInput("n must be positive");
  return Z(2, prec) * pow(Z(8 * n - 3, prec), Z(3 * n - 2, prec));
}

TowerReal rough_embedding_constant_alt(const mpz_class& n, unsigned prec) {
  if (n < 1) throw NonPositiveInput("n must be positive");
  return Z(2, prec) * pow(Z(8 * n - 4, prec), Z(3 * n - 2, prec));
}

SitePercTransfer site_perc_transfer(const mpq_class& p, const mpz_class& n, unsigned prec) {
  if (sgn(p) <= 0 || p > 1) throw std::invalid_argument("p must lie in (0, 1]");
  if (p == 1) return {std::nullopt, TowerReal::from_integer(1, prec)};
  const TowerReal u = rough_embedding_constant(n, prec);
  // 1 - p^{1/U} = 1 - exp(-ln(1/p)/U)
  const TowerReal gap = one_minus_exp_neg(neg_ln(Q(p, prec)) / u);
  const TowerReal complement = pow(gap, Z(8 * n - 4, prec) * u);
  return {complement, Z(1, prec) - complement};
}

TowerReal epsilon_perc_lower(const mpz_class& n, unsigned prec, PercLog which, bool alt_u) {
  const TowerReal u = alt_u ? rough_embedding_constant_alt(n, prec) : rough_embedding_constant(n, prec);
  const TowerReal l = which == PercLog::Log2 ? TowerReal::log2(prec) : TowerReal::log3_2(prec);
  return pow(l / (Z(2, prec) * u), Z(8 * n - 4, prec) * u);
}

TowerReal gamma_k(unsigned long k, GammaBranch branch, unsigned long C, unsigned prec) {
  TowerReal eps;
  switch (branch) {
    case GammaBranch::FirstBranch: eps = epsilon_first_branch(k, C, prec); break;
    case GammaBranch::SecondBranch: eps = epsilon_second_branch(k, C, prec); break;
    case GammaBranch::Min: {
      const EpsilonReport rep = epsilon_d(k, C, prec);
      if (rep.branch == EpsilonBranch::Undecided) throw PrecisionLoss("epsilon branch undecided");
      eps = rep.value();
      break;
    }
  }
  const TowerReal half_k = Q(mpq_class(k, 2), prec);
  const TowerReal prefactor =
      Z(8, prec) * pow(Z(k, prec), Q(mpq_class(k + 5, 2), prec)) / pow(TowerReal::e(prec), half_k);
  return prefactor / eps;
}

std::string NamedConstant::to_string() const {
  if (exact) return rational_string(*exact);
  if (tower) return tower->to_string();
  return "";
}

TowerReal stated_m(unsigned prec) { return exp(Z(17, prec) * exp(scaled_8_100(10, prec))); }

TowerReal m_candidate(const GapParams& p, GammaBranch b, unsigned prec) {
  const TowerReal c1 = c1_of(p, b, prec);
  const TowerReal inner = sqrt(c1) * exp(Z(2, prec) * pow(c1, Z(2, prec)));
  return TowerReal::log2(prec) + Z(p.C0, prec) * (Z(1, prec) + inner);
}

std::vector<NamedConstant> heat_constant_chain(const GapParams& p, GammaBranch b) {
  p.validate();
  const unsigned prec = p.precision;
  const unsigned long m = p.r * p.r + 2;
  std::vector<NamedConstant> out;
  auto exact = [&out](std::string name, const mpq_class& v) { out.push_back({std::move(name), v, std::nullopt}); };
  auto tower = [&out](std::string name, const TowerReal& v) {
    out.push_back({std::move(name), std::nullopt, v});
  };
  exact("c_2", c_of(2));
  exact("t_2", t_of(2));
  exact("c_" + std::to_string(m), c_of(m));
  exact("D_0", mpq_class(d0_of(p.r)));
  exact("t", mpq_class(t_const(p.r)));
  const TowerReal c1 = c1_of(p, b, prec);
  tower("case1 = gamma_2r * D_0^(r+1)",
        gamma_k(2 * p.r, b, p.C, prec) * pow(Z(d0_of(p.r), prec), Z(p.r + 1, prec)));
  tower("case2 = gamma_(2r+2)", c1);
  exact("case3", mpq_class(1));
  exact("case4 = 3^r", mpq_class(ipow(3, p.r)));
  tower("case5 = 6(tr/e)^r", Z(6, prec) * pow(Z(t_const(p.r) * p.r, prec) / TowerReal::e(prec), Z(p.r, prec)));
  tower("C_1", c1);
  const TowerReal m_cand = m_candidate(p, b, prec);
  tower("M_candidate", m_cand);
  tower("epsilon = exp(-M_candidate)", recip(exp(m_cand)));
  tower("M_stated", stated_m(prec));
  tower("green_bound C_1/(25D), D=3", c1 / Z(75, prec));
  // Site threshold of the 3-12 lattice, sqrt(1 - 2 sin(pi/18)); display only.
  {
    Float lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    mpfr_div_ui(lo.get(), lo.get(), 18, MPFR_RNDD);
    mpfr_div_ui(hi.get(), hi.get(), 18, MPFR_RNDU);
    mpfr_sin(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sin(hi.get(), hi.get(), MPFR_RNDU);
    // 1 - 2 sin is decreasing in sin
    Float a(prec), z(prec);
    mpfr_mul_ui(a.get(), hi.get(), 2, MPFR_RNDU);
    mpfr_ui_sub(a.get(), 1, a.get(), MPFR_RNDD);
    mpfr_sqrt(a.get(), a.get(), MPFR_RNDD);
    mpfr_mul_ui(z.get(), lo.get(), 2, MPFR_RNDD);
    mpfr_ui_sub(z.get(), 1, z.get(), MPFR_RNDU);
    mpfr_sqrt(z.get(), z.get(), MPFR_RNDU);
    tower("p_c(3-12 lattice)", TowerReal::from_bounds(a, z));
  }
  return out;
}

std::vector<StepReport> certify_chain(const GapParams& params) {
  params.validate();
  const GapParams p = params;
  const unsigned start = p.precision;
  const mpz_class n = p.n;
  const unsigned long r = p.r;
  std::vector<StepReport> steps;

  // Rough-embedding constant.
  steps.push_back(tower_step(
      "U.path_edges", "edges near a shortest path: 2(8n-3)^n <= U",
      [n](unsigned q) { return Z(2, q) * pow(Z(8 * n - 3, q), Z(n, q)); }, "<=",
      [n](unsigned q) { return rough_embedding_constant(n, q); }, start));
  steps.push_back(tower_step(
      "U.preimages", "preimage count: 2(8n-3)^(n-1) (8n-4)^(2n-1) < U",
      [n](unsigned q) {
        TowerReal v = Z(2, q) * pow(Z(8 * n - 4, q), Z(2 * n - 1, q));
        if (n > 1) v = v * pow(Z(8 * n - 3, q), Z(n - 1, q));
        return v;
      },
      "<", [n](unsigned q) { return rough_embedding_constant(n, q); }, start));
  steps.push_back(tower_step(
      "U.variant", "the later form 2(8n-4)^(3n-2) is below U = 2(8n-3)^(3n-2)",
      [n](unsigned q) { return rough_embedding_constant_alt(n, q); }, "<",
      [n](unsigned q) { return rough_embedding_constant(n, q); }, start));

  // Heat-kernel constants.
  steps.push_back(exact_step("c2.lt.t2", "c_2 = (4*2)^-2 < t_2 = 1/(4^2 2!)", c_of(2), "<", t_of(2)));
  {
    mpq_class worst = 0;
    for (unsigned long k = 2; k <= 20; ++k) {
      const mpq_class ratio = c_of(k) / t_of(k);
      if (ratio > worst) worst = ratio;
    }
    steps.push_back(exact_step("cn.lt.tn", "max over 2 <= n <= 20 of c_n / t_n < 1", worst, "<", mpq_class(1)));
  }
  {
    const unsigned long m = r * r + 2;
    const mpq_class from_c = mpq_class(ipow(2, r * r + 5)) / c_of(m);
    steps.push_back(exact_step("D0.value", "D_0 = 2^(r^2+5) / c_(r^2+2)", from_c, "=",
                               mpq_class(ipow(2, r * r + 5) * ipow(4 * m, m))));
  }
  {
    const unsigned long m = r * r + 2;
    const mpz_class d0 = d0_of(r);
    steps.push_back(tower_step(
        "t.threshold", "third case at D = D_0: 1 + 16^3 (r^2+2)^2 log(4 D^(r^2+1)) <= t log D",
        [m, d0, r](unsigned q) {
          const TowerReal log_term = ln(Z(4 * ipow(d0, m - 1), q));
          return Z(1, q) + Z(ipow(16, 3) * ipow(m, 2), q) * log_term;
        },
        "<=", [d0, r](unsigned q) { return Z(t_const(r), q) * ln(Z(d0, q)); }, start));
  }
  steps.push_back(tower_step(
      "case5.max", "fifth case at D = 20 (nearest integer to e^r): 6(t log D)^r / D <= 6(tr/e)^r",
      [r](unsigned q) { return Z(6, q) * pow(Z(t_const(r), q) * ln(Z(20, q)), Z(r, q)) / Z(20, q); },
      "<=",
      [r](unsigned q) { return Z(6, q) * pow(Z(t_const(r) * r, q) / TowerReal::e(q), Z(r, q)); }, start));

  const GammaBranch both[] = {GammaBranch::FirstBranch, GammaBranch::SecondBranch};
  for (GammaBranch b : both) {
    steps.push_back(tower_step(
        std::string("case.dominance.") + branch_tag(b),
        "the other case constants sum to less than gamma_(2r+2)",
        [p, b](unsigned q) { return other_case_constants(p, b, q); }, "<",
        [p, b](unsigned q) { return c1_of(p, b, q); }, start));
  }
  for (GammaBranch b : both) {
    steps.push_back(tower_step(
        std::string("ustar.") + branch_tag(b), "16(2 log2 C_1 - 1)^4 C_1 / (e (2 C_1^2 - 3)) < 1",
        [p, b](unsigned q) {
          const TowerReal c1 = c1_of(p, b, q);
          const TowerReal two_log2 = Z(2, q) * ln(c1) / TowerReal::log2(q);
          const TowerReal num = Z(16, q) * pow(two_log2 - Z(1, q), Z(4, q)) * c1;
          const TowerReal den = TowerReal::e(q) * (Z(2, q) * pow(c1, Z(2, q)) - Z(3, q));
          return num / den;
        },
        "<", [](unsigned q) { return Z(1, q); }, start));
  }

  const mpq_class gsum = gaussian_sum_upper();
  steps.push_back(tower_step(
      "sum.gaussian", "sum_{n>=2} (n-1)^2 / (sqrt(108 pi) L_n) < 1, L_n = 2^(n+1) - 3",
      [gsum](unsigned q) { return Q(gsum, q) / sqrt(Z(108, q) * TowerReal::pi(q)); }, "<",
      [](unsigned q) { return Z(1, q); }, start));
  const mpq_class lsum = inverse_square_sum_upper();
  steps.push_back(exact_step("sum.L_inv_sq", "sum_{n>=2} L_n^-2 < 2/25", lsum, "<", mpq_class(2, 25)));
  // 1 + (C_1 / 2D) S < C_1 / 25D, divided through by C_1: at height 3 a
  // constant factor on C_1 is far below the enclosure width.
  const mpq_class green_margin = mpq_class(1, 75) - lsum / 6;
  for (GammaBranch b : both) {
    steps.push_back(tower_step(
        std::string("green.") + branch_tag(b),
        "at D = 3: 1 + (C_1 / 2D) sum L_n^-2 < C_1 / 25D, as 1/C_1 < 1/75 - (sum L_n^-2)/6",
        [p, b](unsigned q) { return recip(c1_of(p, b, q)); }, "<",
        [green_margin](unsigned q) { return Q(green_margin, q); }, start));
  }

  // M candidates per branch, then the ambiguity they leave.
  StepStatus first_ok = StepStatus::Undecided;
  StepStatus second_ok = StepStatus::Undecided;
  for (GammaBranch b : {GammaBranch::FirstBranch, GammaBranch::SecondBranch, GammaBranch::Min}) {
    StepReport s = tower_step(
        std::string("M.candidate.") + branch_tag(b),
        "log 2 + C_0 (1 + sqrt(C_1) e^(2 C_1^2)) <= exp{17 exp{10 * 8^100}}",
        [p, b](unsigned q) { return m_candidate(p, b, q); }, "<=",
        [](unsigned q) { return stated_m(q); }, start);
    s.counts_toward_verdict = false;
    if (b == GammaBranch::FirstBranch) first_ok = s.status;
    if (b == GammaBranch::SecondBranch) second_ok = s.status;
    steps.push_back(s);
  }
  {
    StepReport s;
    s.id = "M.branch";
    s.description = "the stated M covers the epsilon_k branch used inside gamma_k";
    s.lhs = std::string("first: ") + std::string(to_string(first_ok));
    s.relation = "and";
    s.rhs = std::string("second: ") + std::string(to_string(second_ok));
    if (first_ok == StepStatus::CertifiedTrue && second_ok == StepStatus::CertifiedTrue) {
      s.status = StepStatus::CertifiedTrue;
    } else if (first_ok == StepStatus::CertifiedFalse && second_ok == StepStatus::CertifiedFalse) {
      s.status = StepStatus::CertifiedFalse;
    } else {
      // Holds for one reading of epsilon_k only; which one is intended is not determined.
      s.status = StepStatus::Undecided;
    }
    steps.push_back(s);
  }

  // Small-dimension branch.
  const Fn eps = [](unsigned q) { return recip(exp(stated_m(q))); };
  steps.push_back(tower_step(
      "eps16.gt.eps", "((2U)^-1 log 2)^((8n-4)U) > e^-M at n = 16!",
      [n](unsigned q) { return epsilon_perc_lower(n, q); }, ">", eps, start));
  steps.push_back(tower_step(
      "eps16.altU.gt.eps", "same with U = 2(8n-4)^(3n-2)",
      [n](unsigned q) { return epsilon_perc_lower(n, q, PercLog::Log2, true); }, ">", eps, start));
  steps.push_back(tower_step(
      "eps16.log3_2.lt.log2", "the log(3/2) variant is below the log 2 variant",
      [n](unsigned q) { return epsilon_perc_lower(n, q, PercLog::Log3_2); }, "<",
      [n](unsigned q) { return epsilon_perc_lower(n, q); }, start));
  steps.push_back(tower_step(
      "eps16.log3_2.gt.eps", "((2U)^-1 log(3/2))^((8n-4)U) > e^-M",
      [n](unsigned q) { return epsilon_perc_lower(n, q, PercLog::Log3_2); }, ">", eps, start));
  steps.push_back(tower_step(
      "p23.transfer", "(1/2)(1 - (1 - (2/3)^(1/U))^((8n-4)U)) > 1/3",
      [n](unsigned q) { return site_perc_transfer(mpq_class(2, 3), n, q).value / Z(2, q); }, ">",
      [](unsigned q) { return Q(mpq_class(1, 3), q); }, start));

  // Final constants.
  steps.push_back(tower_step(
      "weakening", "exp{17 exp{10 * 8^100}} < exp{17 exp{100 * 8^100}}",
      [](unsigned q) { return stated_m(q); }, "<",
      [](unsigned q) { return exp(Z(17, q) * exp(scaled_8_100(100, q))); }, start));
  for (GammaBranch b : both) {
    steps.push_back(tower_step(
        std::string("C1.final.") + branch_tag(b), "25 / C_1 >= exp{-9 exp{100 * 8^100}}",
        [p, b](unsigned q) { return Z(25, q) / c1_of(p, b, q); }, ">=",
        [](unsigned q) { return final_bound(q); }, start));
  }
  {
    // 1 - e^{-D^2 a} >= D^2 a / (1 + D^2 a) > a  <=>  D^2 (1 - a) > 1, which
    // for D >= 3 follows from a < 8/9. The direct comparison is below the
    // resolution of any working precision.
    StepReport s = tower_step(
        "final.cluster", "1 - exp{-D^2 a} > a for D >= 3, a = exp{-9 exp{100 * 8^100}} (via a < 8/9)",
        [](unsigned q) { return final_bound(q); }, "<",
        [](unsigned q) { return Q(mpq_class(8, 9), q); }, start);
    s.lhs = render([](unsigned q) { return one_minus_exp_neg(Z(9, q) * final_bound(q)); }, s.precision);
    s.relation = ">";
    s.rhs = render(final_bound, s.precision);
    steps.push_back(s);
  }
  for (const mpq_class& u : {mpq_class(1, 10), mpq_class(1), mpq_class(10)}) {
    steps.push_back(tower_step(
        "aux.one_minus_exp." + rational_string(u), "1 - e^-u >= u/(1+u)",
        [u](unsigned q) { return one_minus_exp_neg(Q(u, q)); }, ">=",
        [u](unsigned q) { return Q(u / (1 + u), q); }, start));
  }
  return steps;
}

}  // namespace growthlab
