#include "growthlab/bounds.hpp"

namespace growthlab {

namespace {

mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

mpz_class pow2(unsigned long e) { return ipow(2, e); }

mpz_class factorial(const mpz_class& k) {
  if (!k.fits_ulong_p()) throw std::overflow_error("factorial argument too large for exact evaluation");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), k.get_ui());
  return out;
}

TowerReal tower(const mpz_class& v, unsigned prec) { return TowerReal::from_integer(v, prec); }

TowerReal tower_q(const mpq_class& v, unsigned prec) { return TowerReal::from_rational(v, prec); }

}  // namespace

mpz_class minkowski_bound(unsigned long k) {
  if (k == 0) throw std::invalid_argument("Minkowski bound needs k >= 1");
  return factorial(mpz_class(2 * k));
}

mpz_class g_value(unsigned long k, const GTable* table) {
  if (table) {
    const auto it = table->find(k);
    if (it != table->end()) return it->second;
  }
  return minkowski_bound(k);
}

mpq_class nilp_lower_bound(unsigned long d, unsigned long n) {
  mpq_class q(ipow(n, d), pow2(d * d));
  q.canonicalize();
  return q;
}

mpq_class vnilp_lower_bound(unsigned long d, unsigned long h, unsigned long n, const GTable* table) {
  mpq_class q(ipow(n, d), pow2(d * (d + 2)) * ipow(g_value(h, table), d));
  q.canonicalize();
  return q;
}

mpq_class deg_at_least_bound(unsigned long d, unsigned long n) {
  const unsigned long k = (7 * d) / 4;
  mpq_class q(ipow(n, d), pow2(k * k));
  q.canonicalize();
  return q;
}

mpq_class vt_lower_bound(unsigned long d, unsigned long n, const GTable* table) {
  mpq_class q(ipow(n, d), pow2(d * (d + 2)) * ipow(g_value(d, table), d + 1));
  q.canonicalize();
  return q;
}

std::string_view to_string(EpsilonBranch b) {
  switch (b) {
    case EpsilonBranch::First: return "first";
    case EpsilonBranch::Second: return "second";
    case EpsilonBranch::Undecided: return "Undecided";
  }
  return "Undecided";
}

TowerReal epsilon_first_branch(unsigned long d, unsigned long C, unsigned prec, const GTable* table) {
  const mpz_class c(C);
  const TowerReal a = pow(tower(2, prec), tower(3 * ipow(c, 4 * d), prec));
  const mpz_class k = ipow(c, d);
  TowerReal g;
  if (table && k.fits_ulong_p() && table->count(k.get_ui())) {
    g = tower(table->at(k.get_ui()), prec);
  } else {
    g = TowerReal::from_factorial(2 * k, prec);
  }
  const TowerReal b = pow(g, tower(ipow(c, 2 * d), prec));
  return recip(a * b);
}

TowerReal epsilon_second_branch(unsigned long d, unsigned long C, unsigned prec) {
  const TowerReal inner = exp(tower(mpz_class(C) * ipow(d, C), prec));
  return recip(exp(tower(d, prec) * inner));
}

EpsilonReport epsilon_d(unsigned long d, unsigned long C, unsigned prec, const GTable* table) {
  if (d == 0) throw std::invalid_argument("epsilon_d needs d >= 1");
  if (C < 2) throw std::invalid_argument("epsilon_d needs C >= 2");
  const RefinedOrdering o = compare_refined(
      [&](unsigned p) { return epsilon_first_branch(d, C, p, table); },
      [&](unsigned p) { return epsilon_second_branch(d, C, p); }, prec);
  EpsilonReport r;
  r.d = d;
  r.C = C;
  r.precision = o.precision;
  r.first = epsilon_first_branch(d, C, o.precision, table);
  r.second = epsilon_second_branch(d, C, o.precision);
  switch (o.ordering) {
    case Ordering::Less:
    case Ordering::Equal: r.branch = EpsilonBranch::First; break;
    case Ordering::Greater: r.branch = EpsilonBranch::Second; break;
    case Ordering::Undecided: r.branch = EpsilonBranch::Undecided; break;
  }
  return r;
}

TowerReal return_prob_bound(unsigned long d, unsigned long delta, unsigned long t, const TowerReal& c) {
  if (d == 0 || delta == 0 || t == 0) throw std::invalid_argument("return_prob_bound needs positive inputs");
  const unsigned prec = c.precision();
  const TowerReal half_d = tower_q(mpq_class(d, 2), prec);
  const TowerReal num = tower(8, prec) * pow(tower(d, prec), tower_q(mpq_class(d + 5, 2), prec)) *
                        pow(tower(delta, prec), half_d);
  const TowerReal den = c * pow(TowerReal::e(prec), half_d) * pow(tower(t, prec), half_d);
  return num / den;
}

TowerReal return_prob_bound(unsigned long d, unsigned long delta, unsigned long t, const mpq_class& c,
                            unsigned prec) {
  return return_prob_bound(d, delta, t, tower_q(c, prec));
}

BoundReport check_return_prob(unsigned long d, unsigned long delta, unsigned long t,
                              const mpq_class& c, const mpq_class& p_t) {
  const TowerReal bound = return_prob_bound(d, delta, t, c);
  BoundReport r;
  r.name = "return_probability";
  r.parameters = {{"d", std::to_string(d)},
                  {"Delta", std::to_string(delta)},
                  {"t", std::to_string(t)},
                  {"c", rational_string(c)}};
  r.bound = bound.to_string();
  r.measured = rational_string(p_t);
  r.status = status_le(compare(tower_q(p_t, bound.precision()), bound));
  return r;
}

mpz_class ceil_root(const mpq_class& q, unsigned long d) {
  if (d == 0) throw std::invalid_argument("root degree must be positive");
  if (sgn(q) <= 0) return 0;
  mpz_class floor_q = q.get_num() / q.get_den();
  mpz_class m;
  mpz_root(m.get_mpz_t(), floor_q.get_mpz_t(), d);
  while (mpq_class(ipow(m, d)) < q) ++m;
  while (m > 0 && mpq_class(ipow(m - 1, d)) >= q) --m;
  return m;
}

IsoBounds iso_bounds(unsigned long d, const mpz_class& a, const mpq_class& c, unsigned prec) {
  if (d == 0 || a <= 0 || sgn(c) <= 0) throw std::invalid_argument("iso_bounds needs positive inputs");
  IsoBounds out;
  const mpz_class m = ceil_root(mpq_class(2 * a) / c, d);
  out.csc = mpq_class(a, 2 * m);
  out.csc.canonicalize();
  TowerReal power = pow(tower_q(c, prec), tower_q(mpq_class(1, d), prec)) / tower(8, prec);
  if (d > 1) power = power * pow(tower(a, prec), tower_q(mpq_class(d - 1, d), prec));
  out.power_form = power;
  return out;
}

std::optional<LinearGrowthHit> linear_growth_criterion(const BallProfile& profile) {
  for (std::size_t n = 1; n <= profile.spheres.size(); ++n) {
    if (profile.spheres[n - 1] <= n) return LinearGrowthHit{n, profile.spheres[n - 1]};
  }
  return std::nullopt;
}

FinitenessFlags finiteness_flags(const BallProfile& profile) {
  FinitenessFlags f;
  for (std::size_t n = 1; n < profile.cumulative.size(); ++n) {
    const mpz_class& s = profile.cumulative[n];
    if (s <= 2 * n) f.finite_at.push_back(n);
    if (2 * s < mpz_class((n + 1) * (n + 2))) f.wvdd_window.push_back(n);
  }
  return f;
}

mpq_class measured_growth_constant(const BallProfile& profile, unsigned long d) {
  if (profile.cumulative.size() < 2) throw std::invalid_argument("profile needs radius >= 1");
  mpq_class best;
  for (std::size_t n = 1; n < profile.cumulative.size(); ++n) {
    mpq_class v(profile.cumulative[n], ipow(n, d));
    v.canonicalize();
    if (n == 1 || v < best) best = v;
  }
  return best;
}

}  // namespace growthlab
