#include "growthlab/heat.hpp"

namespace growthlab {

namespace {

mpz_class denominator(std::size_t delta, std::size_t t) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2 * delta, t);
  return d;
}

// neighbours[i * Delta + s] = index of ball[i] * s, or -1 outside the ball.
std::vector<long> neighbour_table(const GroupModel& g, const Ball& ball) {
  const auto& gens = g.symmetric_generators();
  std::vector<long> table(ball.elements.size() * gens.size(), -1);
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const auto it = ball.index.find(compose(ball.elements[i], gens[s]).key());
      if (it != ball.index.end()) table[i * gens.size() + s] = static_cast<long>(it->second);
    }
  }
  return table;
}

std::vector<mpz_class> step(const std::vector<mpz_class>& old, const std::vector<long>& nbr,
                            std::size_t delta) {
  std::vector<mpz_class> next(old.size());
  for (std::size_t i = 0; i < old.size(); ++i) {
    mpz_class v = old[i] * static_cast<unsigned long>(delta);
    for (std::size_t s = 0; s < delta; ++s) {
      const long j = nbr[i * delta + s];
      if (j >= 0) v += old[static_cast<std::size_t>(j)];
    }
    next[i] = std::move(v);
  }
  return next;
}

}  // namespace

Distribution point_mass(const GroupModel& g) {
  Distribution d;
  d.emplace(g.identity().key(), Mass{g.identity(), mpq_class(1)});
  return d;
}

Distribution lazy_step(const GroupModel& g, const Distribution& dist) {
  const std::size_t delta = g.valency();
  Distribution out;
  auto deposit = [&out](const GroupElement& e, std::string key, const mpq_class& p) {
    auto [it, inserted] = out.try_emplace(std::move(key), Mass{e, p});
    if (!inserted) it->second.p += p;
  };
  for (const auto& [key, m] : dist) {
    deposit(m.element, key, m.p / 2);
    const mpq_class move = m.p / mpq_class(2 * delta);
    for (const auto& s : g.symmetric_generators()) {
      GroupElement y = compose(m.element, s);
      std::string k = y.key();
      deposit(y, std::move(k), move);
    }
  }
  return out;
}

mpq_class total_mass(const Distribution& dist) {
  mpq_class total = 0;
  for (const auto& [key, m] : dist) total += m.p;
  return total;
}

HeatKernel::HeatKernel(const GroupModel& g, std::size_t horizon, std::size_t budget)
    : horizon_(horizon), delta_(g.valency()), ball_(enumerate_ball(g, horizon, budget)) {
  const std::vector<long> nbr = neighbour_table(g, ball_);
  std::vector<mpz_class> current(ball_.elements.size(), 0);
  current[0] = 1;
  numerators_.push_back(current);
  for (std::size_t t = 1; t <= horizon; ++t) {
    current = step(current, nbr, delta_);
    numerators_.push_back(current);
  }
}

mpq_class HeatKernel::probability(std::size_t t, std::size_t index) const {
  mpq_class q(numerators_.at(t).at(index), denominator(delta_, t));
  q.canonicalize();
  return q;
}

mpq_class HeatKernel::total_mass(std::size_t t) const {
  mpz_class sum = 0;
  for (const auto& v : numerators_.at(t)) sum += v;
  mpq_class q(sum, denominator(delta_, t));
  q.canonicalize();
  return q;
}

std::vector<mpq_class> return_series(const GroupModel& g, std::size_t horizon, std::size_t budget) {
  const std::size_t delta = g.valency();
  const Ball ball = enumerate_ball(g, horizon / 2, budget);
  const std::vector<long> nbr = neighbour_table(g, ball);
  std::vector<mpz_class> current(ball.elements.size(), 0);
  current[0] = 1;
  std::vector<mpq_class> series{mpq_class(1)};
  for (std::size_t t = 1; t <= horizon; ++t) {
    current = step(current, nbr, delta);
    mpq_class p(current[0], denominator(delta, t));
    p.canonicalize();
    series.push_back(p);
  }
  return series;
}

std::vector<BoundReport> check_return_bounds(const std::vector<mpq_class>& series,
                                             const BallProfile& profile, unsigned long d,
                                             unsigned long delta, const mpq_class& c) {
  std::vector<BoundReport> out;
  const std::size_t horizon = series.empty() ? 0 : series.size() - 1;
  for (std::size_t t = 1; t <= horizon; ++t) {
    out.push_back(check_return_prob(d, delta, t, c, series[t]));

    BoundReport mono;
    mono.name = "return_monotone";
    mono.parameters = {{"t", std::to_string(t)}};
    mono.bound = rational_string(series[t - 1]);
    mono.measured = rational_string(series[t]);
    mono.status = series[t] <= series[t - 1] ? BoundStatus::Satisfied : BoundStatus::Violated;
    out.push_back(mono);

    if (2 * t <= horizon && t < profile.cumulative.size()) {
      const mpq_class lower(1, profile.cumulative[t]);
      BoundReport spec;
      spec.name = "return_lower_1_over_s_t";
      spec.parameters = {{"t", std::to_string(t)}, {"s_t", profile.cumulative[t].get_str()}};
      spec.bound = rational_string(lower);
      spec.measured = rational_string(series[2 * t]);
      spec.status = series[2 * t] >= lower ? BoundStatus::Satisfied : BoundStatus::Violated;
      out.push_back(spec);
    }
  }
  return out;
}

std::vector<BoundReport> check_return_bounds(const std::vector<mpq_class>& series, unsigned long d,
                                             unsigned long delta, const TowerReal& c) {
  std::vector<BoundReport> out;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const TowerReal bound = return_prob_bound(d, delta, t, c);
    BoundReport r;
    r.name = "return_probability";
    r.parameters = {{"d", std::to_string(d)}, {"Delta", std::to_string(delta)}, {"t", std::to_string(t)},
                    {"c", c.to_string()}};
    r.bound = bound.to_string();
    r.measured = rational_string(series[t]);
    r.status = status_le(compare(TowerReal::from_rational(series[t], bound.precision()), bound));
    out.push_back(r);
  }
  return out;
}

TowerReal loop_erased_constant(unsigned long delta, const TowerReal& epsilon5) {
  const unsigned prec = epsilon5.precision();
  return TowerReal::from_integer(5131, prec) *
         pow(TowerReal::from_integer(delta, prec), TowerReal::from_rational(mpq_class(5, 2), prec)) /
         epsilon5;
}

}  // namespace growthlab
