#pragma once

// Exact heat kernels of the lazy simple random walk: stay with probability
// 1/2, otherwise move to one of the Delta neighbours y*s uniformly.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "growthlab/bounds.hpp"
#include "growthlab/group.hpp"
#include "growthlab/report.hpp"

namespace growthlab {

struct Mass {
  GroupElement element;
  mpq_class p;
};
/// Keyed by canonical element key.
using Distribution = std::map<std::string, Mass>;

Distribution point_mass(const GroupModel& g);
Distribution lazy_step(const GroupModel& g, const Distribution& dist);
mpq_class total_mass(const Distribution& dist);

/// All distributions p_t(o, .) for t <= T on the radius-T ball. Probabilities
/// at step t are numerators[t][i] / (2 Delta)^t.
class HeatKernel {
 public:
  HeatKernel(const GroupModel& g, std::size_t horizon, std::size_t budget);

  std::size_t horizon() const { return horizon_; }
  const Ball& ball() const { return ball_; }
  mpq_class probability(std::size_t t, std::size_t index) const;
  mpq_class return_probability(std::size_t t) const { return probability(t, 0); }
  mpq_class total_mass(std::size_t t) const;

 private:
  std::size_t horizon_;
  std::size_t delta_;
  Ball ball_;
  std::vector<std::vector<mpz_class>> numerators_;
};

/// p_0(o,o), ..., p_T(o,o). Only the radius floor(T/2) ball is needed: a walk
/// that is back at o at time t <= T never stood further away than T/2 from
/// o at any time it matters for p_t.
std::vector<mpq_class> return_series(const GroupModel& g, std::size_t horizon, std::size_t budget);

/// Per t >= 1: p_t <= return_prob_bound(d, Delta, t, c); p_{t+1} <= p_t; and
/// p_{2t} >= 1/s_t whenever 2t <= T and t <= R.
std::vector<BoundReport> check_return_bounds(const std::vector<mpq_class>& series,
                                             const BallProfile& profile, unsigned long d,
                                             unsigned long delta, const mpq_class& c);
/// Same upper-bound check with a tower-valued growth constant such as epsilon_d.
std::vector<BoundReport> check_return_bounds(const std::vector<mpq_class>& series, unsigned long d,
                                             unsigned long delta, const TowerReal& c);

/// 5131 Delta^{5/2} / epsilon_5
TowerReal loop_erased_constant(unsigned long delta, const TowerReal& epsilon5);

}  // namespace growthlab
