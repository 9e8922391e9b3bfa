#pragma once

// Closed-form growth bounds, the effective epsilon_d, heat-kernel and
// isoperimetric bounds, and criteria read off measured ball profiles.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "growthlab/group.hpp"
#include "growthlab/report.hpp"
#include "growthlab/tower.hpp"

namespace growthlab {

/// Optional exact values of g(k), the largest finite subgroup order of
/// GL_k(Z). Without an entry the bound (2k)! is used.
using GTable = std::map<unsigned long, mpz_class>;

/// (2k)!
mpz_class minkowski_bound(unsigned long k);
mpz_class g_value(unsigned long k, const GTable* table = nullptr);

/// n^d / 2^{d^2}
mpq_class nilp_lower_bound(unsigned long d, unsigned long n);
/// n^d / (2^{d(d+2)} g(h)^d)
mpq_class vnilp_lower_bound(unsigned long d, unsigned long h, unsigned long n,
                            const GTable* table = nullptr);
/// n^d / 2^{floor(7d/4)^2}
mpq_class deg_at_least_bound(unsigned long d, unsigned long n);
/// n^d / (2^{d(d+2)} g(d)^{d+1})
mpq_class vt_lower_bound(unsigned long d, unsigned long n, const GTable* table = nullptr);

enum class EpsilonBranch { First, Second, Undecided };
std::string_view to_string(EpsilonBranch b);

struct EpsilonReport {
  unsigned long d = 0;
  unsigned long C = 0;
  TowerReal first;   // 1 / (2^{3C^{4d}} g(C^d)^{C^{2d}})
  TowerReal second;  // 1 / exp(d exp(C d^C))
  EpsilonBranch branch = EpsilonBranch::Undecided;
  unsigned precision = 0;
  /// The minimum when decided; otherwise the smaller-lower-endpoint branch.
  const TowerReal& value() const { return branch == EpsilonBranch::Second ? second : first; }
};

TowerReal epsilon_first_branch(unsigned long d, unsigned long C, unsigned prec,
                               const GTable* table = nullptr);
TowerReal epsilon_second_branch(unsigned long d, unsigned long C, unsigned prec);
EpsilonReport epsilon_d(unsigned long d, unsigned long C,
                        unsigned prec = TowerReal::kDefaultPrecision, const GTable* table = nullptr);

/// 8 d^{(d+5)/2} Delta^{d/2} / (c e^{d/2}) * t^{-d/2}, as an enclosure whose
/// upper endpoint is the certified bound.
TowerReal return_prob_bound(unsigned long d, unsigned long delta, unsigned long t, const TowerReal& c);
TowerReal return_prob_bound(unsigned long d, unsigned long delta, unsigned long t, const mpq_class& c,
                            unsigned prec = TowerReal::kDefaultPrecision);
/// Satisfied iff p_t <= bound is certified.
BoundReport check_return_prob(unsigned long d, unsigned long delta, unsigned long t,
                              const mpq_class& c, const mpq_class& p_t);

/// Smallest integer m >= 0 with m^d >= q.
mpz_class ceil_root(const mpq_class& q, unsigned long d);

struct IsoBounds {
  /// a / (2 ceil((2a/c)^{1/d}))
  mpq_class csc;
  /// c^{1/d}/8 * a^{(d-1)/d}; use the lower endpoint as a lower bound.
  TowerReal power_form;
};
IsoBounds iso_bounds(unsigned long d, const mpz_class& a, const mpq_class& c,
                     unsigned prec = TowerReal::kDefaultPrecision);

struct LinearGrowthHit {
  std::size_t n = 0;
  mpz_class index_bound;
};
/// First n >= 1 with a_n <= n.
std::optional<LinearGrowthHit> linear_growth_criterion(const BallProfile& profile);

struct FinitenessFlags {
  std::vector<std::size_t> finite_at;   // n with s_n <= 2n
  std::vector<std::size_t> wvdd_window;  // n with s_n < (n+1)(n+2)/2
  bool finite() const { return !finite_at.empty(); }
};
FinitenessFlags finiteness_flags(const BallProfile& profile);

/// min over 1 <= n <= R of s_n / n^d
mpq_class measured_growth_constant(const BallProfile& profile, unsigned long d);

}  // namespace growthlab
