#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/group.hpp"

namespace growthlab {

/// Torsion-free ranks r(1), ..., r(c) of the lower central quotients; c is the size.
struct RankVector {
  std::vector<unsigned long> r;
  std::size_t nilpotency_class() const { return r.size(); }
};

/// Comma-separated integers, e.g. "2,1".
RankVector parse_rank_vector(const std::string& text);

/// sum_i i * r(i)
unsigned long bass_guivarch(const RankVector& rv);
/// sum_i r(i)
unsigned long hirsch(const RankVector& rv);

struct SandwichCheck {
  unsigned long hirsch = 0;
  unsigned long degree = 0;
  unsigned long hirsch_times_class = 0;
  bool holds = false;
};
/// h <= degree <= h * c
SandwichCheck hirsch_sandwich(const RankVector& rv);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> issues;
};
/// Necessary conditions on the ranks of a torsion-free nilpotent group:
/// every r(i) >= 1, and r(1) >= 2 unless the group is infinite cyclic.
ValidationReport validate_torsion_free(const RankVector& rv, bool noncyclic);

class DegreeTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// Largest c with c(c+1) <= 2d - 2.
unsigned long max_class(unsigned long d);

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// In a group of class exactly c, checks
/// [x_1^{l_1}, ..., x_c^{l_c}] == [x_1, ..., x_c]^{l_1 ... l_c}.
bool multilinearity_check(const GroupModel& g, std::size_t c, const std::vector<GroupElement>& x,
                          const std::vector<long>& exponents);

}  // namespace growthlab
