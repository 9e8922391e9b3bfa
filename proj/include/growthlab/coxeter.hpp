#pragma once

// Growth series of affine Coxeter groups from their exponents, and the
// resulting asymptotic constants lim s_n / n^d.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/bounds.hpp"

namespace growthlab {

struct CoxeterDatum {
  std::string name;
  std::vector<unsigned long> exponents;  // m_1 < ... < m_d
  std::size_t rank() const { return exponents.size(); }
};

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// family in {Btilde (rank >= 2), Gtilde (rank 2), Etilde (rank 6, 7, 8)}.
CoxeterDatum coxeter_builtin(const std::string& family, unsigned long rank);
/// Every built-in datum of the given rank.
std::vector<CoxeterDatum> coxeter_builtins_of_rank(unsigned long rank);

/// Cumulative ball sizes s_0..s_N: coefficients of
/// (1-z)^{-(d+1)} prod_i (1 - z^{m_i+1}) / (1 - z^{m_i}).
std::vector<mpz_class> bott_cumulative_series(const CoxeterDatum& datum, std::size_t n_max);

/// prod_i (m_i + 1) / m_i
mpq_class exponent_product(const CoxeterDatum& datum);
/// exponent_product / d!
mpq_class asymptotic_constant(const CoxeterDatum& datum);

struct MgWindow {
  unsigned long d = 0;
  EpsilonReport lower;
  mpq_class upper;
  std::string upper_source;
};
/// epsilon_d(d, C) <= mg(d) <= min(2^d/d!, constants of the built-in families of rank d).
MgWindow mg_window(unsigned long d, unsigned long C, unsigned prec = TowerReal::kDefaultPrecision);

}  // namespace growthlab
