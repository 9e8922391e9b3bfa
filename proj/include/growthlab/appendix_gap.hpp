#pragma once

// Constants of the explicit percolation-gap argument, and certification of
// every inequality along the way with tower interval arithmetic.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "growthlab/bounds.hpp"
#include "growthlab/report.hpp"
#include "growthlab/tower.hpp"

namespace growthlab {

struct GapParams {
  unsigned long C = 100;
  unsigned long r = 3;
  unsigned long k = 8;  // must equal 2r + 2
  mpz_class n = mpz_class("20922789888000");  // 16!
  unsigned long C0 = 4000;
  unsigned precision = TowerReal::kDefaultPrecision;

  /// Throws std::invalid_argument unless k = 2r + 2, r >= 1, n >= 1 and C0 >= 4000.
  void validate() const;
};

enum class GammaBranch { Min, FirstBranch, SecondBranch };
std::string_view to_string(GammaBranch b);

/// U = 2 (8n - 3)^{3n - 2}
TowerReal rough_embedding_constant(const mpz_class& n, unsigned prec = TowerReal::kDefaultPrecision);
/// 2 (8n - 4)^{3n - 2}, the form quoted once more at the end of the argument.
TowerReal rough_embedding_constant_alt(const mpz_class& n, unsigned prec = TowerReal::kDefaultPrecision);

struct SitePercTransfer {
  /// (1 - p^{1/U})^{(8n-4)U}; absent when it is exactly 0 (p = 1).
  std::optional<TowerReal> complement;
  /// 1 - complement
  TowerReal value;
};
/// 1 - (1 - p^{1/U})^{(8n-4)U} for 0 < p <= 1.
SitePercTransfer site_perc_transfer(const mpq_class& p, const mpz_class& n,
                                    unsigned prec = TowerReal::kDefaultPrecision);

enum class PercLog { Log2, Log3_2 };
/// ((2U)^{-1} log 2)^{(8n-4)U}, or with log(3/2).
TowerReal epsilon_perc_lower(const mpz_class& n, unsigned prec = TowerReal::kDefaultPrecision,
                             PercLog which = PercLog::Log2, bool alt_u = false);

/// 8 k^{(k+5)/2} e^{-k/2} / epsilon_k, epsilon_k from the requested branch.
TowerReal gamma_k(unsigned long k, GammaBranch branch, unsigned long C = 100,
                  unsigned prec = TowerReal::kDefaultPrecision);

struct NamedConstant {
  std::string name;
  std::optional<mpq_class> exact;
  std::optional<TowerReal> tower;
  std::string to_string() const;
};

/// c_n, t_n, D_0, t, the five case constants, C_1, the M candidate, epsilon
/// and the Green-function bound, for one branch of epsilon_k.
std::vector<NamedConstant> heat_constant_chain(const GapParams& params, GammaBranch branch);

/// The stated M = exp{17 exp{10 * 8^100}}.
TowerReal stated_m(unsigned prec = TowerReal::kDefaultPrecision);
/// log 2 + C0 (1 + sqrt(C1) e^{2 C1^2}) with C1 = gamma_{2r+2}.
TowerReal m_candidate(const GapParams& params, GammaBranch branch, unsigned prec);

std::vector<StepReport> certify_chain(const GapParams& params);

}  // namespace growthlab
