#pragma once

// Iterated-exponential interval numbers.
//
// A TowerReal encloses a positive real between two exact endpoints. Each
// endpoint is a TowerPoint: the value exp(exp(...exp(m)...)) with `height`
// applications of exp, or the reciprocal of such a value. Every operation is
// evaluated on the endpoints with outward (directed) rounding, so the result
// always encloses the exact result of the operation on any values inside the
// operand enclosures.
//
// Normal form of a point:
//   height 0: mantissa in [1, 2^64) (values below 1 use the reciprocal flag)
//   height h >= 1: mantissa in [44, 2^64)
// A point at height h+2 is therefore always larger than any point at height h,
// and only adjacent heights need a mantissa comparison.

#include <gmpxx.h>

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "growthlab/bigfloat.hpp"

namespace growthlab {

enum class Ordering { Less, Greater, Equal, Undecided };

std::string_view to_string(Ordering o);

/// Raised when an operand is outside an operation's domain (ln of a value
/// that is not certainly above 1, subtraction without a certified gap, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the working precision cannot resolve an intermediate result.
/// Callers that refine precision treat it as "try again with more bits".
class PrecisionLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TowerPoint {
  bool reciprocal = false;
  unsigned height = 0;
  Float mantissa;

  mpfr_prec_t precision() const { return mantissa.precision(); }
  std::string to_string(int digits, Round dir) const;
};

Ordering compare(const TowerPoint& a, const TowerPoint& b);
bool identical(const TowerPoint& a, const TowerPoint& b);

class TowerReal {
 public:
  static constexpr unsigned kDefaultPrecision = 128;
  static constexpr unsigned kMaxPrecision = 4096;

  /// The exact value 1.
  TowerReal();

  static TowerReal from_integer(const mpz_class& value, unsigned prec = kDefaultPrecision);
  static TowerReal from_rational(const mpq_class& value, unsigned prec = kDefaultPrecision);
  /// k!; exact product for k <= 10^6, Robbins-Stirling enclosure above.
  static TowerReal from_factorial(const mpz_class& k, unsigned prec = kDefaultPrecision);
  /// Height-0 enclosure [lo, hi] of a positive real.
  static TowerReal from_bounds(const Float& lo, const Float& hi);
  static TowerReal from_points(TowerPoint lo, TowerPoint hi);

  static TowerReal e(unsigned prec = kDefaultPrecision);
  static TowerReal pi(unsigned prec = kDefaultPrecision);
  static TowerReal log2(unsigned prec = kDefaultPrecision);
  /// ln(3/2)
  static TowerReal log3_2(unsigned prec = kDefaultPrecision);

  /// Parses "E^h[lo,hi]", "1/E^h[lo,hi]", a bare "[lo,hi]" (height 0) or a
  /// decimal/rational literal.
  static TowerReal parse(std::string_view text, unsigned prec = kDefaultPrecision);

  const TowerPoint& lower() const { return lo_; }
  const TowerPoint& upper() const { return hi_; }
  unsigned precision() const;
  bool is_exact() const { return identical(lo_, hi_); }

  /// Height of the common-height form used for printing.
  unsigned height() const;
  bool is_reciprocal() const { return hi_.reciprocal; }

  /// Enclosure of ln(value) as plain floats, when |ln(value)| is below 2^64
  /// (height <= 2). Throws DomainError otherwise.
  std::pair<Float, Float> ln_bounds() const;

  /// Tower notation "E^h[lo,hi]" (optional leading "1/").
  std::string to_string(int digits = 12) const;

 private:
  TowerReal(TowerPoint lo, TowerPoint hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
  TowerPoint lo_;
  TowerPoint hi_;
};

TowerReal mul(const TowerReal& a, const TowerReal& b);
TowerReal div(const TowerReal& a, const TowerReal& b);
TowerReal add(const TowerReal& a, const TowerReal& b);
/// a - b; requires a > b to be certified.
TowerReal sub(const TowerReal& a, const TowerReal& b);
TowerReal pow(const TowerReal& base, const TowerReal& exponent);
TowerReal sqrt(const TowerReal& a);
TowerReal exp(const TowerReal& a);
/// ln(a) for a certainly > 1.
TowerReal ln(const TowerReal& a);
/// -ln(a) = ln(1/a) for a certainly < 1 (reciprocal form).
TowerReal neg_ln(const TowerReal& a);
TowerReal recip(const TowerReal& a);
/// 1 - exp(-u); uses u/(1+u) <= 1 - e^{-u} <= u when u is below working precision.
TowerReal one_minus_exp_neg(const TowerReal& u);

inline TowerReal operator*(const TowerReal& a, const TowerReal& b) { return mul(a, b); }
inline TowerReal operator/(const TowerReal& a, const TowerReal& b) { return div(a, b); }
inline TowerReal operator+(const TowerReal& a, const TowerReal& b) { return add(a, b); }
inline TowerReal operator-(const TowerReal& a, const TowerReal& b) { return sub(a, b); }

/// Less/Greater only for disjoint enclosures; Equal only for identical exact values.
Ordering compare(const TowerReal& a, const TowerReal& b);

/// Re-evaluates both sides at 128, 256, ... up to `max_prec` bits until the
/// comparison is decided. PrecisionLoss and DomainError during evaluation count
/// as Undecided at that precision.
struct RefinedOrdering {
  Ordering ordering = Ordering::Undecided;
  unsigned precision = 0;
};
RefinedOrdering compare_refined(const std::function<TowerReal(unsigned)>& lhs,
                                const std::function<TowerReal(unsigned)>& rhs,
                                unsigned start_prec = TowerReal::kDefaultPrecision,
                                unsigned max_prec = TowerReal::kMaxPrecision);

}  // namespace growthlab
