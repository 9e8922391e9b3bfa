#pragma once

#include <mpfr.h>

#include <string>

namespace growthlab {

/// Rounding direction for a directed-rounding operation.
enum class Round { Down, Up };

inline Round opposite(Round r) { return r == Round::Down ? Round::Up : Round::Down; }

inline mpfr_rnd_t to_mpfr(Round r) { return r == Round::Down ? MPFR_RNDD : MPFR_RNDU; }

/// Owning RAII handle around an mpfr_t.
///
/// The first Float constructed widens MPFR's exponent range to the maximum the
/// library supports, so that reciprocals of huge towers underflow (instead of
/// raising range errors) and directed rounding stays sound.
class Float {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  Float() : Float(kDefaultPrecision) {}
  explicit Float(mpfr_prec_t prec);
  Float(mpfr_prec_t prec, long value);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  /// Decimal rendering with `digits` significant digits rounded in `dir`.
  std::string to_decimal(int digits, Round dir) const;

 private:
  mpfr_t value_;
};

/// Idempotent; called by every Float constructor.
void ensure_wide_exponent_range();

}  // namespace growthlab
