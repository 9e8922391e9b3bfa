#include "growthlab/bigfloat.hpp"

#include <cstdlib>
#include <memory>

namespace growthlab {

void ensure_wide_exponent_range() {
  // MPFR keeps the exponent range per thread.
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    done = true;
  }
}

Float::Float(mpfr_prec_t prec) {
  ensure_wide_exponent_range();
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Float::Float(mpfr_prec_t prec, long value) : Float(prec) { mpfr_set_si(value_, value, MPFR_RNDN); }

Float::Float(const Float& other) {
  ensure_wide_exponent_range();
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

std::string Float::to_decimal(int digits, Round dir) const {
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, to_mpfr(dir)),
      mpfr_free_str);
  std::string mant(raw.get());
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mantissa is 0.d1d2d3... times 10^exp10; print as d1.d2d3...e(exp10-1)
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) {
    std::string frac = mant.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  const long e = static_cast<long>(exp10) - 1;
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

}  // namespace growthlab
