#include "growthlab/tower.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace growthlab {

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Greater: return "Greater";
    case Ordering::Equal: return "Equal";
    case Ordering::Undecided: return "Undecided";
  }
  return "Undecided";
}

namespace {

// Normal-form thresholds. e^44 < 2^64, so lowering never triggers a lift.
constexpr unsigned long kLowerBelow = 44;
constexpr unsigned long kLiftExp2 = 64;

mpfr_prec_t max_prec(const TowerPoint& a, const TowerPoint& b) {
  return std::max(a.precision(), b.precision());
}

Round magnitude_dir(bool reciprocal, Round d) { return reciprocal ? opposite(d) : d; }

bool at_least_two64(mpfr_srcptr m) { return mpfr_cmp_ui_2exp(m, 1, kLiftExp2) >= 0; }

// Puts `p` in normal form; any rounding performed moves the represented value
// in direction `d`.
void normalize(TowerPoint& p, Round d) {
  mpfr_ptr m = p.mantissa.get();
  for (;;) {
    if (mpfr_nan_p(m) || mpfr_inf_p(m)) throw PrecisionLoss("tower mantissa left the float range");
    if (p.height == 0 && mpfr_cmp_ui(m, 1) < 0) {
      if (mpfr_sgn(m) <= 0) throw PrecisionLoss("tower value rounded to zero");
      p.reciprocal = !p.reciprocal;
      mpfr_ui_div(m, 1, m, to_mpfr(magnitude_dir(p.reciprocal, d)));
      continue;
    }
    const Round md = magnitude_dir(p.reciprocal, d);
    if (at_least_two64(m)) {
      mpfr_log(m, m, to_mpfr(md));
      ++p.height;
      continue;
    }
    if (p.height > 0 && mpfr_cmp_ui(m, kLowerBelow) < 0) {
      mpfr_exp(m, m, to_mpfr(md));
      --p.height;
      continue;
    }
    break;
  }
  if (p.height == 0 && p.reciprocal && mpfr_cmp_ui(m, 1) == 0) p.reciprocal = false;
}

TowerPoint one_point(mpfr_prec_t prec) {
  TowerPoint p;
  p.mantissa = Float(prec, 1);
  return p;
}

TowerPoint recip_point(const TowerPoint& p) {
  TowerPoint q = p;
  q.reciprocal = !q.reciprocal;
  if (q.height == 0 && q.reciprocal && mpfr_cmp_ui(q.mantissa.get(), 1) == 0) q.reciprocal = false;
  return q;
}

// Points that convert to a plain float without overflow.
bool convertible(const TowerPoint& p) { return p.height == 0 || p.reciprocal; }

Float to_small(const TowerPoint& p, Round d) {
  const mpfr_prec_t prec = p.precision();
  const Round md = magnitude_dir(p.reciprocal, d);
  Float mag(prec);
  if (p.height == 0) {
    mpfr_set(mag.get(), p.mantissa.get(), MPFR_RNDN);
  } else if (p.height == 1) {
    mpfr_exp(mag.get(), p.mantissa.get(), to_mpfr(md));
  } else {
    mpfr_set_inf(mag.get(), 1);
    if (md == Round::Down) mpfr_nextbelow(mag.get());
  }
  if (!p.reciprocal) return mag;
  Float v(prec);
  mpfr_ui_div(v.get(), 1, mag.get(), to_mpfr(d));
  return v;
}

TowerPoint point_from_small(const Float& x, Round d) {
  if (mpfr_sgn(x.get()) <= 0 || mpfr_nan_p(x.get())) throw PrecisionLoss("non-positive intermediate");
  TowerPoint p;
  p.mantissa = x;
  normalize(p, d);
  return p;
}

// Signed real used for logarithms of points: either a float of magnitude below
// 2^64 or a signed tower magnitude of height >= 1.
struct Signed {
  bool big = false;
  bool negative = false;
  Float small;
  TowerPoint mag;

  bool is_zero() const { return !big && mpfr_zero_p(small.get()); }
  bool is_negative() const { return big ? negative : mpfr_sgn(small.get()) < 0; }
  mpfr_prec_t precision() const { return big ? mag.precision() : small.precision(); }
};

void negate(Signed& s) {
  if (s.big) {
    s.negative = !s.negative;
  } else {
    mpfr_neg(s.small.get(), s.small.get(), MPFR_RNDN);
  }
}

Signed make_small(Float x, Round d) {
  Signed s;
  Float a(x.precision());
  mpfr_abs(a.get(), x.get(), MPFR_RNDN);
  if (!at_least_two64(a.get())) {
    s.small = std::move(x);
    return s;
  }
  s.big = true;
  s.negative = mpfr_sgn(x.get()) < 0;
  s.mag = point_from_small(a, s.negative ? opposite(d) : d);
  return s;
}

Signed from_magnitude(bool negative, TowerPoint mag, Round d) {
  Signed s;
  if (!mag.reciprocal && mag.height >= 1) {
    s.big = true;
    s.negative = negative;
    s.mag = std::move(mag);
    return s;
  }
  s.small = to_small(mag, negative ? opposite(d) : d);
  if (negative) mpfr_neg(s.small.get(), s.small.get(), MPFR_RNDN);
  return s;
}

TowerPoint magnitude_of(const Signed& s, Round md) {
  if (s.big) return s.mag;
  Float a(s.small.precision());
  mpfr_abs(a.get(), s.small.get(), MPFR_RNDN);
  return point_from_small(a, md);
}

TowerPoint pos_mul(const TowerPoint& x, const TowerPoint& y, Round d);
TowerPoint pos_add(const TowerPoint& x, const TowerPoint& y, Round d);
TowerPoint pos_sub(const TowerPoint& x, const TowerPoint& y, Round d);

Signed ln_point(const TowerPoint& p, Round d) {
  if (p.reciprocal) {
    TowerPoint q = p;
    q.reciprocal = false;
    Signed s = ln_point(q, opposite(d));
    negate(s);
    return s;
  }
  Signed s;
  if (p.height >= 2) {
    s.big = true;
    s.mag.reciprocal = false;
    s.mag.height = p.height - 1;
    s.mag.mantissa = p.mantissa;
  } else if (p.height == 1) {
    s.small = p.mantissa;
  } else {
    s.small = Float(p.precision());
    mpfr_log(s.small.get(), p.mantissa.get(), to_mpfr(d));
  }
  return s;
}

TowerPoint exp_signed(const Signed& s, Round d) {
  TowerPoint p;
  if (s.big) {
    p.reciprocal = s.negative;
    p.height = s.mag.height + 1;
    p.mantissa = s.mag.mantissa;
    return p;
  }
  if (s.is_zero()) return one_point(s.precision());
  p.reciprocal = mpfr_sgn(s.small.get()) < 0;
  p.height = 1;
  p.mantissa = Float(s.small.precision());
  mpfr_abs(p.mantissa.get(), s.small.get(), MPFR_RNDN);
  normalize(p, d);
  return p;
}

Signed signed_add(const Signed& a, const Signed& b, Round d) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  if (!a.big && !b.big) {
    Float r(prec);
    mpfr_add(r.get(), a.small.get(), b.small.get(), to_mpfr(d));
    return make_small(std::move(r), d);
  }
  const bool an = a.is_negative();
  const bool bn = b.is_negative();
  // A positive term's magnitude rounds with d, a negative one's against it.
  TowerPoint pa = magnitude_of(a, an ? opposite(d) : d);
  TowerPoint pb = magnitude_of(b, bn ? opposite(d) : d);
  if (an == bn) {
    const Round md = an ? opposite(d) : d;
    return from_magnitude(an, pos_add(pa, pb, md), d);
  }
  const Ordering c = compare(pa, pb);
  if (c == Ordering::Equal) {
    Signed z;
    z.small = Float(prec);
    return z;
  }
  if (c == Ordering::Undecided) throw PrecisionLoss("cancellation between near-equal towers");
  const bool a_larger = c == Ordering::Greater;
  const TowerPoint& larger = a_larger ? pa : pb;
  const TowerPoint& smaller = a_larger ? pb : pa;
  const bool negative = a_larger ? an : bn;
  const Round md = negative ? opposite(d) : d;
  return from_magnitude(negative, pos_sub(larger, smaller, md), d);
}

Signed signed_mul(const Signed& s, const TowerPoint& y, Round d) {
  if (s.is_zero()) return s;
  const bool negative = s.is_negative();
  const Round md = negative ? opposite(d) : d;
  TowerPoint m = magnitude_of(s, md);
  return from_magnitude(negative, pos_mul(m, y, md), d);
}

TowerPoint pos_mul(const TowerPoint& x, const TowerPoint& y, Round d) {
  if (x.height == 0 && y.height == 0) {
    const mpfr_prec_t prec = max_prec(x, y);
    TowerPoint p;
    p.mantissa = Float(prec);
    if (x.reciprocal == y.reciprocal) {
      p.reciprocal = x.reciprocal;
      mpfr_mul(p.mantissa.get(), x.mantissa.get(), y.mantissa.get(),
               to_mpfr(magnitude_dir(p.reciprocal, d)));
    } else {
      const TowerPoint& num = x.reciprocal ? y : x;
      const TowerPoint& den = x.reciprocal ? x : y;
      mpfr_div(p.mantissa.get(), num.mantissa.get(), den.mantissa.get(), to_mpfr(d));
    }
    normalize(p, d);
    return p;
  }
  return exp_signed(signed_add(ln_point(x, d), ln_point(y, d), d), d);
}

TowerPoint pos_div(const TowerPoint& x, const TowerPoint& y, Round d) {
  return pos_mul(x, recip_point(y), d);
}

TowerPoint pos_add(const TowerPoint& x, const TowerPoint& y, Round d) {
  const mpfr_prec_t prec = max_prec(x, y);
  if (convertible(x) && convertible(y)) {
    Float r(prec);
    mpfr_add(r.get(), to_small(x, d).get(), to_small(y, d).get(), to_mpfr(d));
    return point_from_small(r, d);
  }
  const bool swap = compare(x, y) == Ordering::Less;
  const TowerPoint& larger = swap ? y : x;
  const TowerPoint& smaller = swap ? x : y;
  // larger + smaller = larger * (1 + smaller/larger)
  TowerPoint ratio = pos_div(smaller, larger, d);
  if (!convertible(ratio)) throw PrecisionLoss("sum of towers with unresolved ordering");
  Float factor(prec);
  mpfr_add_ui(factor.get(), to_small(ratio, d).get(), 1, to_mpfr(d));
  return pos_mul(larger, point_from_small(factor, d), d);
}

TowerPoint pos_sub(const TowerPoint& x, const TowerPoint& y, Round d) {
  const mpfr_prec_t prec = max_prec(x, y);
  if (convertible(x) && convertible(y)) {
    Float r(prec);
    mpfr_sub(r.get(), to_small(x, d).get(), to_small(y, opposite(d)).get(), to_mpfr(d));
    return point_from_small(r, d);
  }
  // x - y = x * (1 - y/x)
  TowerPoint ratio = pos_div(y, x, opposite(d));
  if (!convertible(ratio)) throw PrecisionLoss("difference of towers with unresolved ordering");
  Float factor(prec);
  mpfr_ui_sub(factor.get(), 1, to_small(ratio, opposite(d)).get(), to_mpfr(d));
  return pos_mul(x, point_from_small(factor, d), d);
}

TowerPoint pos_pow(const TowerPoint& x, const TowerPoint& y, Round d) {
  const mpfr_prec_t prec = max_prec(x, y);
  if (x.height == 0 && y.height == 0 && !x.reciprocal && !y.reciprocal) {
    Float r(prec);
    mpfr_pow(r.get(), x.mantissa.get(), y.mantissa.get(), to_mpfr(d));
    if (mpfr_number_p(r.get())) return point_from_small(r, d);
  }
  Signed l = ln_point(x, d);
  if (l.is_zero()) return one_point(prec);
  return exp_signed(signed_mul(l, y, d), d);
}

TowerPoint exp_point(const TowerPoint& p, Round d) {
  if (!p.reciprocal) {
    TowerPoint q = p;
    ++q.height;
    normalize(q, d);
    return q;
  }
  return exp_signed(from_magnitude(false, p, d), d);
}

TowerPoint ln_point_positive(const TowerPoint& p, Round d) {
  Signed s = ln_point(p, d);
  if (s.big) {
    if (s.negative) throw DomainError("ln of a value below 1");
    return s.mag;
  }
  if (mpfr_sgn(s.small.get()) <= 0) {
    if (d == Round::Down) throw PrecisionLoss("ln lower bound is not positive");
    throw DomainError("ln of a value not above 1");
  }
  return point_from_small(s.small, d);
}

TowerPoint one_minus_exp_neg_point(const TowerPoint& u, Round d) {
  const mpfr_prec_t prec = u.precision();
  if (!u.reciprocal && u.height >= 1) {
    if (d == Round::Up) return one_point(prec);
    Float tail = to_small(recip_point(u), Round::Up);
    Float r(prec);
    mpfr_ui_sub(r.get(), 1, tail.get(), MPFR_RNDD);
    return point_from_small(r, Round::Down);
  }
  if (u.reciprocal && u.height >= 1) {
    if (d == Round::Up) return u;
    Float denom(prec);
    mpfr_add_ui(denom.get(), to_small(u, Round::Up).get(), 1, MPFR_RNDU);
    return pos_div(u, point_from_small(denom, Round::Up), Round::Down);
  }
  Float v = to_small(u, d);
  Float r(prec);
  mpfr_neg(v.get(), v.get(), MPFR_RNDN);
  mpfr_expm1(r.get(), v.get(), to_mpfr(opposite(d)));
  mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  return point_from_small(r, d);
}

Ordering flip(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return o;
}

Ordering compare_magnitudes(const TowerPoint& a, const TowerPoint& b) {
  if (a.height == b.height) {
    const int c = mpfr_cmp(a.mantissa.get(), b.mantissa.get());
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }
  const bool a_higher = a.height > b.height;
  const TowerPoint& hi = a_higher ? a : b;
  const TowerPoint& lo = a_higher ? b : a;
  Ordering hi_vs_lo;
  if (hi.height - lo.height >= 2) {
    hi_vs_lo = Ordering::Greater;
  } else {
    const mpfr_prec_t prec = max_prec(a, b) + 64;
    Float down(prec), up(prec);
    mpfr_log(down.get(), lo.mantissa.get(), MPFR_RNDD);
    mpfr_log(up.get(), lo.mantissa.get(), MPFR_RNDU);
    if (mpfr_cmp(hi.mantissa.get(), up.get()) > 0) {
      hi_vs_lo = Ordering::Greater;
    } else if (mpfr_cmp(hi.mantissa.get(), down.get()) < 0) {
      hi_vs_lo = Ordering::Less;
    } else {
      hi_vs_lo = Ordering::Undecided;
    }
  }
  return a_higher ? hi_vs_lo : flip(hi_vs_lo);
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Float parse_float(const std::string& text, mpfr_prec_t prec, Round d) {
  Float f(prec);
  if (mpfr_set_str(f.get(), text.c_str(), 10, to_mpfr(d)) != 0) {
    throw std::invalid_argument("malformed number '" + text + "'");
  }
  return f;
}

unsigned parse_height(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("malformed tower height '" + text + "'");
  }
  return static_cast<unsigned>(std::stoul(text));
}

// "E^h(m)" or "1/E^h(m)"
TowerPoint parse_point(std::string text, mpfr_prec_t prec, Round d) {
  text = trim(text);
  TowerPoint p;
  if (text.rfind("1/", 0) == 0) {
    p.reciprocal = true;
    text = trim(text.substr(2));
  }
  if (text.rfind("E^", 0) != 0) throw std::invalid_argument("expected E^h(m), got '" + text + "'");
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw std::invalid_argument("expected E^h(m), got '" + text + "'");
  }
  p.height = parse_height(text.substr(2, open - 2));
  p.mantissa = parse_float(trim(text.substr(open + 1, close - open - 1)), prec,
                           magnitude_dir(p.reciprocal, d));
  if (mpfr_sgn(p.mantissa.get()) <= 0) throw std::invalid_argument("tower mantissa must be positive");
  normalize(p, d);
  return p;
}

}  // namespace

Ordering compare(const TowerPoint& a, const TowerPoint& b) {
  if (a.reciprocal != b.reciprocal) return a.reciprocal ? Ordering::Less : Ordering::Greater;
  const Ordering m = compare_magnitudes(a, b);
  return a.reciprocal ? flip(m) : m;
}

bool identical(const TowerPoint& a, const TowerPoint& b) {
  return a.reciprocal == b.reciprocal && a.height == b.height &&
         mpfr_equal_p(a.mantissa.get(), b.mantissa.get());
}

std::string TowerPoint::to_string(int digits, Round dir) const {
  std::string out = reciprocal ? "1/" : "";
  out += "E^" + std::to_string(height) + "(";
  out += mantissa.to_decimal(digits, magnitude_dir(reciprocal, dir));
  return out + ")";
}

// ---------------------------------------------------------------------------
// TowerReal

TowerReal::TowerReal() : lo_(one_point(kDefaultPrecision)), hi_(one_point(kDefaultPrecision)) {}

TowerReal TowerReal::from_points(TowerPoint lo, TowerPoint hi) {
  if (compare(lo, hi) == Ordering::Greater) throw std::invalid_argument("tower enclosure with lo > hi");
  return TowerReal(std::move(lo), std::move(hi));
}

TowerReal TowerReal::from_integer(const mpz_class& value, unsigned prec) {
  if (sgn(value) <= 0) throw NonPositiveInput("tower values must be positive");
  TowerPoint lo, hi;
  lo.mantissa = Float(prec);
  hi.mantissa = Float(prec);
  mpfr_set_z(lo.mantissa.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.mantissa.get(), value.get_mpz_t(), MPFR_RNDU);
  normalize(lo, Round::Down);
  normalize(hi, Round::Up);
  return TowerReal(std::move(lo), std::move(hi));
}

TowerReal TowerReal::from_rational(const mpq_class& value, unsigned prec) {
  if (sgn(value) <= 0) throw NonPositiveInput("tower values must be positive");
  TowerReal num = from_integer(value.get_num(), prec);
  if (value.get_den() == 1) return num;
  return div(num, from_integer(value.get_den(), prec));
}

TowerReal TowerReal::from_factorial(const mpz_class& k, unsigned prec) {
  if (sgn(k) < 0) throw NonPositiveInput("factorial of a negative integer");
  if (k <= 1000000) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k.get_ui());
    return from_integer(f, prec);
  }
  // Robbins: ln k! = (k+1/2)ln k - k + ln(2 pi)/2 + theta, 1/(12k+1) < theta < 1/(12k)
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec) + 32;
  Float bound[2] = {Float(wp), Float(wp)};
  for (int side = 0; side < 2; ++side) {
    const Round d = side == 0 ? Round::Down : Round::Up;
    const mpfr_rnd_t r = to_mpfr(d);
    const mpfr_rnd_t rr = to_mpfr(opposite(d));
    Float kd(wp), ko(wp), t(wp), lk(wp), half_log_2pi(wp), theta(wp);
    mpfr_set_z(kd.get(), k.get_mpz_t(), r);
    mpfr_set_z(ko.get(), k.get_mpz_t(), rr);
    mpfr_log(lk.get(), kd.get(), r);
    mpfr_add_d(t.get(), kd.get(), 0.5, r);
    mpfr_mul(t.get(), t.get(), lk.get(), r);
    mpfr_sub(t.get(), t.get(), ko.get(), r);
    mpfr_const_pi(half_log_2pi.get(), r);
    mpfr_mul_ui(half_log_2pi.get(), half_log_2pi.get(), 2, r);
    mpfr_log(half_log_2pi.get(), half_log_2pi.get(), r);
    mpfr_div_ui(half_log_2pi.get(), half_log_2pi.get(), 2, r);
    mpfr_add(t.get(), t.get(), half_log_2pi.get(), r);
    if (d == Round::Down) {
      mpfr_mul_ui(theta.get(), ko.get(), 12, rr);
      mpfr_add_ui(theta.get(), theta.get(), 1, rr);
    } else {
      mpfr_mul_ui(theta.get(), ko.get(), 12, rr);
    }
    mpfr_ui_div(theta.get(), 1, theta.get(), r);
    mpfr_add(t.get(), t.get(), theta.get(), r);
    bound[side] = std::move(t);
  }
  Signed lo_log = make_small(bound[0], Round::Down);
  Signed hi_log = make_small(bound[1], Round::Up);
  TowerPoint lo = exp_signed(lo_log, Round::Down);
  TowerPoint hi = exp_signed(hi_log, Round::Up);
  return TowerReal(std::move(lo), std::move(hi));
}

TowerReal TowerReal::from_bounds(const Float& lo, const Float& hi) {
  if (mpfr_sgn(lo.get()) <= 0) throw NonPositiveInput("tower values must be positive");
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw std::invalid_argument("tower enclosure with lo > hi");
  return TowerReal(point_from_small(lo, Round::Down), point_from_small(hi, Round::Up));
}

TowerReal TowerReal::e(unsigned prec) {
  Signed one;
  one.small = Float(prec, 1);
  return TowerReal(exp_signed(one, Round::Down), exp_signed(one, Round::Up));
}

TowerReal TowerReal::pi(unsigned prec) {
  Float lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return from_bounds(lo, hi);
}

TowerReal TowerReal::log2(unsigned prec) {
  Float lo(prec), hi(prec);
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return from_bounds(lo, hi);
}

TowerReal TowerReal::log3_2(unsigned prec) {
  Float x(prec), lo(prec), hi(prec);
  mpfr_set_d(x.get(), 1.5, MPFR_RNDN);
  mpfr_log(lo.get(), x.get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.get(), MPFR_RNDU);
  return from_bounds(lo, hi);
}

TowerReal TowerReal::parse(std::string_view raw, unsigned prec) {
  std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty tower literal");
  if (text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated tower hull '" + text + "'");
    const std::string body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("tower hull needs two endpoints");
    const std::string a = trim(body.substr(0, comma));
    const std::string b = trim(body.substr(comma + 1));
    if (a.find("E^") != std::string::npos) {
      return from_points(parse_point(a, prec, Round::Down), parse_point(b, prec, Round::Up));
    }
    return from_bounds(parse_float(a, prec, Round::Down), parse_float(b, prec, Round::Up));
  }
  bool reciprocal = false;
  std::string rest = text;
  if (rest.rfind("1/", 0) == 0 && rest.find("E^") != std::string::npos) {
    reciprocal = true;
    rest = trim(rest.substr(2));
  }
  if (rest.rfind("E^", 0) == 0) {
    const auto open = rest.find('[');
    const auto comma = rest.find(',');
    const auto close = rest.rfind(']');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
        !(open < comma && comma < close)) {
      throw std::invalid_argument("expected E^h[lo,hi], got '" + text + "'");
    }
    const unsigned h = parse_height(rest.substr(2, open - 2));
    const std::string a = trim(rest.substr(open + 1, comma - open - 1));
    const std::string b = trim(rest.substr(comma + 1, close - comma - 1));
    // Mantissa interval [a, b]; for the reciprocal form the value interval is
    // [1/E^h(b), 1/E^h(a)].
    TowerPoint lo, hi;
    lo.reciprocal = hi.reciprocal = reciprocal;
    lo.height = hi.height = h;
    if (!reciprocal) {
      lo.mantissa = parse_float(a, prec, Round::Down);
      hi.mantissa = parse_float(b, prec, Round::Up);
    } else {
      lo.mantissa = parse_float(b, prec, Round::Up);
      hi.mantissa = parse_float(a, prec, Round::Down);
    }
    if (mpfr_sgn(lo.mantissa.get()) <= 0 || mpfr_sgn(hi.mantissa.get()) <= 0) {
      throw std::invalid_argument("tower mantissa must be positive");
    }
    normalize(lo, Round::Down);
    normalize(hi, Round::Up);
    return from_points(std::move(lo), std::move(hi));
  }
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational '" + text + "'");
    q.canonicalize();
    return from_rational(q, prec);
  }
  return from_bounds(parse_float(text, prec, Round::Down), parse_float(text, prec, Round::Up));
}

unsigned TowerReal::precision() const {
  return static_cast<unsigned>(std::max(lo_.precision(), hi_.precision()));
}

unsigned TowerReal::height() const { return std::max(lo_.height, hi_.height); }

std::pair<Float, Float> TowerReal::ln_bounds() const {
  Signed a = ln_point(lo_, Round::Down);
  Signed b = ln_point(hi_, Round::Up);
  if (a.big || b.big) throw DomainError("logarithm exceeds float range");
  return {a.small, b.small};
}

std::string TowerReal::to_string(int digits) const {
  if (lo_.height == 0 && hi_.height == 0) {
    return "E^0[" + to_small(lo_, Round::Down).to_decimal(digits, Round::Down) + "," +
           to_small(hi_, Round::Up).to_decimal(digits, Round::Up) + "]";
  }
  if (lo_.reciprocal == hi_.reciprocal && lo_.height == hi_.height) {
    std::string out = lo_.reciprocal ? "1/" : "";
    out += "E^" + std::to_string(lo_.height) + "[";
    if (!lo_.reciprocal) {
      out += lo_.mantissa.to_decimal(digits, Round::Down) + "," +
             hi_.mantissa.to_decimal(digits, Round::Up);
    } else {
      out += hi_.mantissa.to_decimal(digits, Round::Down) + "," +
             lo_.mantissa.to_decimal(digits, Round::Up);
    }
    return out + "]";
  }
  return "[" + lo_.to_string(digits, Round::Down) + "," + hi_.to_string(digits, Round::Up) + "]";
}

TowerReal mul(const TowerReal& a, const TowerReal& b) {
  return TowerReal::from_points(pos_mul(a.lower(), b.lower(), Round::Down),
                                pos_mul(a.upper(), b.upper(), Round::Up));
}

TowerReal recip(const TowerReal& a) {
  return TowerReal::from_points(recip_point(a.upper()), recip_point(a.lower()));
}

TowerReal div(const TowerReal& a, const TowerReal& b) { return mul(a, recip(b)); }

TowerReal add(const TowerReal& a, const TowerReal& b) {
  return TowerReal::from_points(pos_add(a.lower(), b.lower(), Round::Down),
                                pos_add(a.upper(), b.upper(), Round::Up));
}

TowerReal sub(const TowerReal& a, const TowerReal& b) {
  const Ordering c = compare(a.lower(), b.upper());
  if (c == Ordering::Undecided) throw PrecisionLoss("subtraction without a certified gap");
  if (c != Ordering::Greater) {
    if (compare(a, b) == Ordering::Undecided) throw PrecisionLoss("subtraction without a certified gap");
    throw DomainError("subtraction would not be positive");
  }
  return TowerReal::from_points(pos_sub(a.lower(), b.upper(), Round::Down),
                                pos_sub(a.upper(), b.lower(), Round::Up));
}

TowerReal pow(const TowerReal& base, const TowerReal& exponent) {
  // Corners: for a base endpoint >= 1 the power increases with the exponent.
  const TowerPoint& lo_exp = base.lower().reciprocal ? exponent.upper() : exponent.lower();
  const TowerPoint& hi_exp = base.upper().reciprocal ? exponent.lower() : exponent.upper();
  return TowerReal::from_points(pos_pow(base.lower(), lo_exp, Round::Down),
                                pos_pow(base.upper(), hi_exp, Round::Up));
}

TowerReal sqrt(const TowerReal& a) {
  return pow(a, TowerReal::from_rational(mpq_class(1, 2), a.precision()));
}

TowerReal exp(const TowerReal& a) {
  return TowerReal::from_points(exp_point(a.lower(), Round::Down), exp_point(a.upper(), Round::Up));
}

TowerReal ln(const TowerReal& a) {
  const TowerPoint& lo = a.lower();
  if (lo.reciprocal || (lo.height == 0 && mpfr_cmp_ui(lo.mantissa.get(), 1) == 0)) {
    if (a.upper().reciprocal) throw DomainError("ln of a value below 1");
    throw PrecisionLoss("ln of an enclosure that is not certainly above 1");
  }
  return TowerReal::from_points(ln_point_positive(lo, Round::Down),
                                ln_point_positive(a.upper(), Round::Up));
}

TowerReal neg_ln(const TowerReal& a) {
  if (!a.upper().reciprocal) {
    if (!a.lower().reciprocal) throw DomainError("neg_ln of a value not below 1");
    throw PrecisionLoss("neg_ln of an enclosure that is not certainly below 1");
  }
  return ln(recip(a));
}

TowerReal one_minus_exp_neg(const TowerReal& u) {
  return TowerReal::from_points(one_minus_exp_neg_point(u.lower(), Round::Down),
                                one_minus_exp_neg_point(u.upper(), Round::Up));
}

Ordering compare(const TowerReal& a, const TowerReal& b) {
  if (a.is_exact() && b.is_exact() && compare(a.lower(), b.lower()) == Ordering::Equal) {
    return Ordering::Equal;
  }
  if (compare(a.upper(), b.lower()) == Ordering::Less) return Ordering::Less;
  if (compare(a.lower(), b.upper()) == Ordering::Greater) return Ordering::Greater;
  return Ordering::Undecided;
}

RefinedOrdering compare_refined(const std::function<TowerReal(unsigned)>& lhs,
                                const std::function<TowerReal(unsigned)>& rhs,
                                unsigned start_prec, unsigned max_prec) {
  RefinedOrdering out;
  for (unsigned prec = start_prec; prec <= max_prec; prec *= 2) {
    out.precision = prec;
    try {
      out.ordering = compare(lhs(prec), rhs(prec));
    } catch (const PrecisionLoss&) {
      out.ordering = Ordering::Undecided;
    } catch (const DomainError&) {
      out.ordering = Ordering::Undecided;
    }
    if (out.ordering != Ordering::Undecided) return out;
  }
  return out;
}

}  // namespace growthlab
