#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "qexp/errors.hpp"
#include "qexp/multipoly.hpp"

namespace qexp {

/// Owning MPFR value. Each value carries its own precision; binary results
/// take the larger operand precision. Rounding is to nearest throughout.
class BigReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  explicit BigReal(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  BigReal(long v, mpfr_prec_t prec) : BigReal(prec) { mpfr_set_si(v_, v, MPFR_RNDN); }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  /// Decimal ("-0.25", "1e-3") or exact fraction ("1/3") literal.
  static BigReal parse(const std::string& text, mpfr_prec_t prec = kDefaultPrecision) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      BigReal n = parse(text.substr(0, slash), prec), d = parse(text.substr(slash + 1), prec);
      if (d.is_zero()) throw ParseError("zero denominator in '" + text + "'");
      return n / d;
    }
    BigReal r(prec);
    if (text.empty() || mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
      throw ParseError("not a real number: '" + text + "'");
    }
    return r;
  }

  static BigReal from_integer(const BigInt& v, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_str(r.v_, v.str().c_str(), 10, MPFR_RNDN);
    return r;
  }

  static BigReal from_rational(const BigRational& v, mpfr_prec_t prec) {
    BigInt n = boost::multiprecision::numerator(v), d = boost::multiprecision::denominator(v);
    mpfr_prec_t wide = prec + 64;
    BigReal num = from_integer(n, std::max<mpfr_prec_t>(wide, static_cast<mpfr_prec_t>(boost::multiprecision::msb(abs(n) + 1) + 2)));
    BigReal den = from_integer(d, std::max<mpfr_prec_t>(wide, static_cast<mpfr_prec_t>(boost::multiprecision::msb(d) + 2)));
    BigReal r(prec);
    mpfr_div(r.v_, num.v_, den.v_, MPFR_RNDN);
    return r;
  }

  /// 2^e at the given precision.
  static BigReal power_of_two(long e, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(const BigReal& x, const BigReal& y) { return binary(x, y, mpfr_add); }
  friend BigReal operator-(const BigReal& x, const BigReal& y) { return binary(x, y, mpfr_sub); }
  friend BigReal operator*(const BigReal& x, const BigReal& y) { return binary(x, y, mpfr_mul); }
  friend BigReal operator/(const BigReal& x, const BigReal& y) {
    if (y.is_zero()) throw ArithmeticError("real division by zero");
    return binary(x, y, mpfr_div);
  }
  BigReal& operator+=(const BigReal& y) { return *this = *this + y; }
  BigReal& operator-=(const BigReal& y) { return *this = *this - y; }
  BigReal& operator*=(const BigReal& y) { return *this = *this * y; }
  BigReal& operator/=(const BigReal& y) { return *this = *this / y; }

  friend bool operator<(const BigReal& x, const BigReal& y) { return mpfr_less_p(x.v_, y.v_) != 0; }
  friend bool operator>(const BigReal& x, const BigReal& y) { return y < x; }
  friend bool operator<=(const BigReal& x, const BigReal& y) { return mpfr_lessequal_p(x.v_, y.v_) != 0; }
  friend bool operator>=(const BigReal& x, const BigReal& y) { return y <= x; }

  friend BigReal abs(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal sqrt(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal log(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal exp(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_exp(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal hypot(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal pow(const BigReal& x, long e) {
    BigReal r(x.precision());
    mpfr_pow_si(r.v_, x.v_, e, MPFR_RNDN);
    return r;
  }

  /// Scientific notation with `digits` significant digits.
  std::string str(int digits = 30) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  template <class Op>
  static BigReal binary(const BigReal& x, const BigReal& y, Op op) {
    BigReal r(std::max(x.precision(), y.precision()));
    op(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

/// Complex number over BigReal components.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = BigReal::kDefaultPrecision) : re_(prec), im_(prec) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(re_.precision()) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(long v, mpfr_prec_t prec) : re_(v, prec), im_(prec) {}

  const BigReal& real() const noexcept { return re_; }
  const BigReal& imag() const noexcept { return im_; }
  mpfr_prec_t precision() const noexcept { return std::max(re_.precision(), im_.precision()); }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

  BigComplex operator-() const { return {-re_, -im_}; }
  friend BigComplex operator+(const BigComplex& x, const BigComplex& y) { return {x.re_ + y.re_, x.im_ + y.im_}; }
  friend BigComplex operator-(const BigComplex& x, const BigComplex& y) { return {x.re_ - y.re_, x.im_ - y.im_}; }
  friend BigComplex operator*(const BigComplex& x, const BigComplex& y) {
    if (x.im_.is_zero() && y.im_.is_zero()) return {x.re_ * y.re_, BigReal(x.precision())};
    return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
  }
  friend BigComplex operator/(const BigComplex& x, const BigComplex& y) {
    if (y.is_zero()) throw ArithmeticError("complex division by zero");
    if (y.im_.is_zero()) return {x.re_ / y.re_, x.im_ / y.re_};
    BigReal d = y.re_ * y.re_ + y.im_ * y.im_;
    return {(x.re_ * y.re_ + x.im_ * y.im_) / d, (x.im_ * y.re_ - x.re_ * y.im_) / d};
  }
  BigComplex& operator+=(const BigComplex& y) { return *this = *this + y; }
  BigComplex& operator-=(const BigComplex& y) { return *this = *this - y; }
  BigComplex& operator*=(const BigComplex& y) { return *this = *this * y; }
  BigComplex& operator/=(const BigComplex& y) { return *this = *this / y; }

  friend BigReal abs(const BigComplex& x) { return hypot(x.re_, x.im_); }

  friend BigComplex pow(BigComplex x, long e) {
    BigComplex r(1, x.precision());
    if (e < 0) {
      x = BigComplex(1, x.precision()) / x;
      e = -e;
    }
    while (e) {
      if (e & 1) r *= x;
      x *= x;
      e >>= 1;
    }
    return r;
  }

  /// Real part alone when the imaginary part is exactly zero, else "re + im*i".
  std::string str(int digits = 30) const {
    if (im_.is_zero()) return re_.str(digits);
    std::string s = re_.str(digits);
    s += im_.sign() < 0 ? " - " : " + ";
    s += abs(im_).str(digits) + "*i";
    return s;
  }

 private:
  BigReal re_, im_;
};

}  // namespace qexp
