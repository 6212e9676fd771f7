#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace nscurve {

// Value-semantic MPFR float. Binary operations run at the larger of the two
// operand precisions; rounding is to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(double v, mpfr_prec_t prec);
  Real(const mpz_class& v, mpfr_prec_t prec);
  Real(const mpq_class& v, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  // Nearest integer.
  mpz_class round() const;
  int sign() const { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(Real a);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  static Real pi(mpfr_prec_t prec);
  // 2^e at the given precision.
  static Real exp2(long e, mpfr_prec_t prec);

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real abs(const Real& x);
Real agm(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace nscurve
