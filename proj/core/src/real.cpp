#include "nscurve/real.hpp"

#include <algorithm>
#include <vector>

namespace nscurve {

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.precision());
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {

// Raise *this to the precision of o before an in-place operation.
void widen(mpfr_ptr v, mpfr_srcptr o) {
  if (mpfr_get_prec(o) > mpfr_get_prec(v)) mpfr_prec_round(v, mpfr_get_prec(o), MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(v_, o.v_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(v_, o.v_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator-(Real a) {
  mpfr_neg(a.v_, a.v_, MPFR_RNDN);
  return a;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

mpz_class Real::round() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), v_, MPFR_RNDN);
  return out;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::exp2(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real agm(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_agm(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace nscurve
