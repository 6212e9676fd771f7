#pragma once

#include <vector>

#include <gmpxx.h>

#include "nscurve/real.hpp"
#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

inline constexpr long kDefaultPeriodBits = 128;

struct PeriodData {
  Real omega;        // least positive real period of the Neron differential
  int components;    // real components, 2 iff discriminant > 0
  Real big_omega;    // omega * components
  Real error;        // absolute bound on |big_omega - true value|
};

// Throws PrecisionError when precision < 53 or the roots of the 2-division
// cubic cannot be separated at the requested precision.
PeriodData real_period(const WeierstrassModel& e, long precision_bits = kDefaultPeriodBits);

// Basis of the period lattice of the Neron differential: omega1 is the least
// positive real period and omega2 lies in the upper half plane, with real part
// 0 (two real components) or omega1 / 2 (one component).
struct PeriodLattice {
  Real omega1;
  Real omega2_re, omega2_im;
  Real covolume;  // omega1 * Im(omega2)
};

PeriodLattice period_lattice(const WeierstrassModel& e, long precision_bits = kDefaultPeriodBits);

// Real roots, ascending, of X^3 + a X + b (b-roots polished by Newton).
std::vector<Real> depressed_cubic_real_roots(const mpz_class& a, const mpz_class& b, long prec);

}  // namespace nscurve::ec
