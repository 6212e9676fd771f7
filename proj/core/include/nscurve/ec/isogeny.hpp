#pragma once

#include <gmpxx.h>

#include "nscurve/ec/fp_curve.hpp"
#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

// Velu's formulas for the quotient by a rational point of order 2.
class TwoIsogeny {
 public:
  // Throws DomainError unless kernel is an affine 2-torsion point of domain.
  TwoIsogeny(const RationalModel& domain, const RationalPoint& kernel);

  const RationalModel& domain() const { return domain_; }
  const RationalModel& codomain() const { return codomain_; }
  const RationalPoint& kernel() const { return kernel_; }

  RationalPoint operator()(const RationalPoint& p) const;
  // Image of a point of domain mod ell on codomain mod ell.
  FpPoint operator()(const FpCurve& domain_mod, const FpPoint& p) const;

 private:
  RationalModel domain_;
  RationalPoint kernel_;
  RationalModel codomain_;
  mpq_class t_;
};

// Integral model (coefficients scaled by the least common denominator) of E/<K>.
WeierstrassModel velu_two_isogeny(const WeierstrassModel& e, const RationalPoint& kernel);

}  // namespace nscurve::ec
