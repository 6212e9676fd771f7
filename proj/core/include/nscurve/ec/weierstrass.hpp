#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace nscurve::ec {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
struct WeierstrassModel {
  mpz_class a1, a2, a3, a4, a6;

  // Bracket label "[a1,a2,a3,a4,a6]".
  std::string label() const;

  friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;
};

WeierstrassModel make_model(long a1, long a2, long a3, long a4, long a6);

// Parses "[a1,a2,a3,a4,a6]" (whitespace tolerated). Throws DomainError.
WeierstrassModel parse_model(const std::string& text);

struct CurveInvariants {
  mpz_class b2, b4, b6, b8;
  mpz_class c4, c6;
  mpz_class discriminant;
  mpq_class j;
};

// Throws DomainError on a singular model.
CurveInvariants compute_invariants(const WeierstrassModel& e);

// Same coefficient shape over Q; used for Velu outputs before integralisation.
struct RationalModel {
  mpq_class a1, a2, a3, a4, a6;

  static RationalModel from(const WeierstrassModel& e);
  bool is_integral() const;
  WeierstrassModel to_integral() const;  // requires is_integral()
  mpq_class b2() const;
  mpq_class discriminant() const;
};

// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Transformation {
  mpq_class u{1}, r{0}, s{0}, t{0};

  bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
  // Apply this then `next`.
  Transformation then(const Transformation& next) const;
  Transformation inverse() const;

  friend bool operator==(const Transformation&, const Transformation&) = default;
};

RationalModel apply(const RationalModel& e, const Transformation& w);
WeierstrassModel apply(const WeierstrassModel& e, const Transformation& w);  // result must be integral

struct RationalPoint {
  mpq_class x, y;
  bool infinity = false;

  static RationalPoint at_infinity() { return RationalPoint{0, 0, true}; }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

bool on_curve(const RationalModel& e, const RationalPoint& p);
bool on_curve(const WeierstrassModel& e, const RationalPoint& p);
RationalPoint negate(const RationalModel& e, const RationalPoint& p);
RationalPoint add(const RationalModel& e, const RationalPoint& p, const RationalPoint& q);
RationalPoint multiply(const RationalModel& e, const RationalPoint& p, long n);
// Coordinates of p on the transformed curve apply(e, w).
RationalPoint transform_point(const RationalPoint& p, const Transformation& w);

struct MinimalModel {
  WeierstrassModel model;
  Transformation transform;  // model == apply(input, transform)
};

// Global minimal model in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}).
MinimalModel minimal_model(const WeierstrassModel& e);
MinimalModel minimal_model(const RationalModel& e);

// Reduced model with the given invariants; they must satisfy Kraus's conditions.
WeierstrassModel model_from_c4c6(const mpz_class& c4, const mpz_class& c6);

}  // namespace nscurve::ec
