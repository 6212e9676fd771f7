#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "nscurve/ec/weierstrass.hpp"
#include "nscurve/family/ns_curve.hpp"
#include "nscurve/real.hpp"

namespace nscurve::analytic {

inline constexpr std::uint64_t kTermCap = 50'000'000;

struct LValueResult {
  Real value;
  std::uint64_t terms = 0;
  Real tail_bound;      // bound on the omitted terms
  Real rounding_bound;  // bound on accumulated floating-point error
  mpz_class conductor;
};

// L(E, 1) = 2 sum_{n >= 1} a_n / n exp(-2 pi n / sqrt(N)) for prime conductor N,
// assuming root number +1. The tail is bounded with |a_n| <= d(n) sqrt(n) <= 2n.
// Throws DomainError when the conductor is not prime and PrecisionError when
// tol cannot be met under the term cap or at the given precision.
LValueResult lvalue_rank0(const ec::WeierstrassModel& e, double tol, long precision_bits = 128);

// Same with the conductor supplied by the caller (no factoring).
LValueResult lvalue_rank0(const ec::WeierstrassModel& e, const mpz_class& conductor, double tol,
                          long precision_bits = 128);

// Conductor from Tate's algorithm at every prime dividing the minimal discriminant.
mpz_class conductor(const ec::WeierstrassModel& e);

struct BSDData {
  Real l_value;
  Real omega;  // least real period times the number of real components
  long torsion = 2;
  long tamagawa = 1;
  Real sha_real;
  mpz_class sha;
  double residual = 0;
  bool perfect_square = false;
  long precision_bits = 0;  // rung of the precision ladder that succeeded
};

inline constexpr double kDefaultShaTolerance = 1e-3;

// Conjectural order of Sha for E0 (which = 0) or E1 (which = 1), rank 0 assumed:
// sha = L(E,1) t^2 / (Omega C) with t = 2. Retries at 64, 128 and 256 bits;
// throws PrecisionError when the rounding residual stays at or above tol.
BSDData bsd_sha(const family::NSPair& pair, int which, double tol = kDefaultShaTolerance);

enum class CurveTag { E0, E1 };

struct HeightComparison {
  Real omega0, omega1;            // real periods over all components
  Real error0, error1;            // their error bounds
  Real covolume0, covolume1;      // areas of the period parallelograms
  Real ratio;                     // omega1 / omega0
  CurveTag smaller_height = CurveTag::E1;
};

// Larger parallelogram area means smaller Faltings height. Throws PrecisionError
// when the periods cannot be separated or the two orderings disagree.
HeightComparison height_compare(const family::NSPair& pair, long precision_bits = 128);

const char* to_string(CurveTag t);

}  // namespace nscurve::analytic
