#pragma once

#include <string>

#include <gmpxx.h>

#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

enum class KodairaKind { Good, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct Kodaira {
  KodairaKind kind = KodairaKind::Good;
  int n = 0;  // index for I_n and I_n*

  std::string to_string() const;
  friend bool operator==(const Kodaira&, const Kodaira&) = default;
};

enum class SplitType { Split, Nonsplit, NotMultiplicative };

struct ReductionData {
  mpz_class prime;
  Kodaira kodaira;
  int tamagawa = 1;
  SplitType split = SplitType::NotMultiplicative;
  int disc_valuation = 0;      // of the q-minimal model
  int conductor_exponent = 0;
};

// Tate's algorithm at the prime q. Non-minimal input is minimised at q on the way.
ReductionData local_data(const WeierstrassModel& e, const mpz_class& q);

}  // namespace nscurve::ec
