#pragma once

#include <vector>

#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

struct TorsionGroup {
  std::vector<long> invariants;           // cyclic factors, e.g. {5} or {2, 4}; empty if trivial
  long order = 1;
  std::vector<RationalPoint> generators;  // one per invariant
  std::vector<RationalPoint> points;      // every torsion point, infinity first

  std::string to_string() const;          // "Z/2Z", "Z/2Z x Z/4Z", "trivial"
};

// Rational torsion by the Lutz-Nagell criterion on y^2 = x^3 - 27c4 x - 54c6,
// so points with denominators 4 (x) and 8 (y) on the input model are found.
TorsionGroup lutz_nagell_torsion(const WeierstrassModel& e);

}  // namespace nscurve::ec
