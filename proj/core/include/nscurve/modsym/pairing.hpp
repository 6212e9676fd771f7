#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "nscurve/modsym/linalg.hpp"
#include "nscurve/modsym/space.hpp"

namespace nscurve::modsym {

// Intersection pairing on the cuspidal lattice H_1(X_0(p); Z).
//
// Every generator is the symbol (1:k), an edge leaving position -1/k mod p and
// arriving at position k on the boundary circle of the fundamental polygon.
// A cycle crosses another where its arrivals and departures interleave, so the
// pairing reduces to prefix sums of net inflow.
class IntersectionPairing {
 public:
  explicit IntersectionPairing(const ManinSymbolSpace& space);

  // <a, b> for vectors in generator coordinates; both must have zero boundary.
  mpz_class operator()(const IntegerVector& a, const IntegerVector& b) const;

  // Gram matrix on the cuspidal basis (generators other than the cusp one).
  std::vector<std::vector<std::int64_t>> gram() const;

 private:
  std::uint32_t p_, cusp_;
  std::vector<std::uint32_t> arrive_, depart_;
};

}  // namespace nscurve::modsym
