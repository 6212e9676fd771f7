#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace nscurve::modsym {

// Order of the class of the path {0, oo} in relative homology modulo the
// integral cuspidal lattice, i.e. of (0) - (oo) in J_0(p). Requires p >= 11 prime.
mpz_class cuspidal_class_order(std::uint32_t p);

}  // namespace nscurve::modsym
