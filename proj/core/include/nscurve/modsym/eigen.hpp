#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nscurve/modsym/linalg.hpp"
#include "nscurve/modsym/space.hpp"

namespace nscurve::modsym {

// Fourier coefficient a_ell of the target newform at primes ell != level.
using ApFunction = std::function<std::int64_t(std::uint32_t)>;

struct EigenLattice {
  // Z-basis of the saturated rank-2 eigen lattice in generator coordinates (length 2g + 1).
  std::vector<IntegerVector> basis;
  // Z-basis of the integral eigen-functionals on the cuspidal lattice (length 2g).
  std::vector<IntegerVector> dual;
  // Primes whose Hecke operators were used, including the confirming one.
  std::vector<std::uint32_t> primes_used;
};

// Cuts out the rank-2 lattice on which T_ell acts as a_ell for every ell.
// Starts from a random combination of T_2..T_7 and adds primes until the kernel
// has rank 2, then confirms with one more prime. Throws CrossCheckError if the
// rank drops below 2 or stays above 2 past the Sturm bound.
EigenLattice eigen_lattice(const ManinSymbolSpace& space, const ApFunction& ap, std::uint64_t seed = 0x5eed);

// Nonzero vectors of the kernel of a small dense rational matrix.
std::vector<RationalVector> rational_kernel(const std::vector<RationalVector>& rows, std::size_t cols);

}  // namespace nscurve::modsym
