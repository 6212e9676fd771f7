#pragma once

#include <cstdint>
#include <vector>

namespace nscurve::survey {

// Positive odd u <= u_max with u^2 + 64 prime, ascending. Small primes knock
// out residue classes segment by segment; survivors get a primality test.
std::vector<std::uint64_t> sieve_ns_u(std::uint64_t u_max);

// Same restricted to lo <= u <= hi.
std::vector<std::uint64_t> sieve_ns_u(std::uint64_t lo, std::uint64_t hi);

}  // namespace nscurve::survey
