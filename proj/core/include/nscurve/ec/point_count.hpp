#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

// Primes below this bound are counted by enumeration, the rest by BSGS.
inline constexpr std::uint64_t kNaiveCountLimit = 10000;

// a_ell = ell + 1 - #E(F_ell) by direct enumeration.
std::int64_t ap_naive(const WeierstrassModel& e, std::uint64_t ell);

// Baby-step giant-step on random points; nullopt when the random points
// leave more than one Hasse-interval candidate.
std::optional<std::int64_t> ap_bsgs(const WeierstrassModel& e, std::uint64_t ell,
                                    std::uint64_t seed = 0x5eed);

// Trace of Frobenius at a prime of good reduction. Throws DomainError when ell
// divides the discriminant or is not prime.
std::int64_t ap_count(const WeierstrassModel& e, std::uint64_t ell);

// a_1..a_n (index 0 unused, set to 0) of the L-series of e. Bad primes take
// a_q = +1 / -1 / 0 for split / nonsplit / additive reduction.
std::vector<std::int64_t> an_sequence(const WeierstrassModel& e, std::uint32_t n);

}  // namespace nscurve::ec
