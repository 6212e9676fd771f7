#include "nscurve/modsym/p1.hpp"

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::modsym {

P1::P1(std::uint32_t p) : p_(p) {
  if (!arith::is_prime(static_cast<arith::u64>(p))) throw DomainError("P1: level " + std::to_string(p) + " is not prime");
  inv_.assign(p, 0);
  if (p > 1) inv_[1] = 1;
  for (std::uint32_t a = 2; a < p; ++a)
    inv_[a] = static_cast<std::uint32_t>(p - static_cast<std::uint64_t>(p / a) * inv_[p % a] % p);
}

std::uint32_t P1::index(std::int64_t c, std::int64_t d) const {
  const auto cm = static_cast<std::uint64_t>(arith::mod(c, p_));
  const auto dm = static_cast<std::uint64_t>(arith::mod(d, p_));
  if (cm == 0) {
    if (dm == 0) throw DomainError("P1: (0:0) is not a point");
    return p_;
  }
  return static_cast<std::uint32_t>(dm * inv_[cm] % p_);
}

std::pair<std::uint32_t, std::uint32_t> P1::element(std::uint32_t i) const {
  if (i == p_) return {0, 1};
  return {1, i};
}

}  // namespace nscurve::modsym
