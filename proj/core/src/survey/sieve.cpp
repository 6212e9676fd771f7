#include "nscurve/survey/sieve.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "nscurve/arith.hpp"

namespace nscurve::survey {

namespace {

constexpr std::uint64_t kSegment = 1 << 15;

struct Root {
  std::uint64_t q, r;  // u = r (mod q) gives q | u^2 + 64
};

std::vector<Root> small_roots() {
  std::vector<Root> out;
  for (auto q : arith::primes_up_to(2000)) {
    if (q == 2) continue;
    for (std::uint64_t r = 0; r < q; ++r)
      if ((r * r + 64) % q == 0) out.push_back({q, r});
  }
  return out;
}

bool value_is_prime(std::uint64_t u) {
  const mpz_class v = mpz_class(u) * u + 64;
  return arith::is_prime(v);
}

}  // namespace

std::vector<std::uint64_t> sieve_ns_u(std::uint64_t u_max) { return sieve_ns_u(1, u_max); }

std::vector<std::uint64_t> sieve_ns_u(std::uint64_t lo, std::uint64_t hi) {
  static const std::vector<Root> roots = small_roots();
  std::vector<std::uint64_t> out;
  lo = std::max<std::uint64_t>(lo, 1);
  if (lo % 2 == 0) ++lo;
  std::vector<char> alive;
  for (std::uint64_t start = lo; start <= hi; start += 2 * kSegment) {
    // slot i stands for u = start + 2i
    const std::uint64_t end = std::min(hi, start + 2 * (kSegment - 1));
    const std::uint64_t slots = (end - start) / 2 + 1;
    alive.assign(slots, 1);
    for (const Root& root : roots) {
      // first u >= start, u odd, u = r (mod q); odd u step by 2q
      std::uint64_t u = start + (root.r + root.q - start % root.q) % root.q;
      if (u % 2 == 0) u += root.q;
      for (; u <= end; u += 2 * root.q)
        if (u >= root.q || u * u + 64 != root.q) alive[(u - start) / 2] = 0;
    }
    for (std::uint64_t i = 0; i < slots; ++i)
      if (alive[i] && value_is_prime(start + 2 * i)) out.push_back(start + 2 * i);
  }
  return out;
}

}  // namespace nscurve::survey
