#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nscurve::modsym {

// P^1(F_p) for prime p. Index k < p is (1:k); index p is (0:1).
class P1 {
 public:
  explicit P1(std::uint32_t p);  // throws DomainError unless p is prime

  std::uint32_t prime() const { return p_; }
  std::uint32_t size() const { return p_ + 1; }

  // (c:d) for arbitrary integers, not both divisible by p.
  std::uint32_t index(std::int64_t c, std::int64_t d) const;
  std::pair<std::uint32_t, std::uint32_t> element(std::uint32_t i) const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inv_;
};

}  // namespace nscurve::modsym
