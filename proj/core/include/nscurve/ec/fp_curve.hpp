#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::ec {

struct FpPoint {
  std::uint64_t x = 0, y = 0;
  bool infinity = true;

  friend bool operator==(const FpPoint&, const FpPoint&) = default;
};

// A Weierstrass model reduced modulo a prime ell (ell < 2^32). Arithmetic is
// affine; the model need not have good reduction, but the group law is only
// meaningful when it does.
class FpCurve {
 public:
  FpCurve(const WeierstrassModel& e, std::uint64_t ell);
  // Reduces rational coefficients; denominators must be prime to ell.
  FpCurve(const RationalModel& e, std::uint64_t ell);

  std::uint64_t prime() const { return ell_; }
  std::uint64_t reduce(const mpq_class& v) const;
  std::uint64_t inv(std::uint64_t v) const;

  bool contains(const FpPoint& p) const;
  FpPoint negate(const FpPoint& p) const;
  FpPoint add(const FpPoint& p, const FpPoint& q) const;
  FpPoint multiply(const FpPoint& p, std::int64_t n) const;
  // Uniform-ish random affine point.
  FpPoint random_point(std::mt19937_64& rng) const;
  // Reduction of a rational point, if its coordinates are ell-integral.
  std::optional<FpPoint> reduce(const RationalPoint& p) const;

  std::uint64_t a1, a2, a3, a4, a6;

 private:
  std::uint64_t add_(std::uint64_t a, std::uint64_t b) const { return (a + b) % ell_; }
  std::uint64_t sub_(std::uint64_t a, std::uint64_t b) const { return (a + ell_ - b) % ell_; }
  std::uint64_t mul_(std::uint64_t a, std::uint64_t b) const { return (a * b) % ell_; }
  std::uint64_t ell_;
};

}  // namespace nscurve::ec
