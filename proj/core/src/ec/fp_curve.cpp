#include "nscurve/ec/fp_curve.hpp"

#include <stdexcept>

#include "nscurve/arith.hpp"

namespace nscurve::ec {

FpCurve::FpCurve(const WeierstrassModel& e, std::uint64_t ell)
    : FpCurve(RationalModel::from(e), ell) {}

FpCurve::FpCurve(const RationalModel& e, std::uint64_t ell) : ell_(ell) {
  if (ell >= (1ULL << 32)) throw std::invalid_argument("FpCurve: prime too large");
  a1 = reduce(e.a1);
  a2 = reduce(e.a2);
  a3 = reduce(e.a3);
  a4 = reduce(e.a4);
  a6 = reduce(e.a6);
}

std::uint64_t FpCurve::reduce(const mpq_class& v) const {
  const std::uint64_t num = arith::mod(v.get_num(), ell_);
  const std::uint64_t den = arith::mod(v.get_den(), ell_);
  if (den == 0) throw std::domain_error("FpCurve: denominator divisible by the prime");
  return mul_(num, inv(den));
}

std::uint64_t FpCurve::inv(std::uint64_t v) const {
  return static_cast<std::uint64_t>(arith::invmod(static_cast<arith::i64>(v), static_cast<arith::i64>(ell_)));
}

bool FpCurve::contains(const FpPoint& p) const {
  if (p.infinity) return true;
  const auto lhs = add_(add_(mul_(p.y, p.y), mul_(mul_(a1, p.x), p.y)), mul_(a3, p.y));
  const auto x2 = mul_(p.x, p.x);
  const auto rhs = add_(add_(add_(mul_(x2, p.x), mul_(a2, x2)), mul_(a4, p.x)), a6);
  return lhs == rhs;
}

FpPoint FpCurve::negate(const FpPoint& p) const {
  if (p.infinity) return p;
  return FpPoint{p.x, sub_(sub_(sub_(0, p.y), mul_(a1, p.x)), a3), false};
}

FpPoint FpCurve::add(const FpPoint& p, const FpPoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  std::uint64_t lambda;
  if (p.x == q.x) {
    const auto den = add_(add_(mul_(2, p.y), mul_(a1, p.x)), a3);
    if (p.y != q.y || den == 0) return FpPoint{};
    const auto num = sub_(add_(add_(mul_(3, mul_(p.x, p.x)), mul_(mul_(2, a2), p.x)), a4), mul_(a1, p.y));
    lambda = mul_(num, inv(den));
  } else {
    lambda = mul_(sub_(q.y, p.y), inv(sub_(q.x, p.x)));
  }
  const auto nu = sub_(p.y, mul_(lambda, p.x));
  FpPoint r{0, 0, false};
  r.x = sub_(sub_(sub_(add_(mul_(lambda, lambda), mul_(a1, lambda)), a2), p.x), q.x);
  r.y = sub_(sub_(sub_(0, mul_(add_(lambda, a1), r.x)), nu), a3);
  return r;
}

FpPoint FpCurve::multiply(const FpPoint& p, std::int64_t n) const {
  FpPoint base = n < 0 ? negate(p) : p;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  FpPoint acc;
  while (k) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

FpPoint FpCurve::random_point(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(0, ell_ - 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::uint64_t x = dist(rng);
    if (ell_ == 2) {
      for (std::uint64_t y = 0; y < 2; ++y) {
        FpPoint p{x, y, false};
        if (contains(p)) return p;
      }
      continue;
    }
    // y^2 + (a1 x + a3) y - f(x) = 0: discriminant (a1 x + a3)^2 + 4 f(x).
    const auto b = add_(mul_(a1, x), a3);
    const auto x2 = mul_(x, x);
    const auto f = add_(add_(add_(mul_(x2, x), mul_(a2, x2)), mul_(a4, x)), a6);
    const auto disc = add_(mul_(b, b), mul_(4, f));
    if (disc != 0 && arith::legendre(static_cast<arith::i64>(disc), static_cast<arith::i64>(ell_)) != 1) continue;
    // Tonelli-Shanks square root of disc.
    std::uint64_t root = 0;
    if (disc != 0) {
      std::uint64_t q = ell_ - 1;
      int s = 0;
      while ((q & 1) == 0) {
        q >>= 1;
        ++s;
      }
      std::uint64_t z = 2;
      while (arith::legendre(static_cast<arith::i64>(z), static_cast<arith::i64>(ell_)) != -1) ++z;
      std::uint64_t m = s, c = arith::powmod(z, q, ell_), t = arith::powmod(disc, q, ell_),
                    r = arith::powmod(disc, (q + 1) / 2, ell_);
      while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
          tt = mul_(tt, tt);
          ++i;
        }
        std::uint64_t bb = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) bb = mul_(bb, bb);
        m = i;
        c = mul_(bb, bb);
        t = mul_(t, c);
        r = mul_(r, bb);
      }
      root = r;
    }
    const auto half = inv(2);
    const auto sign = (dist(rng) & 1) ? root : sub_(0, root);
    FpPoint p{x, mul_(sub_(sign, b), half), false};
    if (contains(p)) return p;
  }
  throw std::runtime_error("FpCurve::random_point: no point found");
}

std::optional<FpPoint> FpCurve::reduce(const RationalPoint& p) const {
  if (p.infinity) return FpPoint{};
  if (arith::mod(p.x.get_den(), ell_) == 0 || arith::mod(p.y.get_den(), ell_) == 0) return std::nullopt;
  return FpPoint{reduce(p.x), reduce(p.y), false};
}

}  // namespace nscurve::ec
