#include "nscurve/ec/isogeny.hpp"

#include "nscurve/error.hpp"

namespace nscurve::ec {

TwoIsogeny::TwoIsogeny(const RationalModel& domain, const RationalPoint& kernel)
    : domain_(domain), kernel_(kernel) {
  if (kernel.infinity || !on_curve(domain, kernel))
    throw DomainError("velu: kernel is not an affine point of the curve");
  const mpq_class& x0 = kernel.x;
  const mpq_class& y0 = kernel.y;
  if (2 * y0 + domain.a1 * x0 + domain.a3 != 0) throw DomainError("velu: kernel point does not have order 2");
  t_ = 3 * x0 * x0 + 2 * domain.a2 * x0 + domain.a4 - domain.a1 * y0;
  const mpq_class w = x0 * t_;
  codomain_ = domain;
  codomain_.a4 = domain.a4 - 5 * t_;
  codomain_.a6 = domain.a6 - domain.b2() * t_ - 7 * w;
}

RationalPoint TwoIsogeny::operator()(const RationalPoint& p) const {
  if (p.infinity || p.x == kernel_.x) return RationalPoint::at_infinity();
  const mpq_class dx = p.x - kernel_.x;
  RationalPoint q;
  q.x = p.x + t_ / dx;
  q.y = p.y - t_ * (domain_.a1 * dx + p.y - kernel_.y) / (dx * dx);
  return q;
}

FpPoint TwoIsogeny::operator()(const FpCurve& dm, const FpPoint& p) const {
  if (p.infinity) return p;
  const std::uint64_t ell = dm.prime();
  const std::uint64_t x0 = dm.reduce(kernel_.x), y0 = dm.reduce(kernel_.y), t = dm.reduce(t_);
  if (p.x == x0) return FpPoint{};
  const std::uint64_t dx = (p.x + ell - x0) % ell;
  const std::uint64_t idx = dm.inv(dx);
  FpPoint q{0, 0, false};
  q.x = (p.x + t * idx) % ell;
  const std::uint64_t inner = (dm.a1 * dx % ell + p.y + ell - y0) % ell;
  const std::uint64_t sub = t * inner % ell * (idx * idx % ell) % ell;
  q.y = (p.y + ell - sub) % ell;
  return q;
}

WeierstrassModel velu_two_isogeny(const WeierstrassModel& e, const RationalPoint& kernel) {
  const TwoIsogeny phi(RationalModel::from(e), kernel);
  const RationalModel& c = phi.codomain();
  mpz_class d = 1;
  for (const mpq_class* a : {&c.a1, &c.a2, &c.a3, &c.a4, &c.a6}) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a->get_den_mpz_t());
  Transformation scale;
  scale.u = mpq_class(1) / mpq_class(d);
  return apply(c, scale).to_integral();
}

}  // namespace nscurve::ec
