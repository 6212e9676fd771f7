#include "nscurve/ec/period.hpp"

#include <algorithm>

#include "nscurve/error.hpp"

namespace nscurve::ec {

namespace {

Real polish(Real x, const Real& a, const Real& b) {
  const long prec = x.precision();
  const Real tiny = Real::exp2(-prec + 2, prec);
  for (int it = 0; it < 200; ++it) {
    const Real x2 = x * x;
    const Real g = x2 * x + a * x + b;
    const Real dg = Real(3.0, prec) * x2 + a;
    if (dg.sign() == 0) break;
    const Real step = g / dg;
    x -= step;
    if (abs(step) <= tiny * max(Real(1.0, prec), abs(x))) break;
  }
  return x;
}

struct Attempt {
  Real omega;
  int components;
};

Attempt compute(const CurveInvariants& inv, long w) {
  const auto xr = depressed_cubic_real_roots(-27 * inv.c4, -54 * inv.c6, w);
  std::vector<Real> e;
  for (const auto& X : xr) e.push_back((X - Real(mpz_class(inv.b2 * 3), w)) / Real(36.0, w));
  std::sort(e.begin(), e.end(), [](const Real& l, const Real& r) { return l > r; });
  const Real pi = Real::pi(w);
  if (inv.discriminant > 0) {
    if (e.size() != 3) throw PrecisionError("real_period: cubic roots not separated");
    const Real a = sqrt(e[0] - e[2]);
    const Real b = sqrt(e[0] - e[1]);
    return {pi / agm(a, b), 2};
  }
  const Real& e1 = e.front();
  const Real beta = Real(3.0, w) * e1 + Real(mpq_class(inv.b2, 4), w);
  const Real alpha =
      sqrt(Real(3.0, w) * e1 * e1 + Real(mpq_class(inv.b2, 2), w) * e1 + Real(mpq_class(inv.b4, 2), w));
  return {Real(2.0, w) * pi / agm(Real(2.0, w) * sqrt(alpha), sqrt(Real(2.0, w) * alpha + beta)), 1};
}

PeriodLattice lattice(const CurveInvariants& inv, long w) {
  const auto xr = depressed_cubic_real_roots(-27 * inv.c4, -54 * inv.c6, w);
  std::vector<Real> e;
  for (const auto& X : xr) e.push_back((X - Real(mpz_class(inv.b2 * 3), w)) / Real(36.0, w));
  std::sort(e.begin(), e.end(), [](const Real& l, const Real& r) { return l > r; });
  const Real pi = Real::pi(w);
  PeriodLattice out{Real(w), Real(w), Real(w), Real(w)};
  if (inv.discriminant > 0) {
    if (e.size() != 3) throw PrecisionError("period_lattice: cubic roots not separated");
    const Real a = sqrt(e[0] - e[2]);
    out.omega1 = pi / agm(a, sqrt(e[0] - e[1]));
    out.omega2_re = Real(0.0, w);
    out.omega2_im = pi / agm(a, sqrt(e[1] - e[2]));
  } else {
    const Real& e1 = e.front();
    const Real beta = Real(3.0, w) * e1 + Real(mpq_class(inv.b2, 4), w);
    const Real alpha =
        sqrt(Real(3.0, w) * e1 * e1 + Real(mpq_class(inv.b2, 2), w) * e1 + Real(mpq_class(inv.b4, 2), w));
    const Real two(2.0, w);
    out.omega1 = two * pi / agm(two * sqrt(alpha), sqrt(two * alpha + beta));
    out.omega2_re = out.omega1 / two;
    out.omega2_im = pi / agm(two * sqrt(alpha), sqrt(two * alpha - beta));
  }
  out.covolume = out.omega1 * out.omega2_im;
  return out;
}

}  // namespace

PeriodLattice period_lattice(const WeierstrassModel& e, long precision_bits) {
  if (precision_bits < 53) throw PrecisionError("period_lattice: precision below 53 bits");
  const CurveInvariants inv = compute_invariants(e);
  const long size_bits = static_cast<long>(mpz_sizeinbase(inv.discriminant.get_mpz_t(), 2));
  const Real tol = Real::exp2(-precision_bits + 8, 64);
  for (long w = precision_bits + 64 + size_bits; w <= 16 * precision_bits + 8 * size_bits + 1024; w += w / 2) {
    const PeriodLattice lo = lattice(inv, w);
    const PeriodLattice hi = lattice(inv, w + 64);
    const Real scale = max(abs(hi.omega1), abs(hi.omega2_im));
    if (abs(hi.omega1 - lo.omega1) <= tol * scale && abs(hi.omega2_im - lo.omega2_im) <= tol * scale) {
      auto cut = [&](const Real& x) {
        Real r(precision_bits);
        mpfr_set(r.get(), x.get(), MPFR_RNDN);
        return r;
      };
      return {cut(hi.omega1), cut(hi.omega2_re), cut(hi.omega2_im), cut(hi.covolume)};
    }
  }
  throw PrecisionError("period_lattice: roots not stable at precision " + std::to_string(precision_bits));
}

std::vector<Real> depressed_cubic_real_roots(const mpz_class& a, const mpz_class& b, long prec) {
  std::vector<Real> roots;
  const mpz_class disc4 = 4 * a * a * a + 27 * b * b;
  if (a == 0 && b == 0) {
    roots.emplace_back(0.0, prec);
    return roots;
  }
  if (disc4 == 0) {
    roots.emplace_back(mpq_class(-3 * b, 2 * a), prec);
    roots.emplace_back(mpq_class(3 * b, a), prec);
    std::sort(roots.begin(), roots.end(), [](const Real& l, const Real& r) { return l < r; });
    return roots;
  }
  const Real A(a, prec), B(b, prec);
  if (disc4 < 0) {
    // three real roots: 2 sqrt(-a/3) cos((acos(...) - 2 pi k) / 3)
    const Real s = Real(2.0, prec) * sqrt(-A / Real(3.0, prec));
    Real arg = Real(mpq_class(3 * b, 2 * a), prec) * sqrt(Real(mpq_class(-3, a), prec));
    if (arg > Real(1.0, prec)) arg = Real(1.0, prec);
    if (arg < Real(-1.0, prec)) arg = Real(-1.0, prec);
    Real phi(prec);
    mpfr_acos(phi.get(), arg.get(), MPFR_RNDN);
    const Real two_pi = Real(2.0, prec) * Real::pi(prec);
    for (int k = 0; k < 3; ++k) {
      Real ang = (phi - Real(static_cast<double>(k), prec) * two_pi) / Real(3.0, prec);
      Real c(prec);
      mpfr_cos(c.get(), ang.get(), MPFR_RNDN);
      roots.push_back(polish(s * c, A, B));
    }
  } else {
    // one real root; w * w' = -a/3 avoids cancellation in Cardano
    const Real half_b = B / Real(2.0, prec);
    const Real d = sqrt(half_b * half_b + A * A * A / Real(27.0, prec));
    Real t = half_b.sign() > 0 ? -half_b - d : -half_b + d;
    Real w(prec);
    mpfr_cbrt(w.get(), t.get(), MPFR_RNDN);
    roots.push_back(polish(w - A / (Real(3.0, prec) * w), A, B));
  }
  std::sort(roots.begin(), roots.end(), [](const Real& l, const Real& r) { return l < r; });
  return roots;
}

PeriodData real_period(const WeierstrassModel& e, long precision_bits) {
  if (precision_bits < 53) throw PrecisionError("real_period: precision below 53 bits");
  const CurveInvariants inv = compute_invariants(e);
  const Real target = Real::exp2(-precision_bits + 8, precision_bits);
  const long size_bits = static_cast<long>(mpz_sizeinbase(inv.discriminant.get_mpz_t(), 2));
  for (long w = precision_bits + 64 + size_bits; w <= 16 * precision_bits + 8 * size_bits + 1024; w += w / 2) {
    const Attempt lo = compute(inv, w);
    const Attempt hi = compute(inv, w + 64);
    Real err = Real(2.0, 64) * abs(hi.omega - lo.omega) * Real(static_cast<double>(hi.components), 64);
    PeriodData out{Real(precision_bits), hi.components, Real(precision_bits), Real(64)};
    mpfr_set(out.omega.get(), hi.omega.get(), MPFR_RNDN);
    out.big_omega = out.omega * Real(static_cast<double>(hi.components), precision_bits);
    err += abs(out.big_omega) * Real::exp2(-precision_bits + 1, 64);
    out.error = err;
    if (err <= target) return out;
  }
  throw PrecisionError("real_period: error bound not reached at precision " + std::to_string(precision_bits));
}

}  // namespace nscurve::ec
