#include "nscurve/ec/local_data.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::ec {

std::string Kodaira::to_string() const {
  switch (kind) {
    case KodairaKind::Good: return "I0";
    case KodairaKind::In: return "I" + std::to_string(n);
    case KodairaKind::II: return "II";
    case KodairaKind::III: return "III";
    case KodairaKind::IV: return "IV";
    case KodairaKind::I0Star: return "I0*";
    case KodairaKind::InStar: return "I" + std::to_string(n) + "*";
    case KodairaKind::IVStar: return "IV*";
    case KodairaKind::IIIStar: return "III*";
    case KodairaKind::IIStar: return "II*";
  }
  return "?";
}

namespace {

using Poly = std::vector<mpz_class>;  // low degree first

mpz_class md(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

bool divisible(const mpz_class& a, const mpz_class& d) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

mpz_class inverse(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), md(a, p).get_mpz_t(), p.get_mpz_t()))
    throw std::logic_error("local_data: non-invertible residue");
  return r;
}

// Roots mod p of A Y^2 + B Y + C with A a unit.
struct Quadratic {
  bool distinct = false;
  bool split = false;    // meaningful when distinct
  mpz_class double_root;  // meaningful when !distinct
};

Quadratic quadratic(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& p) {
  Quadratic q;
  if (p == 2) {
    // a is odd, so this is Y^2 + bY + c
    q.distinct = md(b, p) != 0;
    q.split = q.distinct && md(c, p) == 0;
    q.double_root = md(c, p);
    return q;
  }
  const mpz_class disc = md(b * b - 4 * a * c, p);
  q.distinct = disc != 0;
  if (q.distinct) {
    q.split = mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) == 1;
  } else {
    q.double_root = md(-b * inverse(2 * a, p), p);
  }
  return q;
}

// Factorisation shape of a monic cubic mod p.
struct Cubic {
  enum Shape { Distinct, Double, Triple } shape = Distinct;
  int roots = 0;       // F_p-roots, for Distinct
  mpz_class repeated;  // the repeated root otherwise
};

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mod(Poly f, const Poly& g, const mpz_class& p) {
  const mpz_class lead_inv = inverse(g.back(), p);
  f = trim(f);
  while (f.size() >= g.size()) {
    const mpz_class coef = md(f.back() * lead_inv, p);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = md(f[shift + i] - coef * g[i], p);
    f = trim(f);
  }
  return f;
}

Poly poly_gcd(Poly a, Poly b, const mpz_class& p) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const mpz_class li = inverse(a.back(), p);
    for (auto& c : a) c = md(c * li, p);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = md(c, p);
  return poly_mod(r, m, p);
}

Cubic classify_cubic(const mpz_class& c2, const mpz_class& c1, const mpz_class& c0, const mpz_class& p) {
  Cubic out;
  if (p < 1000) {
    const unsigned long pp = p.get_ui();
    for (unsigned long x = 0; x < pp; ++x) {
      // multiplicity of x as a root by repeated synthetic division
      std::vector<long> f = {static_cast<long>(md(c0, p).get_si()), static_cast<long>(md(c1, p).get_si()),
                             static_cast<long>(md(c2, p).get_si()), 1};
      int mult = 0;
      while (f.size() > 1) {
        std::vector<long> q(f.size() - 1);
        long carry = 0;
        for (std::size_t i = f.size(); i-- > 1;) {
          carry = (f[i] + carry * static_cast<long>(x)) % static_cast<long>(pp);
          q[i - 1] = carry;
        }
        const long rem = (f[0] + carry * static_cast<long>(x)) % static_cast<long>(pp);
        if (rem != 0) break;
        ++mult;
        f = std::move(q);
      }
      if (mult >= 2) {
        out.shape = mult == 3 ? Cubic::Triple : Cubic::Double;
        out.repeated = x;
        return out;
      }
      out.roots += mult;
    }
    return out;
  }
  const Poly f = {md(c0, p), md(c1, p), md(c2, p), 1};
  const Poly df = {md(c1, p), md(2 * c2, p), 3};
  const Poly g = poly_gcd(f, df, p);
  if (g.size() == 2) {
    out.shape = Cubic::Double;
    out.repeated = md(-g[0], p);
    return out;
  }
  if (g.size() == 3) {
    out.shape = Cubic::Triple;
    out.repeated = md(-g[1] * inverse(2, p), p);
    return out;
  }
  // number of roots = deg gcd(f, T^p - T)
  Poly acc = {1}, base = {0, 1};
  for (std::size_t bit = mpz_sizeinbase(p.get_mpz_t(), 2); bit-- > 0;) {
    acc = poly_mulmod(acc, acc, f, p);
    if (mpz_tstbit(p.get_mpz_t(), bit)) acc = poly_mulmod(acc, base, f, p);
  }
  acc.resize(std::max<std::size_t>(acc.size(), 2), 0);
  acc[1] = md(acc[1] - 1, p);
  const Poly h = poly_gcd(f, acc, p);
  out.roots = h.empty() ? 3 : static_cast<int>(h.size()) - 1;
  return out;
}

struct Model {
  mpz_class a1, a2, a3, a4, a6;

  mpz_class b2() const { return a1 * a1 + 4 * a2; }
  mpz_class b4() const { return a1 * a3 + 2 * a4; }
  mpz_class b6() const { return a3 * a3 + 4 * a6; }
  mpz_class b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  mpz_class disc() const {
    const auto B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
  // x = x' + r, y = y' + s x' + t
  void shift(const mpz_class& r, const mpz_class& s, const mpz_class& t) {
    const mpz_class n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    const mpz_class n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    const mpz_class n3 = a3 + r * a1 + 2 * t;
    const mpz_class n2 = a2 - s * a1 + 3 * r - s * s;
    const mpz_class n1 = a1 + 2 * s;
    a1 = n1; a2 = n2; a3 = n3; a4 = n4; a6 = n6;
  }
};

// (r, t) moving a singular point of the reduction to (0, 0).
std::pair<mpz_class, mpz_class> singular_point(const Model& e, const mpz_class& p) {
  if (p <= 3) {
    const long pp = p.get_si();
    for (long x = 0; x < pp; ++x) {
      for (long y = 0; y < pp; ++y) {
        const mpz_class X = x, Y = y;
        const mpz_class f = Y * Y + e.a1 * X * Y + e.a3 * Y - X * X * X - e.a2 * X * X - e.a4 * X - e.a6;
        const mpz_class fx = e.a1 * Y - 3 * X * X - 2 * e.a2 * X - e.a4;
        const mpz_class fy = 2 * Y + e.a1 * X + e.a3;
        if (md(f, p) == 0 && md(fx, p) == 0 && md(fy, p) == 0) return {X, Y};
      }
    }
    throw std::logic_error("local_data: no singular point found");
  }
  const mpz_class b2 = e.b2(), b4 = e.b4(), b6 = e.b6();
  const mpz_class c4 = b2 * b2 - 24 * b4;
  const mpz_class c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  mpz_class r;
  if (divisible(c4, p)) {
    r = md(-b2 * inverse(12, p), p);
  } else {
    r = md(-(c6 + b2 * c4) * inverse(12 * c4, p), p);
  }
  const mpz_class t = md(-(e.a1 * r + e.a3) * inverse(2, p), p);
  return {r, t};
}

}  // namespace

ReductionData local_data(const WeierstrassModel& input, const mpz_class& p) {
  if (p < 2 || !arith::is_prime(p)) throw DomainError("local_data: " + p.get_str() + " is not prime");
  Model e{input.a1, input.a2, input.a3, input.a4, input.a6};
  if (e.disc() == 0) throw DomainError("local_data: singular model");
  ReductionData rd;
  rd.prime = p;
  const mpz_class p2 = p * p, p3 = p2 * p, p4 = p3 * p, p6 = p4 * p2;

  for (;;) {
    const int n = arith::valuation(e.disc(), p);
    rd.disc_valuation = n;
    if (n == 0) {
      rd.kodaira = {KodairaKind::Good, 0};
      rd.tamagawa = 1;
      rd.conductor_exponent = 0;
      return rd;
    }
    const auto [r0, t0] = singular_point(e, p);
    e.shift(r0, 0, t0);

    if (!divisible(e.b2(), p)) {
      const Quadratic q = quadratic(1, e.a1, -e.a2, p);
      rd.kodaira = {KodairaKind::In, n};
      rd.split = q.split ? SplitType::Split : SplitType::Nonsplit;
      rd.tamagawa = q.split ? n : (n % 2 ? 1 : 2);
      rd.conductor_exponent = 1;
      return rd;
    }
    if (!divisible(e.a6, p2)) {
      rd.kodaira = {KodairaKind::II, 0};
      rd.tamagawa = 1;
      rd.conductor_exponent = n;
      return rd;
    }
    if (!divisible(e.b8(), p3)) {
      rd.kodaira = {KodairaKind::III, 0};
      rd.tamagawa = 2;
      rd.conductor_exponent = n - 1;
      return rd;
    }
    if (!divisible(e.b6(), p3)) {
      const Quadratic q = quadratic(1, e.a3 / p, -e.a6 / p2, p);
      rd.kodaira = {KodairaKind::IV, 0};
      rd.tamagawa = q.split ? 3 : 1;
      rd.conductor_exponent = n - 2;
      return rd;
    }

    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    if (p == 2) {
      e.shift(0, md(e.a2, p), 2 * md(e.a6 / 4, p));
    } else {
      const mpz_class half = inverse(2, p);
      e.shift(0, md(-e.a1 * half, p), md(-e.a3 * inverse(2, p2), p2));
    }
    const Cubic cubic = classify_cubic(e.a2 / p, e.a4 / p2, e.a6 / p3, p);
    if (cubic.shape == Cubic::Distinct) {
      rd.kodaira = {KodairaKind::I0Star, 0};
      rd.tamagawa = 1 + cubic.roots;
      rd.conductor_exponent = n - 4;
      return rd;
    }
    if (cubic.shape == Cubic::Double) {
      e.shift(cubic.repeated * p, 0, 0);
      int m = 1;
      mpz_class mx = p2, my = p2;
      int c = 0;
      for (;;) {
        const Quadratic qy = quadratic(1, e.a3 / my, -e.a6 / (mx * my), p);
        if (qy.distinct) {
          c = qy.split ? 4 : 2;
          break;
        }
        e.shift(0, 0, qy.double_root * my);
        ++m;
        my *= p;
        const Quadratic qx = quadratic(e.a2 / p, e.a4 / (p * mx), e.a6 / (mx * my), p);
        if (qx.distinct) {
          c = qx.split ? 4 : 2;
          break;
        }
        e.shift(qx.double_root * mx, 0, 0);
        ++m;
        mx *= p;
      }
      rd.kodaira = {KodairaKind::InStar, m};
      rd.tamagawa = c;
      rd.conductor_exponent = n - 4 - m;
      return rd;
    }
    // triple root
    e.shift(cubic.repeated * p, 0, 0);
    const Quadratic q = quadratic(1, e.a3 / p2, -e.a6 / p4, p);
    if (q.distinct) {
      rd.kodaira = {KodairaKind::IVStar, 0};
      rd.tamagawa = q.split ? 3 : 1;
      rd.conductor_exponent = n - 6;
      return rd;
    }
    e.shift(0, 0, q.double_root * p2);
    if (!divisible(e.a4, p4)) {
      rd.kodaira = {KodairaKind::IIIStar, 0};
      rd.tamagawa = 2;
      rd.conductor_exponent = n - 7;
      return rd;
    }
    if (!divisible(e.a6, p6)) {
      rd.kodaira = {KodairaKind::IIStar, 0};
      rd.tamagawa = 1;
      rd.conductor_exponent = n - 8;
      return rd;
    }
    // not minimal at p
    e.a1 /= p;
    e.a2 /= p2;
    e.a3 /= p3;
    e.a4 /= p4;
    e.a6 /= p6;
  }
}

}  // namespace nscurve::ec
