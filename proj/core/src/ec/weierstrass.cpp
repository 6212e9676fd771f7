#include "nscurve/ec/weierstrass.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::ec {

std::string WeierstrassModel::label() const {
  std::ostringstream os;
  os << '[' << a1 << ',' << a2 << ',' << a3 << ',' << a4 << ',' << a6 << ']';
  return os.str();
}

WeierstrassModel make_model(long a1, long a2, long a3, long a4, long a6) {
  return WeierstrassModel{a1, a2, a3, a4, a6};
}

WeierstrassModel parse_model(const std::string& text) {
  std::string body;
  for (char c : text) {
    if (c == '[' || c == ']' || c == ' ' || c == '\t') continue;
    body.push_back(c == ',' ? ' ' : c);
  }
  std::istringstream is(body);
  std::array<mpz_class, 5> a;
  for (auto& v : a) {
    std::string tok;
    if (!(is >> tok)) throw DomainError("model needs five coefficients: " + text);
    if (v.set_str(tok, 10) != 0) throw DomainError("bad coefficient '" + tok + "'");
  }
  std::string extra;
  if (is >> extra) throw DomainError("model has more than five coefficients: " + text);
  return WeierstrassModel{a[0], a[1], a[2], a[3], a[4]};
}

namespace {

template <class T>
struct BInv {
  T b2, b4, b6, b8, c4, c6, disc;
};

template <class T>
BInv<T> b_invariants(const T& a1, const T& a2, const T& a3, const T& a4, const T& a6) {
  BInv<T> r;
  r.b2 = a1 * a1 + 4 * a2;
  r.b4 = 2 * a4 + a1 * a3;
  r.b6 = a3 * a3 + 4 * a6;
  r.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  r.c4 = r.b2 * r.b2 - 24 * r.b4;
  r.c6 = -r.b2 * r.b2 * r.b2 + 36 * r.b2 * r.b4 - 216 * r.b6;
  r.disc = -r.b2 * r.b2 * r.b8 - 8 * r.b4 * r.b4 * r.b4 - 27 * r.b6 * r.b6 + 9 * r.b2 * r.b4 * r.b6;
  return r;
}

}  // namespace

CurveInvariants compute_invariants(const WeierstrassModel& e) {
  auto b = b_invariants<mpz_class>(e.a1, e.a2, e.a3, e.a4, e.a6);
  if (b.disc == 0) throw DomainError("singular model " + e.label() + " (discriminant 0)");
  CurveInvariants inv{b.b2, b.b4, b.b6, b.b8, b.c4, b.c6, b.disc, mpq_class(b.c4 * b.c4 * b.c4, b.disc)};
  inv.j.canonicalize();
  return inv;
}

RationalModel RationalModel::from(const WeierstrassModel& e) {
  return RationalModel{mpq_class(e.a1), mpq_class(e.a2), mpq_class(e.a3), mpq_class(e.a4), mpq_class(e.a6)};
}

bool RationalModel::is_integral() const {
  return a1.get_den() == 1 && a2.get_den() == 1 && a3.get_den() == 1 && a4.get_den() == 1 &&
         a6.get_den() == 1;
}

WeierstrassModel RationalModel::to_integral() const {
  if (!is_integral()) throw std::logic_error("model is not integral");
  return WeierstrassModel{a1.get_num(), a2.get_num(), a3.get_num(), a4.get_num(), a6.get_num()};
}

mpq_class RationalModel::b2() const { return a1 * a1 + 4 * a2; }

mpq_class RationalModel::discriminant() const {
  return b_invariants<mpq_class>(a1, a2, a3, a4, a6).disc;
}

Transformation Transformation::then(const Transformation& n) const {
  Transformation out;
  out.u = u * n.u;
  out.r = r + u * u * n.r;
  out.s = s + u * n.s;
  out.t = t + u * u * u * n.t + s * u * u * n.r;
  return out;
}

Transformation Transformation::inverse() const {
  Transformation out;
  out.u = 1 / u;
  out.r = -r / (u * u);
  out.s = -s / u;
  out.t = (s * r - t) / (u * u * u);
  return out;
}

RationalModel apply(const RationalModel& e, const Transformation& w) {
  const mpq_class &u = w.u, &r = w.r, &s = w.s, &t = w.t;
  const mpq_class u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  RationalModel o;
  o.a1 = (e.a1 + 2 * s) / u;
  o.a2 = (e.a2 - s * e.a1 + 3 * r - s * s) / u2;
  o.a3 = (e.a3 + r * e.a1 + 2 * t) / u3;
  o.a4 = (e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t) / u4;
  o.a6 = (e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1) / u6;
  return o;
}

WeierstrassModel apply(const WeierstrassModel& e, const Transformation& w) {
  return apply(RationalModel::from(e), w).to_integral();
}

bool on_curve(const RationalModel& e, const RationalPoint& p) {
  if (p.infinity) return true;
  const mpq_class lhs = p.y * p.y + e.a1 * p.x * p.y + e.a3 * p.y;
  const mpq_class rhs = p.x * p.x * p.x + e.a2 * p.x * p.x + e.a4 * p.x + e.a6;
  return lhs == rhs;
}

bool on_curve(const WeierstrassModel& e, const RationalPoint& p) {
  return on_curve(RationalModel::from(e), p);
}

RationalPoint negate(const RationalModel& e, const RationalPoint& p) {
  if (p.infinity) return p;
  return RationalPoint{p.x, -p.y - e.a1 * p.x - e.a3, false};
}

RationalPoint add(const RationalModel& e, const RationalPoint& p, const RationalPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  mpq_class lambda, nu;
  if (p.x == q.x) {
    const mpq_class den = 2 * p.y + e.a1 * p.x + e.a3;
    if (p.y != q.y || den == 0) return RationalPoint::at_infinity();
    lambda = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4 - e.a1 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  nu = p.y - lambda * p.x;
  RationalPoint r;
  r.x = lambda * lambda + e.a1 * lambda - e.a2 - p.x - q.x;
  r.y = -(lambda + e.a1) * r.x - nu - e.a3;
  return r;
}

RationalPoint multiply(const RationalModel& e, const RationalPoint& p, long n) {
  RationalPoint base = n < 0 ? negate(e, p) : p;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  RationalPoint acc = RationalPoint::at_infinity();
  while (k) {
    if (k & 1) acc = add(e, acc, base);
    base = add(e, base, base);
    k >>= 1;
  }
  return acc;
}

RationalPoint transform_point(const RationalPoint& p, const Transformation& w) {
  if (p.infinity) return p;
  const mpq_class u2 = w.u * w.u;
  RationalPoint o;
  o.x = (p.x - w.r) / u2;
  o.y = (p.y - w.s * u2 * o.x - w.t) / (u2 * w.u);
  return o;
}

namespace {

// Largest mpz_class with q^e | n, or a huge sentinel for n = 0.
int val_or_inf(const mpz_class& n, const mpz_class& q) {
  return n == 0 ? 1 << 20 : arith::valuation(n, q);
}

bool kraus_at_3(const mpz_class& c6) { return c6 == 0 || arith::valuation(c6, 3) != 2; }

bool kraus_at_2(const mpz_class& c4, const mpz_class& c6) {
  if (arith::mod(c6, 4) == 3) return true;
  if (val_or_inf(c4, 2) < 4) return false;
  const auto r = arith::mod(c6, 32);
  return r == 0 || r == 8;
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

WeierstrassModel model_from_c4c6(const mpz_class& c4, const mpz_class& c6) {
  if (!kraus_at_2(c4, c6) || !kraus_at_3(c6)) {
    throw DomainError("c4, c6 violate Kraus's conditions");
  }
  mpz_class b2 = -c6 % 12;  // truncated remainder
  if (b2 < 0) b2 += 12;
  if (b2 > 6) b2 -= 12;
  const mpz_class b4num = b2 * b2 - c4;
  const mpz_class b6num = -b2 * b2 * b2 - c6;
  if (b4num % 24 != 0) throw DomainError("c4, c6 do not come from an integral model");
  const mpz_class b4 = b4num / 24;
  const mpz_class b6full = b6num + 36 * b2 * b4;
  if (b6full % 216 != 0) throw DomainError("c4, c6 do not come from an integral model");
  const mpz_class b6 = b6full / 216;
  const mpz_class a1 = arith::mod(b2, 2);
  const mpz_class a3 = arith::mod(b6, 2);
  WeierstrassModel m{a1, (b2 - a1) / 4, a3, (b4 - a1 * a3) / 2, (b6 - a3) / 4};
  const auto check = compute_invariants(m);
  if (check.c4 != c4 || check.c6 != c6) throw std::logic_error("model_from_c4c6 reconstruction failed");
  return m;
}

MinimalModel minimal_model(const WeierstrassModel& e) {
  const auto inv = compute_invariants(e);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), inv.c4.get_mpz_t(), inv.c6.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), inv.discriminant.get_mpz_t());
  mpz_class scale = 1;
  mpz_class c4 = inv.c4, c6 = inv.c6;
  if (g != 1) {
    for (const auto& [q, mult] : arith::factor(g).factors) {
      (void)mult;
      int e_max = std::min({val_or_inf(c4, q) / 4, val_or_inf(c6, q) / 6,
                            arith::valuation(inv.discriminant, q) / 12});
      for (int k = e_max; k > 0; --k) {
        const mpz_class q4 = ipow(q, 4 * k), q6 = ipow(q, 6 * k);
        const mpz_class c4s = c4 / q4, c6s = c6 / q6;
        const bool ok = (q == 2) ? kraus_at_2(c4s, c6s) : (q == 3) ? kraus_at_3(c6s) : true;
        if (ok) {
          c4 = c4s;
          c6 = c6s;
          scale *= ipow(q, k);
          break;
        }
      }
    }
  }
  WeierstrassModel target = model_from_c4c6(c4, c6);
  const RationalModel src = RationalModel::from(e);
  for (int sign : {1, -1}) {
    Transformation w;
    w.u = mpq_class(scale * sign);
    w.s = (w.u * target.a1 - e.a1) / 2;
    w.r = (w.u * w.u * target.a2 - e.a2 + w.s * e.a1 + w.s * w.s) / 3;
    w.t = (w.u * w.u * w.u * target.a3 - e.a3 - w.r * e.a1) / 2;
    const RationalModel got = apply(src, w);
    if (got.is_integral() && got.to_integral() == target) return MinimalModel{target, w};
  }
  throw std::logic_error("minimal_model: no transformation found for " + e.label());
}

MinimalModel minimal_model(const RationalModel& e) {
  mpz_class d = 1;
  for (const mpq_class* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6}) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a->get_den_mpz_t());
  }
  Transformation scale;
  scale.u = mpq_class(1, d);
  const WeierstrassModel integral = apply(e, scale).to_integral();
  auto mm = minimal_model(integral);
  mm.transform = scale.then(mm.transform);
  return mm;
}

}  // namespace nscurve::ec
