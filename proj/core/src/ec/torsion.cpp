#include "nscurve/ec/torsion.hpp"

#include <algorithm>

#include "nscurve/arith.hpp"
#include "nscurve/ec/period.hpp"

namespace nscurve::ec {

std::string TorsionGroup::to_string() const {
  if (invariants.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(invariants[i]) + "Z";
  }
  return s;
}

namespace {

bool integral(const RationalPoint& p) {
  return p.infinity || (p.x.get_den() == 1 && p.y.get_den() == 1);
}

// Order of p if it is torsion (all multiples integral and some k <= 12 kills it), else 0.
long torsion_order(const RationalModel& e, const RationalPoint& p) {
  RationalPoint q = p;
  for (long k = 1; k <= 12; ++k) {
    if (q.infinity) return k;
    if (!integral(q)) return 0;
    q = add(e, q, p);
  }
  return 0;
}

std::vector<mpz_class> integer_roots(const mpz_class& a, const mpz_class& c) {
  const long bits = static_cast<long>(std::max(mpz_sizeinbase(a.get_mpz_t(), 2), mpz_sizeinbase(c.get_mpz_t(), 2)));
  std::vector<mpz_class> out;
  for (const Real& r : depressed_cubic_real_roots(a, c, 2 * bits + 128)) {
    const mpz_class x0 = r.round();
    for (int d = -1; d <= 1; ++d) {
      const mpz_class x = x0 + d;
      if (x * x * x + a * x + c == 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

TorsionGroup lutz_nagell_torsion(const WeierstrassModel& e) {
  const CurveInvariants inv = compute_invariants(e);
  const mpz_class A = -27 * inv.c4, B = -54 * inv.c6;
  const mpz_class D = 4 * A * A * A + 27 * B * B;
  const RationalModel shortm{0, 0, 0, mpq_class(A), mpq_class(B)};

  std::vector<mpz_class> ys = {0};
  for (const auto& d : arith::square_divisors(arith::factor(D))) {
    ys.push_back(d);
    ys.push_back(-d);
  }

  struct Found {
    RationalPoint p;
    long order;
  };
  std::vector<Found> found;
  for (const auto& y : ys) {
    for (const auto& x : integer_roots(A, B - y * y)) {
      const RationalPoint p{mpq_class(x), mpq_class(y), false};
      if (const long ord = torsion_order(shortm, p)) found.push_back({p, ord});
    }
  }

  auto back = [&](const RationalPoint& p) {
    const mpq_class x = (p.x - 3 * mpq_class(inv.b2)) / 36;
    const mpq_class y = (p.y / 108 - mpq_class(e.a1) * x - mpq_class(e.a3)) / 2;
    return RationalPoint{x, y, false};
  };

  TorsionGroup g;
  g.order = static_cast<long>(found.size()) + 1;
  g.points.push_back(RationalPoint::at_infinity());
  for (const auto& f : found) g.points.push_back(back(f.p));
  if (g.order == 1) return g;

  std::vector<const Found*> two;
  const Found* top = nullptr;
  for (const auto& f : found) {
    if (f.order == 2) two.push_back(&f);
    if (!top || f.order > top->order) top = &f;
  }
  if (two.size() == 3) {
    const long m = g.order / 2;
    g.invariants = {2, m};
    // 2-torsion point outside <top>
    const RationalPoint inside = top->order == 2 ? top->p : multiply(shortm, top->p, m / 2);
    for (const Found* t : two) {
      if (!(t->p == inside)) {
        g.generators = {back(t->p), back(top->p)};
        break;
      }
    }
  } else {
    g.invariants = {g.order};
    g.generators = {back(top->p)};
  }
  return g;
}

}  // namespace nscurve::ec
