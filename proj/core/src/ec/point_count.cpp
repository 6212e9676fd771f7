#include "nscurve/ec/point_count.hpp"

#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include "nscurve/arith.hpp"
#include "nscurve/ec/fp_curve.hpp"
#include "nscurve/ec/local_data.hpp"
#include "nscurve/error.hpp"

namespace nscurve::ec {

namespace {

using arith::u64;

u64 point_key(const FpPoint& p, u64 ell) {
  return p.infinity ? ~0ULL : p.x * ell + p.y;
}

std::int64_t hasse_bound(u64 ell) {
  auto h = static_cast<std::int64_t>(std::floor(2.0 * std::sqrt(static_cast<double>(ell))));
  while ((h + 1) * (h + 1) <= static_cast<std::int64_t>(4 * ell)) ++h;
  return h;
}

// Every a in [-h, h] with (ell + 1 - a) P = O.
std::set<std::int64_t> bsgs_candidates(const FpCurve& c, const FpPoint& p, std::int64_t h) {
  const u64 ell = c.prime();
  const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * h + 1)));
  std::unordered_map<u64, std::vector<std::int64_t>> baby;
  FpPoint jp;
  for (std::int64_t j = 0; j < m; ++j) {
    baby[point_key(jp, ell)].push_back(j);
    jp = c.add(jp, p);
  }
  // Want a P = Q with Q = (ell + 1) P and a = k m + j.
  const FpPoint q = c.multiply(p, static_cast<std::int64_t>(ell + 1));
  const FpPoint giant = c.negate(c.multiply(p, m));
  const std::int64_t kmin = -((h + m - 1) / m) - 1;
  const std::int64_t kmax = h / m + 1;
  FpPoint r = c.add(q, c.multiply(giant, kmin));
  std::set<std::int64_t> out;
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    auto it = baby.find(point_key(r, ell));
    if (it != baby.end()) {
      for (auto j : it->second) {
        const std::int64_t a = k * m + j;
        if (a >= -h && a <= h) out.insert(a);
      }
    }
    r = c.add(r, giant);
  }
  return out;
}

}  // namespace

std::int64_t ap_naive(const WeierstrassModel& e, u64 ell) {
  if (ell == 2) {
    const FpCurve c(e, 2);
    std::int64_t count = 1;
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y)
        if (c.contains(FpPoint{x, y, false})) ++count;
    return 3 - count;
  }
  const CurveInvariants inv = compute_invariants(e);
  const auto b2 = arith::mod(inv.b2, ell), b4 = arith::mod(inv.b4, ell), b6 = arith::mod(inv.b6, ell);
  // chi[v] in {-1, 0, 1}
  std::vector<std::int8_t> chi(ell, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= ell / 2; ++y) chi[y * y % ell] = 1;
  // f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6; 4y'^2 = f(x) after completing the square.
  std::int64_t sum = 0;
  const u64 c1 = 2 * b4 % ell;
  for (u64 x = 0; x < ell; ++x) {
    const u64 f = ((((4 * x + b2) % ell) * x + c1) % ell * x + b6) % ell;
    sum += chi[f];
  }
  return -sum;
}

std::optional<std::int64_t> ap_bsgs(const WeierstrassModel& e, u64 ell, u64 seed) {
  if (ell < 5) return std::nullopt;
  const FpCurve c(e, ell);
  const std::int64_t h = hasse_bound(ell);
  std::mt19937_64 rng(seed ^ ell);
  std::set<std::int64_t> candidates;
  bool first = true;
  for (int trial = 0; trial < 12; ++trial) {
    const auto found = bsgs_candidates(c, c.random_point(rng), h);
    if (first) {
      candidates = found;
      first = false;
    } else {
      std::set<std::int64_t> both;
      for (auto a : found)
        if (candidates.count(a)) both.insert(a);
      candidates.swap(both);
    }
    if (candidates.size() == 1) return *candidates.begin();
    if (candidates.empty()) break;
  }
  return std::nullopt;
}

std::int64_t ap_count(const WeierstrassModel& e, u64 ell) {
  if (!arith::is_prime(ell)) throw DomainError("ap_count: " + std::to_string(ell) + " is not prime");
  const CurveInvariants inv = compute_invariants(e);
  if (arith::mod(inv.discriminant, ell) == 0)
    throw DomainError("ap_count: bad reduction at " + std::to_string(ell));
  if (ell < kNaiveCountLimit) return ap_naive(e, ell);
  if (auto a = ap_bsgs(e, ell)) return *a;
  return ap_naive(e, ell);
}

std::vector<std::int64_t> an_sequence(const WeierstrassModel& input, std::uint32_t n) {
  std::vector<std::int64_t> a(static_cast<std::size_t>(n) + 1, 0);
  if (n == 0) return a;
  a[1] = 1;
  const WeierstrassModel e = minimal_model(input).model;
  const CurveInvariants inv = compute_invariants(e);
  const auto spf = arith::smallest_prime_factors(n);
  for (std::uint32_t k = 2; k <= n; ++k) {
    const std::uint32_t q = spf[k];
    if (q != k) {
      std::uint32_t qe = q, rest = k / q;
      while (rest % q == 0) {
        rest /= q;
        qe *= q;
      }
      if (rest > 1) {
        a[k] = a[qe] * a[rest];
        continue;
      }
      // prime power q^e = k
      const std::uint32_t prev = k / q;
      if (arith::mod(inv.discriminant, q) == 0) {
        a[k] = a[prev] * a[q];
      } else {
        a[k] = a[q] * a[prev] - static_cast<std::int64_t>(q) * a[prev / q];
      }
      continue;
    }
    if (arith::mod(inv.discriminant, q) != 0) {
      a[k] = q < kNaiveCountLimit ? ap_naive(e, q) : ap_count(e, q);
      continue;
    }
    const ReductionData rd = local_data(e, mpz_class(q));
    if (rd.split == SplitType::Split) {
      a[k] = 1;
    } else if (rd.split == SplitType::Nonsplit) {
      a[k] = -1;
    } else {
      a[k] = 0;
    }
  }
  return a;
}

}  // namespace nscurve::ec
