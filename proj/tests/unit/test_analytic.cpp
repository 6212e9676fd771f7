#include <cmath>

#include "doctest.h"
#include "nscurve/analytic/lvalue.hpp"
#include "nscurve/ec/local_data.hpp"
#include "nscurve/ec/period.hpp"
#include "nscurve/error.hpp"

using namespace nscurve;
using namespace nscurve::analytic;

namespace {

std::vector<long> family_u(long bound) {
  std::vector<long> out;
  for (long u = -bound; u <= bound; ++u)
    if (((u % 4) + 4) % 4 == 3 && family::is_ns_u(mpz_class(u))) out.push_back(u);
  return out;
}

// a_n for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 by counting points mod each prime.
std::vector<long double> brute_an(long a1, long a2, long a3, long a4, long a6, long bad, int n) {
  std::vector<long> ap(n + 1, 0);
  std::vector<bool> composite(n + 1, false);
  std::vector<long double> an(n + 1, 0);
  for (long q = 2; q <= n; ++q) {
    if (composite[q]) continue;
    for (long m = q * q; m <= n; m += q) composite[m] = true;
    long count = 1;
    for (long x = 0; x < q; ++x) {
      const long b = ((a1 * x + a3) % q + q) % q;
      const long c = (((x * x % q) * x + a2 * x % q * x + a4 * x + a6) % q + q) % q;
      if (q == 2) {
        for (long y = 0; y < 2; ++y)
          if ((y * y + b * y) % 2 == c) ++count;
        continue;
      }
      // y^2 + b y = c has 1 + (disc / q) solutions; Euler's criterion for the symbol
      const long disc = (b * b + 4 * c) % q;
      long r = 1, base = disc, e = (q - 1) / 2;
      while (e > 0) {
        if (e & 1) r = r * base % q;
        base = base * base % q;
        e >>= 1;
      }
      count += disc == 0 ? 1 : (r == 1 ? 2 : 0);
    }
    ap[q] = q + 1 - count;  // at the bad prime this is the split/nonsplit sign
  }
  an[1] = 1;
  for (int k = 2; k <= n; ++k) {
    int q = 2;
    while (k % q != 0) ++q;
    int m = k, e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    // a_{q^e}
    long double prev = 1, cur = static_cast<long double>(ap[q]);
    for (int j = 2; j <= e; ++j) {
      const long double next = q == bad ? cur * ap[q] : ap[q] * cur - q * prev;
      prev = cur;
      cur = next;
    }
    an[k] = cur * an[m];
  }
  return an;
}

}  // namespace

TEST_CASE("L(E1, 1) at u = 3 matches direct summation") {
  const auto pair = family::construct_pair(mpz_class(3));
  const LValueResult l = lvalue_rank0(pair.e1, 1e-12);
  CHECK(l.conductor == 73);
  // E1 at u = 3 is [1, -1, 0, -1, 0]
  const auto an = brute_an(1, -1, 0, -1, 0, 73, 10000);
  const long double x = std::exp(-2 * M_PIl / std::sqrt(73.0L));
  long double sum = 0, xn = 1;
  for (int k = 1; k <= 10000; ++k) {
    xn *= x;
    sum += an[k] / k * xn;
  }
  CHECK(std::abs(l.value.to_double() - static_cast<double>(2 * sum)) < 1e-8);
  CHECK(l.value.sign() > 0);
}

TEST_CASE("L(11a1, 1) over the real period is 1/5") {
  const auto e = ec::parse_model("[0,-1,1,-10,-20]");
  const LValueResult l = lvalue_rank0(e, 1e-20);
  const ec::PeriodData om = ec::real_period(e);
  CHECK(std::abs((l.value / om.big_omega).to_double() - 0.2) < 1e-15);
}

TEST_CASE("conductor and input checks") {
  CHECK(conductor(ec::parse_model("[0,-1,1,-10,-20]")) == 11);
  CHECK(conductor(ec::parse_model("[0,0,1,-1,0]")) == 37);
  CHECK(conductor(ec::parse_model("[1,0,1,4,-6]")) == 14);
  CHECK(conductor(ec::parse_model("[1,1,1,-10,-10]")) == 15);
  CHECK_THROWS_AS(lvalue_rank0(ec::parse_model("[1,0,1,4,-6]"), 1e-10), DomainError);
  const auto pair = family::construct_pair(mpz_class(3));
  CHECK_THROWS_AS(lvalue_rank0(pair.e1, 1e-300, 64), PrecisionError);
  CHECK_THROWS_AS(lvalue_rank0(pair.e1, 1e-10, 32), PrecisionError);
  CHECK_THROWS_AS(bsd_sha(pair, 2), DomainError);
}

TEST_CASE("tighter tolerance stays inside the earlier error bound") {
  for (long u : family_u(100)) {
    CAPTURE(u);
    const auto pair = family::construct_pair(mpz_class(u));
    const LValueResult coarse = lvalue_rank0(pair.e1, pair.parameter.p, 1e-8);
    const LValueResult fine = lvalue_rank0(pair.e1, pair.parameter.p, 1e-20);
    CHECK(fine.terms >= 2 * coarse.terms);
    const double moved = std::abs((fine.value - coarse.value).to_double());
    CHECK(moved <= (coarse.tail_bound + coarse.rounding_bound + fine.rounding_bound).to_double());
  }
}

TEST_CASE("sha at u = 3") {
  const auto pair = family::construct_pair(mpz_class(3));
  const BSDData b1 = bsd_sha(pair, 1);
  CHECK(b1.sha == 1);
  CHECK(b1.residual < 1e-3);
  CHECK(b1.tamagawa == 1);
  CHECK(b1.torsion == 2);
  const BSDData b0 = bsd_sha(pair, 0);
  CHECK(b0.tamagawa == 2);
  // a 2-isogeny only moves the 2-part
  mpz_class odd0 = b0.sha, odd1 = b1.sha;
  while (mpz_even_p(odd0.get_mpz_t())) odd0 /= 2;
  while (mpz_even_p(odd1.get_mpz_t())) odd1 /= 2;
  CHECK(odd0 == odd1);
}

TEST_CASE("sha is a perfect square for |u| <= 100") {
  for (long u : family_u(100)) {
    CAPTURE(u);
    const auto pair = family::construct_pair(mpz_class(u));
    for (int which : {0, 1}) {
      const BSDData b = bsd_sha(pair, which);
      CHECK(b.perfect_square);
      CHECK(b.sha > 0);
    }
  }
}

TEST_CASE("Tamagawa numbers and sha residuals for |u| <= 500") {
  for (long u : family_u(500)) {
    CAPTURE(u);
    const auto pair = family::construct_pair(mpz_class(u));
    CHECK(ec::local_data(pair.e1, pair.parameter.p).tamagawa == 1);
    CHECK(ec::local_data(pair.e0, pair.parameter.p).tamagawa == 2);
    CHECK(bsd_sha(pair, 1).residual < 1e-3);
  }
}

TEST_CASE("E1 has the larger period for |u| <= 500") {
  for (long u : family_u(500)) {
    CAPTURE(u);
    const auto pair = family::construct_pair(mpz_class(u));
    const HeightComparison h = height_compare(pair);
    CHECK(h.smaller_height == CurveTag::E1);
    CHECK(h.ratio > Real(1.0, 64));
    CHECK(h.covolume1 > h.covolume0);
  }
  const auto pair = family::construct_pair(mpz_class(-17));
  const HeightComparison lo = height_compare(pair, 128);
  const HeightComparison hi = height_compare(pair, 256);
  CHECK(hi.smaller_height == CurveTag::E1);
  const double bound = (lo.error0 + lo.error1).to_double() * 4 + 1e-30;
  CHECK(std::abs((hi.ratio - lo.ratio).to_double()) < bound);
}
