#include "doctest.h"
#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"
#include "nscurve/ec/isogeny.hpp"
#include "nscurve/ec/local_data.hpp"
#include "nscurve/ec/torsion.hpp"
#include "nscurve/family/ns_curve.hpp"

using namespace nscurve;
using namespace nscurve::family;

TEST_CASE("parameter validity and normalisation") {
  CHECK(is_ns_u(3));
  CHECK_FALSE(is_ns_u(1));
  CHECK_FALSE(is_ns_u(9));
  CHECK_FALSE(is_ns_u(4));
  CHECK(is_ns_u(-17));
  CHECK(normalize_u(3) == 3);
  CHECK(normalize_u(17) == -17);
  CHECK(normalize_u(-33) == -33);
  CHECK(normalize_u(-127) == 127);
  CHECK_THROWS_AS(normalize_u(10), DomainError);
  CHECK_THROWS_AS(construct_pair(17), DomainError);
  CHECK_THROWS_AS(construct_pair(-9), DomainError);  // 145 composite
}

TEST_CASE("pair at u = 3") {
  const auto pair = construct_pair(3);
  CHECK(pair.parameter.p == 73);
  CHECK(pair.e0 == ec::make_model(1, -1, 0, 4, -3));
  CHECK(pair.e1 == ec::make_model(1, -1, 0, -1, 0));
  CHECK(pair.invariants1.discriminant == 73);
  CHECK(pair.invariants0.discriminant == -5329);
  const auto k0 = two_torsion_point(pair, 0);
  CHECK(k0.x == mpq_class(3, 4));
  CHECK(k0.y == mpq_class(-3, 8));
  CHECK(two_torsion_point(pair, 1) == ec::RationalPoint{0, 0, false});
}

TEST_CASE("minimal model of E0 at u = -17") {
  CHECK(ec::minimal_model(construct_pair(-17).e0).model == ec::make_model(1, 1, 1, -2, 16));
}

TEST_CASE("the two curves are 2-isogenous") {
  for (long v : {3L, -17L, -33L, 127L}) {
    const auto pair = construct_pair(v);
    const auto img = ec::velu_two_isogeny(pair.e0, two_torsion_point(pair, 0));
    CAPTURE(v);
    CHECK(ec::minimal_model(img).model == ec::minimal_model(pair.e1).model);
  }
}

TEST_CASE("invariant identities for |u| <= 10^4") {
  int count = 0;
  for (long v = 1; v <= 10000; v += 2) {
    if (!is_ns_u(v)) continue;
    const mpz_class u = normalize_u(v);
    const auto pair = construct_pair(u);
    const mpz_class& p = pair.parameter.p;
    REQUIRE(pair.invariants1.c4 == p - 16);
    REQUIRE(pair.invariants1.c6 == u * (p + 8));
    REQUIRE(pair.invariants1.discriminant == p);
    REQUIRE(pair.invariants0.c4 == p - 256);
    REQUIRE(pair.invariants0.c6 == u * (p + 512));
    REQUIRE(pair.invariants0.discriminant == -p * p);
    for (int which : {0, 1}) {
      const auto k = two_torsion_point(pair, which);
      const auto& e = which ? pair.e1 : pair.e0;
      REQUIRE(ec::on_curve(e, k));
      REQUIRE(2 * k.y + e.a1 * k.x + e.a3 == 0);
    }
    ++count;
  }
  CHECK(count > 300);
}

TEST_CASE("both curves have conductor p and torsion Z/2 for |u| <= 500") {
  for (long v = 1; v <= 500; v += 2) {
    if (!is_ns_u(v)) continue;
    const auto pair = construct_pair(normalize_u(v));
    for (const auto& e : {pair.e0, pair.e1}) {
      CAPTURE(e.label());
      CHECK(ec::local_data(e, pair.parameter.p).conductor_exponent == 1);
      CHECK(ec::local_data(e, 2).conductor_exponent == 0);
      CHECK(ec::lutz_nagell_torsion(e).to_string() == "Z/2Z");
    }
  }
}

TEST_CASE("parity predictions") {
  CHECK(predict_parity(3).parity == Parity::Odd);
  CHECK(predict_parity(3).provenance == Provenance::Theorem);
  CHECK(predict_parity(-17).parity == Parity::Even);
  CHECK(predict_parity(35).parity == Parity::Odd);
  CHECK(predict_two_valuation(3).two_adic == TwoAdic::ExactlyZero);
  CHECK(predict_two_valuation(-17).two_adic == TwoAdic::AtLeastTwo);
  CHECK(predict_two_valuation(-33).two_adic == TwoAdic::AtLeastTwo);
  CHECK(predict_two_valuation(-17).provenance == Provenance::Conjecture);
  CHECK_THROWS_AS(predict_parity(17), DomainError);
  for (long v = 1; v < 2000; v += 2) {
    if (!is_ns_u(v)) continue;
    const auto pr = predict_two_valuation(normalize_u(v));
    CHECK((pr.parity == Parity::Odd) == (pr.two_adic == TwoAdic::ExactlyZero));
  }
}

TEST_CASE("Eisenstein numerator") {
  CHECK(eisenstein_n(73).n == 6);
  CHECK(eisenstein_n(113).n == 28);
  CHECK(eisenstein_n(11).n == 5);
}

TEST_CASE("2-adic shape of n for |u| <= 10^6") {
  for (long v = 1; v <= 1000000; v += 2) {
    if (!is_ns_u(v)) continue;
    const mpz_class u = normalize_u(v);
    const mpz_class n = eisenstein_n(u * u + 64).n;
    const int v2 = arith::valuation(n, 2);
    const auto r = arith::mod(u, 8);
    REQUIRE((v2 >= 2) == (r == 7));
    REQUIRE((v2 == 1) == (r == 3));
  }
}
