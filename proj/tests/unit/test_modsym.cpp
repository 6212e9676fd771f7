#include <random>

#include "doctest.h"
#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"
#include "nscurve/modsym/hecke.hpp"
#include "nscurve/modsym/p1.hpp"
#include "nscurve/modsym/space.hpp"

using namespace nscurve;
using namespace nscurve::modsym;

namespace {

// Dense copy for small checks.
std::vector<std::vector<std::int64_t>> dense(const CsrMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows, std::vector<std::int64_t>(m.cols, 0));
  for (std::uint32_t r = 0; r < m.rows; ++r)
    for (auto k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) out[r][m.col[k]] = m.val[k];
  return out;
}

}  // namespace

TEST_CASE("P1 enumeration and lookup") {
  CHECK(P1(2).size() == 3);
  CHECK(P1(11).size() == 12);
  CHECK_THROWS_AS(P1(15), DomainError);
  const P1 p(101);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
  std::vector<int> hits(p.size(), 0);
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    const auto [c, d] = p.element(i);
    CHECK(p.index(c, d) == i);
    ++hits[p.index(c, d)];
    for (int t = 0; t < 5; ++t) {
      std::int64_t lambda = 0;
      while (lambda % 101 == 0) lambda = dist(rng);
      CHECK(p.index(lambda * c + 101 * dist(rng), lambda * d + 101 * dist(rng)) == i);
    }
  }
  CHECK(std::count(hits.begin(), hits.end(), 1) == static_cast<long>(p.size()));
}

TEST_CASE("ranks match the genus formula for 11 <= p <= 500") {
  CHECK(genus_x0(11) == 1);
  CHECK(genus_x0(73) == 5);
  for (auto p : arith::primes_up_to(500)) {
    if (p < 11) continue;
    const ManinSymbolSpace s(static_cast<std::uint32_t>(p));
    CHECK(s.rank() == 2 * s.genus() + 1);
    CHECK(s.generator_symbol(s.cusp_generator()) == 0);
  }
  CHECK_THROWS_AS(ManinSymbolSpace(7), DomainError);
  CHECK_THROWS_AS(ManinSymbolSpace(50021, 40000), DomainError);
}

TEST_CASE("Heilbronn sets") {
  CHECK(heilbronn_merel(2).size() == 4);
  for (std::uint32_t n : {2u, 3u, 5u, 7u, 11u}) {
    for (const auto& h : heilbronn_merel(n)) {
      CHECK(h[0] * h[3] - h[1] * h[2] == n);
      CHECK(h[0] > h[1]);
      CHECK(h[1] >= 0);
      CHECK(h[3] > h[2]);
      CHECK(h[2] >= 0);
    }
  }
}

TEST_CASE("Hecke operators at level 11") {
  const ManinSymbolSpace s(11);
  const auto t2 = dense(hecke_operator(s, 2));
  // eigenvalues 3 (Eisenstein) and -2, -2: trace 3 - 4 = -1
  std::int64_t trace = 0;
  for (std::uint32_t i = 0; i < s.rank(); ++i) trace += t2[i][i];
  CHECK(trace == -1);
  CHECK_THROWS_AS(hecke_operator(s, 11), DomainError);
  CHECK_THROWS_AS(hecke_operator(s, 4), DomainError);
}

TEST_CASE("Hecke operators commute and fix the boundary for p <= 200") {
  for (auto p : arith::primes_up_to(200)) {
    if (p < 11) continue;
    const ManinSymbolSpace s(static_cast<std::uint32_t>(p));
    std::vector<CsrMatrix> ts;
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) ts.push_back(hecke_operator(s, ell));
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) CHECK(ts[i].multiply(ts[j]) == ts[j].multiply(ts[i]));
    // boundary of T_ell x is (ell + 1) * boundary of x
    const std::uint32_t ells[] = {2, 3, 5, 7};
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto d = dense(ts[k]);
      for (std::uint32_t i = 0; i < s.rank(); ++i) {
        const std::int64_t expect = i == s.cusp_generator() ? ells[k] + 1 : 0;
        CHECK(d[s.cusp_generator()][i] == expect);
      }
    }
    const CsrMatrix iota = star_involution(s);
    CHECK(iota.multiply(iota) == CsrMatrix::identity(s.rank()));
    CHECK(iota.multiply(ts[0]) == ts[0].multiply(iota));
  }
}
