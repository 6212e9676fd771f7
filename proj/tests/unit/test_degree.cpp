#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "nscurve/arith.hpp"
#include "nscurve/ec/point_count.hpp"
#include "nscurve/error.hpp"
#include "nscurve/family/ns_curve.hpp"
#include "nscurve/modsym/cache.hpp"
#include "nscurve/modsym/cuspidal.hpp"
#include "nscurve/modsym/degree.hpp"
#include "nscurve/modsym/eigen.hpp"
#include "nscurve/modsym/hecke.hpp"
#include "nscurve/modsym/pairing.hpp"

using namespace nscurve;
using namespace nscurve::modsym;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

// Operator restricted to the cuspidal coordinates.
Dense cuspidal_block(const ManinSymbolSpace& s, const CsrMatrix& t) {
  const std::uint32_t n = s.rank() - 1;
  Dense out(n, std::vector<std::int64_t>(n, 0));
  for (std::uint32_t r = 0; r < t.rows; ++r)
    for (auto k = t.row_ptr[r]; k < t.row_ptr[r + 1]; ++k) {
      if (r == s.cusp_generator() || t.col[k] == s.cusp_generator()) continue;
      out[s.cuspidal_index(r)][s.cuspidal_index(t.col[k])] = t.val[k];
    }
  return out;
}

}  // namespace

TEST_CASE("intersection pairing is unimodular, alternating and Hecke adjoint") {
  for (auto p64 : arith::primes_up_to(200)) {
    const auto p = static_cast<std::uint32_t>(p64);
    if (p < 11) continue;
    CAPTURE(p);
    const ManinSymbolSpace s(p);
    const IntersectionPairing ip(s);
    const Dense j = ip.gram();
    const std::size_t n = j.size();
    REQUIRE(n == 2 * s.genus());
    std::vector<std::vector<mpz_class>> jm(n, std::vector<mpz_class>(n));
    bool alternating = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        jm[a][b] = j[a][b];
        if (j[a][b] != -j[b][a]) alternating = false;
      }
    CHECK(alternating);
    CHECK(determinant(jm) == 1);
    for (std::uint32_t ell : {2u, 3u}) {
      const Dense t = cuspidal_block(s, hecke_operator(s, ell));
      bool adjoint = true;
      for (std::size_t a = 0; a < n && adjoint; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          std::int64_t lhs = 0, rhs = 0;
          for (std::size_t k = 0; k < n; ++k) {
            lhs += t[k][a] * j[k][b];
            rhs += j[a][k] * t[k][b];
          }
          if (lhs != rhs) adjoint = false;
        }
      CHECK(adjoint);
    }
  }
}

TEST_CASE("pairing on vectors matches the Gram matrix") {
  const ManinSymbolSpace s(97);
  const IntersectionPairing ip(s);
  const Dense j = ip.gram();
  const std::uint32_t n = s.rank();
  IntegerVector a(n, 0), b(n, 0);
  for (std::uint32_t k = 0; k < n; ++k)
    if (k != s.cusp_generator()) {
      a[k] = static_cast<long>(k % 5) - 2;
      b[k] = static_cast<long>((3 * k) % 7) - 3;
    }
  mpz_class expect = 0;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (x != s.cusp_generator() && y != s.cusp_generator())
        expect += a[x] * b[y] * j[s.cuspidal_index(x)][s.cuspidal_index(y)];
  CHECK(ip(a, b) == expect);
  a[s.cusp_generator()] = 1;
  CHECK_THROWS(ip(a, b));
}

TEST_CASE("star involution splits the cuspidal space evenly") {
  for (std::uint32_t p : {11u, 37u, 73u, 113u}) {
    CAPTURE(p);
    const ManinSymbolSpace s(p);
    const CsrMatrix star = star_involution(s);
    // the boundary line is fixed, so the +1 space has one extra dimension
    CHECK(exact_kernel(star.shift(-1)).size() == s.genus() + 1);
    CHECK(exact_kernel(star.shift(1)).size() == s.genus());
  }
}

TEST_CASE("eigen lattice rejects a wrong eigenvalue") {
  const auto pair = family::construct_pair(mpz_class(3));
  const ManinSymbolSpace s(73);
  const auto ap = [&](std::uint32_t ell) { return ec::ap_count(pair.e0, ell); };
  const EigenLattice el = eigen_lattice(s, ap);
  CHECK(el.basis.size() == 2);
  CHECK(el.dual.size() == 2);
  for (const auto& v : el.basis) CHECK(v[s.cusp_generator()] == 0);
  const auto wrong = [&](std::uint32_t ell) { return ap(ell) + (ell == 2 ? 1 : 0); };
  CHECK_THROWS_AS(eigen_lattice(s, wrong), CrossCheckError);
}

TEST_CASE("published modular degrees at u = -17 and u = -33") {
  const DegreeResult a = modular_degree(family::construct_pair(mpz_class(-17)));
  CHECK(a.m == 24);
  CHECK(a.level == 353);
  CHECK(factored(a.m) == "2^3 * 3");
  const DegreeResult b = modular_degree(family::construct_pair(mpz_class(-33)));
  CHECK(b.m == 96);
  CHECK(factored(b.m) == "2^5 * 3");
  CHECK(b.methods == std::vector<std::string>{"pairing", "dual", "numeric"});
}

TEST_CASE("degree parity follows u mod 8 for every family level below 2000") {
  int matches = 0;
  for (long u : {3, -5, 7, -13, -17, 23, 35, -37, 43}) {
    CAPTURE(u);
    const auto pair = family::construct_pair(mpz_class(u));
    const DegreeResult r = modular_degree(pair);
    const bool odd = mpz_odd_p(r.m.get_mpz_t()) != 0;
    const bool predicted_odd = family::predict_parity(mpz_class(u)).parity == family::Parity::Odd;
    CHECK(odd == predicted_odd);
    if (odd == predicted_odd) ++matches;
    CHECK(r.m % pair.parameter.p != 0);
    // exact and numeric methods agree
    REQUIRE(r.methods.size() == 3);
    CHECK(std::abs(r.numeric_value - r.m.get_d()) <= r.numeric_error);
    CHECK(r.numeric_error < 0.5);
  }
  CHECK(matches == 9);
}

TEST_CASE("modular degree guards") {
  const auto pair = family::construct_pair(mpz_class(-17));
  DegreeOptions opts;
  opts.level_limit = 300;
  CHECK_THROWS_AS(modular_degree(pair, opts), DomainError);
  CHECK_THROWS_AS(modular_degree(pair.e0, 351), DomainError);
  CHECK_THROWS_AS(modular_degree(pair.e0, 13), DomainError);
  DegreeOptions exact_only;
  exact_only.numeric = NumericCheck::Never;
  exact_only.dual_check = false;
  const DegreeResult r = modular_degree(pair, exact_only);
  CHECK(r.m == 24);
  CHECK(r.methods == std::vector<std::string>{"pairing"});
}

TEST_CASE("cuspidal class order is the numerator of (p - 1) / 12") {
  CHECK(cuspidal_class_order(11) == 5);
  CHECK(cuspidal_class_order(73) == 6);
  CHECK(cuspidal_class_order(113) == 28);
  for (auto p64 : arith::primes_up_to(500)) {
    if (p64 < 11) continue;
    const auto p = static_cast<std::uint32_t>(p64);
    CAPTURE(p);
    mpq_class expected(mpz_class(p - 1), mpz_class(12));
    expected.canonicalize();
    CHECK(cuspidal_class_order(p) == expected.get_num());
  }
}

TEST_CASE("Hecke cache round trip and corruption") {
  const auto dir = std::filesystem::temp_directory_path() / "nscurve_cache_test";
  std::filesystem::remove_all(dir);
  const ManinSymbolSpace s(101);
  const CsrMatrix t3 = hecke_operator(s, 3);
  CHECK_FALSE(load_hecke(dir, s, 3).has_value());
  store_hecke(dir, s, 3, t3);
  const auto hit = load_hecke(dir, s, 3);
  REQUIRE(hit.has_value());
  CHECK(*hit == t3);
  CHECK_FALSE(load_hecke(dir, s, 5).has_value());
  CHECK_FALSE(load_hecke(dir, ManinSymbolSpace(103), 3).has_value());

  const auto file = hecke_cache_file(dir, 101, 3);
  const auto size = std::filesystem::file_size(file);
  SUBCASE("flipped byte") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(static_cast<std::streamoff>(size / 2));
    char c = 0;
    f.read(&c, 1);
    f.seekp(static_cast<std::streamoff>(size / 2));
    c = static_cast<char>(c ^ 0x5a);
    f.write(&c, 1);
  }
  SUBCASE("truncated") { std::filesystem::resize_file(file, size - 9); }
  SUBCASE("bad magic") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXXXXXX", 8);
  }
  CHECK_FALSE(load_hecke(dir, s, 3).has_value());

  // the environment-driven path recomputes and repairs the file
  setenv("NSCURVE_CACHE_DIR", dir.c_str(), 1);
  CHECK(cached_hecke_operator(s, 3) == t3);
  CHECK(load_hecke(dir, s, 3).has_value());
  CHECK(cached_hecke_operator(s, 3) == t3);
  unsetenv("NSCURVE_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
