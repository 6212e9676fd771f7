#include <numeric>
#include <random>

#include "doctest.h"
#include "nscurve/modsym/linalg.hpp"

using namespace nscurve::modsym;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

CsrMatrix to_csr(const Dense& d) {
  CsrMatrix m;
  m.rows = static_cast<std::uint32_t>(d.size());
  m.cols = static_cast<std::uint32_t>(d.front().size());
  m.row_ptr.push_back(0);
  for (const auto& row : d) {
    for (std::uint32_t c = 0; c < m.cols; ++c)
      if (row[c] != 0) {
        m.col.push_back(c);
        m.val.push_back(row[c]);
      }
    m.row_ptr.push_back(m.col.size());
  }
  return m;
}

Dense random_product(std::mt19937_64& rng, std::size_t rows, std::size_t rank, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Dense b(rows, std::vector<std::int64_t>(rank)), c(rank, std::vector<std::int64_t>(cols)), out(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& r : b)
    for (auto& x : r) x = dist(rng);
  for (auto& r : c)
    for (auto& x : r) x = dist(rng);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank; ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += b[i][k] * c[k][j];
  return out;
}

// Leibniz expansion over permutations.
mpz_class leibniz(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("exact kernel of low-rank products") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 4 + rng() % 8, cols = 4 + rng() % 8;
    const std::size_t rank = 1 + rng() % std::min(rows, cols);
    const Dense d = random_product(rng, rows, rank, cols, trial < 15 ? 5 : 3000);
    const CsrMatrix a = to_csr(d);
    const auto kernel = exact_kernel(a);
    CHECK(kernel.size() == cols - rank);
    for (const auto& v : kernel)
      for (std::size_t i = 0; i < rows; ++i) {
        mpq_class acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += d[i][j] * v[j];
        CHECK(acc == 0);
      }
    CHECK(echelon_basis(kernel).size() == kernel.size());
  }
}

TEST_CASE("kernel with large denominators") {
  // x0 = 1 forces x1 = 1/q1 and x2 = 1/(q1 q2) for primes larger than the modulus.
  const std::int64_t q1 = 1000000007, q2 = 998244353;
  const auto kernel = exact_kernel(to_csr(Dense{{1, -q1, 0}, {0, 1, -q2}}));
  REQUIRE(kernel.size() == 1);
  const auto& v = kernel.front();
  CHECK(v[0] == v[1] * q1);
  CHECK(v[1] == v[2] * q2);
}

TEST_CASE("echelon basis") {
  const std::vector<RationalVector> vs{{2, 4, 6}, {1, 2, 3}, {0, 1, mpq_class(1, 2)}};
  const auto r = echelon_basis(vs);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RationalVector{1, 0, 2});
  CHECK(r[1] == RationalVector{0, 1, mpq_class(1, 2)});
}

TEST_CASE("saturation is primitive and spans the same space") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng() % 3, n = k + 1 + rng() % 4;
    std::vector<RationalVector> vs(k, RationalVector(n));
    for (auto& v : vs)
      for (auto& x : v) x = mpq_class(dist(rng), 1 + rng() % 6);
    if (echelon_basis(vs).size() < k) continue;
    const auto sat = saturate(vs);
    REQUIRE(sat.size() == k);
    std::vector<RationalVector> as_q;
    for (const auto& v : sat) {
      RationalVector q(v.begin(), v.end());
      as_q.push_back(q);
    }
    CHECK(echelon_basis(as_q) == echelon_basis(vs));
    // primitive: gcd of the k x k minors is 1
    mpz_class g = 0;
    std::vector<std::size_t> pick(k);
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::vector<std::vector<mpz_class>> minor(k, std::vector<mpz_class>(k));
      std::size_t c = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (mask[j]) {
          for (std::size_t r = 0; r < k; ++r) minor[r][c] = sat[r][j];
          ++c;
        }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), leibniz(minor).get_mpz_t());
    } while (std::prev_permutation(mask.begin(), mask.end()));
    CHECK(g == 1);
  }
}

TEST_CASE("Bareiss determinant matches the Leibniz expansion") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    for (auto& r : m)
      for (auto& x : r) x = trial % 5 == 0 ? 0 : dist(rng);
    if (n > 1 && trial % 7 == 0) m[n - 1] = m[0];
    CHECK(determinant(m) == leibniz(m));
  }
}
