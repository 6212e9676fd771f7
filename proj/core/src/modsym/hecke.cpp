#include "nscurve/modsym/hecke.hpp"

#include <algorithm>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::modsym {

std::vector<Matrix2> heilbronn_merel(std::uint32_t n) {
  std::vector<Matrix2> out;
  const std::int64_t N = n;
  // a + d <= n + 1 follows from bc <= (a-1)(d-1)
  for (std::int64_t a = 1; a <= N; ++a) {
    for (std::int64_t d = (N + a - 1) / a; d <= N + 1 - a; ++d) {
      const std::int64_t m = a * d - N;
      if (m == 0) {
        for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (std::int64_t b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      for (std::int64_t b = 1; b < a && b <= m; ++b) {
        if (m % b) continue;
        const std::int64_t c = m / b;
        if (c < d) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

CsrMatrix hecke_operator(const ManinSymbolSpace& space, std::uint32_t ell) {
  if (!arith::is_prime(static_cast<arith::u64>(ell))) throw DomainError("hecke_operator: " + std::to_string(ell) + " is not prime");
  if (ell == space.level()) throw DomainError("hecke_operator: T_p at the level is not implemented");
  const auto hs = heilbronn_merel(ell);
  const std::uint32_t r = space.rank();
  std::vector<SparseVector> columns(r);
  std::vector<std::int64_t> acc(r, 0);
  std::vector<char> mark(r, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t i = 0; i < r; ++i) {
    const auto [c, d] = space.p1().element(space.generator_symbol(i));
    for (const auto& h : hs) {
      const std::int64_t nc = static_cast<std::int64_t>(c) * h[0] + static_cast<std::int64_t>(d) * h[2];
      const std::int64_t nd = static_cast<std::int64_t>(c) * h[1] + static_cast<std::int64_t>(d) * h[3];
      for (const auto& [g, v] : space.coordinates(nc, nd)) {
        if (!mark[g]) {
          mark[g] = 1;
          touched.push_back(g);
        }
        acc[g] += v;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto g : touched) {
      if (acc[g] != 0) columns[i].emplace_back(g, acc[g]);
      acc[g] = 0;
      mark[g] = 0;
    }
    touched.clear();
  }
  return CsrMatrix::from_columns(r, columns);
}

CsrMatrix star_involution(const ManinSymbolSpace& space) {
  const std::uint32_t r = space.rank();
  std::vector<SparseVector> columns(r);
  for (std::uint32_t i = 0; i < r; ++i) {
    const auto [c, d] = space.p1().element(space.generator_symbol(i));
    columns[i] = space.coordinates(-static_cast<std::int64_t>(c), d);
  }
  return CsrMatrix::from_columns(r, columns);
}

}  // namespace nscurve::modsym
