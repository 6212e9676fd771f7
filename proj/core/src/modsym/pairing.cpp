#include "nscurve/modsym/pairing.hpp"

#include <stdexcept>

#include "nscurve/arith.hpp"

namespace nscurve::modsym {

IntersectionPairing::IntersectionPairing(const ManinSymbolSpace& space)
    : p_(space.level()), cusp_(space.cusp_generator()) {
  const std::uint32_t n = space.rank();
  arrive_.resize(n);
  depart_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t k = space.generator_symbol(i);
    if (k >= p_) throw std::logic_error("IntersectionPairing: generator is not of the form (1:k)");
    arrive_[i] = k;
    depart_[i] = k == 0 ? p_ : static_cast<std::uint32_t>(arith::mod(-static_cast<arith::i64>(arith::invmod(k, p_)), p_));
  }
}

mpz_class IntersectionPairing::operator()(const IntegerVector& a, const IntegerVector& b) const {
  const std::size_t n = arrive_.size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("IntersectionPairing: length mismatch");
  if (a[cusp_] != 0 || b[cusp_] != 0) throw std::invalid_argument("IntersectionPairing: vectors must be cuspidal");
  std::vector<mpz_class> inflow(p_ + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    inflow[arrive_[i]] += a[i];
    inflow[depart_[i]] -= a[i];
  }
  // below[k] = sum_{j<k} inflow[j]
  std::vector<mpz_class> below(p_ + 2, 0);
  for (std::uint32_t k = 0; k <= p_; ++k) below[k + 1] = below[k] + inflow[k];
  mpz_class total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i] == 0) continue;
    total += b[i] * (below[arrive_[i]] - below[depart_[i] + 1]);
  }
  return total;
}

std::vector<std::vector<std::int64_t>> IntersectionPairing::gram() const {
  const std::size_t n = arrive_.size();
  std::vector<std::uint32_t> cusp_basis;
  for (std::uint32_t i = 0; i < n; ++i)
    if (i != cusp_) cusp_basis.push_back(i);
  auto below = [](std::uint32_t pos, std::uint32_t i_arr, std::uint32_t i_dep) -> std::int64_t {
    return (i_arr < pos ? 1 : 0) - (i_dep < pos ? 1 : 0);
  };
  std::vector<std::vector<std::int64_t>> g(cusp_basis.size(), std::vector<std::int64_t>(cusp_basis.size()));
  for (std::size_t r = 0; r < cusp_basis.size(); ++r)
    for (std::size_t c = 0; c < cusp_basis.size(); ++c) {
      const std::uint32_t i = cusp_basis[r], j = cusp_basis[c];
      g[r][c] = below(arrive_[j], arrive_[i], depart_[i]) - below(depart_[j] + 1, arrive_[i], depart_[i]);
    }
  return g;
}

}  // namespace nscurve::modsym
