#include "nscurve/modsym/eigen.hpp"

#include <map>
#include <random>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"
#include "nscurve/modsym/cache.hpp"

namespace nscurve::modsym {

std::vector<RationalVector> rational_kernel(const std::vector<RationalVector>& rows, std::size_t cols) {
  const std::vector<RationalVector> r = echelon_basis(rows);
  std::vector<std::int64_t> pivot_of(cols, -1);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (r[i][j] != 0) {
        pivot_of[j] = static_cast<std::int64_t>(i);
        break;
      }
  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of[f] >= 0) continue;
    RationalVector v(cols, 0);
    v[f] = 1;
    for (std::size_t j = 0; j < cols; ++j)
      if (pivot_of[j] >= 0) v[j] = -r[static_cast<std::size_t>(pivot_of[j])][f];
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

IntegerVector clear_denominators(const RationalVector& v) {
  mpz_class den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
  return out;
}

// Pivot columns of a reduced echelon basis.
std::vector<std::size_t> pivots(const std::vector<RationalVector>& rref) {
  std::vector<std::size_t> out;
  for (const auto& row : rref)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) {
        out.push_back(j);
        break;
      }
  return out;
}

// Restricts (op - a) to span(basis) and returns the reduced echelon basis of its kernel.
std::vector<RationalVector> restrict_kernel(const std::vector<RationalVector>& basis, const CsrMatrix& op, std::int64_t a) {
  const std::vector<RationalVector> rref = echelon_basis(basis);
  const std::vector<std::size_t> piv = pivots(rref);
  const std::size_t k = rref.size();
  // m[i][j] = coordinate i of (op - a) rref_j
  std::vector<RationalVector> m(k, RationalVector(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    mpz_class den = 1;
    for (const auto& x : rref[j]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    const IntegerVector w = op.apply(clear_denominators(rref[j]));
    for (std::size_t i = 0; i < k; ++i) m[i][j] = mpq_class(w[piv[i]], den) - a * rref[j][piv[i]];
    for (auto& x : m) x[j].canonicalize();
    // the image must stay in the span
    for (std::size_t c = 0; c < w.size(); ++c) {
      mpq_class expect = 0;
      for (std::size_t i = 0; i < k; ++i) expect += (m[i][j] + (i == j ? a : 0)) * rref[i][c];
      if (expect != mpq_class(w[c], den)) throw CrossCheckError("eigen_lattice: kernel is not Hecke stable");
    }
  }
  std::vector<RationalVector> out;
  for (const auto& c : rational_kernel(m, k)) {
    RationalVector v(rref.front().size(), 0);
    for (std::size_t i = 0; i < k; ++i)
      if (c[i] != 0)
        for (std::size_t t = 0; t < v.size(); ++t)
          if (rref[i][t] != 0) v[t] += c[i] * rref[i][t];
    out.push_back(std::move(v));
  }
  return echelon_basis(out);
}

bool is_eigen(const std::vector<RationalVector>& basis, const CsrMatrix& op, std::int64_t a) {
  for (const auto& v : basis) {
    const IntegerVector w = clear_denominators(v);
    const IntegerVector tw = op.apply(w);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (tw[i] != a * w[i]) return false;
  }
  return true;
}

}  // namespace

EigenLattice eigen_lattice(const ManinSymbolSpace& space, const ApFunction& ap, std::uint64_t seed) {
  const std::uint32_t p = space.level();
  const std::uint32_t cap = (p + 5) / 6;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coeff(1, 97);

  std::map<std::uint32_t, CsrMatrix> ops;
  auto op = [&](std::uint32_t ell) -> const CsrMatrix& {
    auto it = ops.find(ell);
    if (it == ops.end()) it = ops.emplace(ell, cached_hecke_operator(space, ell)).first;
    return it->second;
  };

  EigenLattice out;
  CsrMatrix combo, combo_t;
  bool first = true;
  for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
    if (ell == p) continue;
    const CsrMatrix term = op(ell).shift(-ap(ell));
    const std::int64_t c = coeff(rng);
    combo = first ? term.combine(c, term, 0) : combo.combine(1, term, c);
    first = false;
    out.primes_used.push_back(ell);
  }
  combo_t = combo.transpose();
  std::vector<RationalVector> right = echelon_basis(exact_kernel(combo));
  std::vector<RationalVector> left = echelon_basis(exact_kernel(combo_t));

  std::uint32_t ell = 11;
  auto next_prime = [&] {
    do ++ell;
    while (!arith::is_prime(ell) || ell == p);
  };
  if (ell == p) next_prime();
  while (right.size() > 2 || left.size() > 2) {
    if (ell > cap) throw CrossCheckError("eigen_lattice: eigenspace has rank above 2 at the Sturm bound");
    const CsrMatrix& t = op(ell);
    if (right.size() > 2) right = restrict_kernel(right, t, ap(ell));
    if (left.size() > 2) left = restrict_kernel(left, t.transpose(), ap(ell));
    out.primes_used.push_back(ell);
    next_prime();
  }
  if (right.size() < 2 || left.size() < 2) throw CrossCheckError("eigen_lattice: eigenspace has rank below 2");
  // one extra prime as a check
  const CsrMatrix& t = op(ell);
  if (!is_eigen(right, t, ap(ell)) || !is_eigen(left, t.transpose(), ap(ell)))
    throw CrossCheckError("eigen_lattice: confirming Hecke operator disagrees");
  out.primes_used.push_back(ell);

  out.basis = saturate(right);
  const std::uint32_t cusp = space.cusp_generator();
  for (const auto& v : out.basis)
    if (v[cusp] != 0) throw CrossCheckError("eigen_lattice: eigen lattice is not cuspidal");
  std::vector<RationalVector> restricted;
  for (const auto& v : left) {
    RationalVector w;
    for (std::uint32_t i = 0; i < v.size(); ++i)
      if (i != cusp) w.push_back(v[i]);
    restricted.push_back(std::move(w));
  }
  out.dual = saturate(restricted);
  if (out.dual.size() != 2) throw CrossCheckError("eigen_lattice: dual functionals degenerate on cusp forms");
  return out;
}

}  // namespace nscurve::modsym
