#pragma once

#include <cstdint>
#include <vector>

#include "nscurve/modsym/p1.hpp"
#include "nscurve/modsym/sparse.hpp"

namespace nscurve::modsym {

inline constexpr std::uint32_t kDefaultLevelLimit = 40000;

// Integral weight-2 modular symbols for Gamma_0(p): H_1(X_0(p), cusps; Z).
//
// Manin symbols are edges of the ideal triangulation of X_0(p); the 2-term
// relations identify reversed edges and the 3-term relations are the
// triangles. A spanning tree of the dual graph (triangles joined across live
// edges) leaves 2g + 1 edges outside the tree; those edges form a Z-basis
// ("generators") and every other symbol is a signed sum of them.
class ManinSymbolSpace {
 public:
  // Throws DomainError unless p is prime, 11 <= p <= level_limit.
  explicit ManinSymbolSpace(std::uint32_t p, std::uint32_t level_limit = kDefaultLevelLimit);

  std::uint32_t level() const { return p1_.prime(); }
  const P1& p1() const { return p1_; }
  std::uint32_t genus() const { return genus_; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(generators_.size()); }  // 2g + 1

  // Symbol index of generator i (always the smaller index of its edge).
  std::uint32_t generator_symbol(std::uint32_t i) const { return generators_[i]; }
  // Generator of the edge {0, oo}, i.e. the symbol (1:0); the only one with nonzero boundary.
  std::uint32_t cusp_generator() const { return cusp_gen_; }
  // Position of generator i in the cuspidal basis (all generators except the cusp one).
  std::uint32_t cuspidal_index(std::uint32_t i) const { return i < cusp_gen_ ? i : i - 1; }
  std::uint32_t generator_of_cuspidal(std::uint32_t j) const { return j < cusp_gen_ ? j : j + 1; }

  // Coordinates of a Manin symbol in the generator basis.
  const SparseVector& coordinates(std::uint32_t symbol) const;
  SparseVector coordinates(std::int64_t c, std::int64_t d) const { return coordinates(p1_.index(c, d)); }

  std::uint32_t sigma(std::uint32_t symbol) const { return sigma_[symbol]; }
  std::uint32_t tau(std::uint32_t symbol) const { return tau_[symbol]; }

  // Boundary in Z[{0}] + Z[{oo}] is c * ([0] - [oo]) with c the cusp-generator coefficient.
  static std::int64_t boundary_coefficient(const SparseVector& v, std::uint32_t cusp_gen);

  // Coordinates of the path {0, b/d} via continued fractions.
  SparseVector path_from_zero(std::int64_t b, std::int64_t d) const;

 private:
  P1 p1_;
  std::uint32_t genus_ = 0;
  std::vector<std::uint32_t> sigma_, tau_;
  std::vector<std::uint32_t> generators_;
  std::uint32_t cusp_gen_ = 0;
  std::vector<SparseVector> coords_;
};

// Genus of X_0(p) for prime p.
std::uint32_t genus_x0(std::uint32_t p);

}  // namespace nscurve::modsym
