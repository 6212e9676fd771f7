#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nscurve/modsym/space.hpp"
#include "nscurve/modsym/sparse.hpp"

namespace nscurve::modsym {

using Matrix2 = std::array<std::int64_t, 4>;  // {a, b, c, d}

// Merel's set {[a b; c d] : ad - bc = n, a > b >= 0, d > c >= 0}.
std::vector<Matrix2> heilbronn_merel(std::uint32_t n);

// T_ell on the generator basis (column i = T_ell of generator i).
// Throws DomainError when ell is not prime or equals the level.
CsrMatrix hecke_operator(const ManinSymbolSpace& space, std::uint32_t ell);

// The involution induced by z -> -conj(z): (c:d) -> (-c:d).
CsrMatrix star_involution(const ManinSymbolSpace& space);

}  // namespace nscurve::modsym
