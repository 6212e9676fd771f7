#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "nscurve/modsym/sparse.hpp"

namespace nscurve::modsym {

using RationalVector = std::vector<mpq_class>;
using IntegerVector = std::vector<mpz_class>;

// Dense LU with partial pivoting modulo a prime q < 2^26, stored as doubles so
// the row updates vectorize. Rank-deficient input is fine: columns without a
// pivot are recorded as free.
class ModularLU {
 public:
  ModularLU(const CsrMatrix& a, std::uint32_t q);

  std::uint32_t prime() const { return q_; }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(pivot_cols_.size()); }
  const std::vector<std::uint32_t>& pivot_cols() const { return pivot_cols_; }
  const std::vector<std::uint32_t>& pivot_rows() const { return pivot_rows_; }  // original row indices
  const std::vector<std::uint32_t>& free_cols() const { return free_cols_; }

  // Solves B x = b mod q where B = a[pivot_rows, pivot_cols]; b indexed like pivot_rows.
  std::vector<std::int64_t> solve(const std::vector<std::int64_t>& b) const;

 private:
  std::uint32_t q_, rows_, cols_;
  std::vector<double> lu_;  // rows_ x cols_, permuted rows
  std::vector<std::uint32_t> pivot_cols_, pivot_rows_, free_cols_;
};

// Primes just below 2^26, largest first.
const std::vector<std::uint32_t>& elimination_primes();

// Basis of the rational right kernel of a: one vector per free column, equal to 1
// there and 0 on the other free columns. Each vector is verified exactly.
std::vector<RationalVector> exact_kernel(const CsrMatrix& a);

// Reduced row echelon form of the span of vs (rational Gaussian elimination).
std::vector<RationalVector> echelon_basis(const std::vector<RationalVector>& vs);

// Z-basis of span_Q(vs) intersected with Z^n.
std::vector<IntegerVector> saturate(const std::vector<RationalVector>& vs);

// Determinant of a square integer matrix (Bareiss).
mpz_class determinant(std::vector<std::vector<mpz_class>> m);

}  // namespace nscurve::modsym
