#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nscurve::modsym {

// Sorted (index, coefficient) pairs with no zero coefficients.
using SparseVector = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// out += c * v, keeping out sorted.
void axpy(SparseVector& out, std::int64_t c, const SparseVector& v);

// Row-compressed integer matrix.
struct CsrMatrix {
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::uint64_t> row_ptr;  // rows + 1 entries
  std::vector<std::uint32_t> col;
  std::vector<std::int64_t> val;

  static CsrMatrix from_columns(std::uint32_t rows, const std::vector<SparseVector>& columns);
  static CsrMatrix identity(std::uint32_t n);

  std::uint64_t nnz() const { return col.size(); }
  std::vector<mpz_class> apply(const std::vector<mpz_class>& x) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;
  CsrMatrix transpose() const;
  // this * other
  CsrMatrix multiply(const CsrMatrix& other) const;
  // a * this + b * other (b may be 0 to scale)
  CsrMatrix combine(std::int64_t a, const CsrMatrix& other, std::int64_t b) const;
  // this + c * I
  CsrMatrix shift(std::int64_t c) const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;
};

}  // namespace nscurve::modsym
