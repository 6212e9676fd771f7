#include "nscurve/modsym/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nscurve::modsym {

void axpy(SparseVector& out, std::int64_t c, const SparseVector& v) {
  if (c == 0 || v.empty()) return;
  SparseVector merged;
  merged.reserve(out.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < out.size() || j < v.size()) {
    if (j == v.size() || (i < out.size() && out[i].first < v[j].first)) {
      merged.push_back(out[i++]);
    } else if (i == out.size() || v[j].first < out[i].first) {
      merged.emplace_back(v[j].first, c * v[j].second);
      ++j;
    } else {
      const std::int64_t s = out[i].second + c * v[j].second;
      if (s != 0) merged.emplace_back(out[i].first, s);
      ++i;
      ++j;
    }
  }
  out.swap(merged);
}

CsrMatrix CsrMatrix::from_columns(std::uint32_t rows, const std::vector<SparseVector>& columns) {
  CsrMatrix m;
  m.rows = rows;
  m.cols = static_cast<std::uint32_t>(columns.size());
  std::vector<std::uint64_t> count(rows + 1, 0);
  for (const auto& c : columns)
    for (const auto& [r, v] : c) {
      if (r >= rows) throw std::out_of_range("CsrMatrix: row index");
      ++count[r + 1];
    }
  for (std::uint32_t r = 0; r < rows; ++r) count[r + 1] += count[r];
  m.row_ptr = count;
  m.col.resize(count[rows]);
  m.val.resize(count[rows]);
  std::vector<std::uint64_t> fill(count.begin(), count.end() - 1);
  for (std::uint32_t j = 0; j < m.cols; ++j)
    for (const auto& [r, v] : columns[j]) {
      m.col[fill[r]] = j;
      m.val[fill[r]] = v;
      ++fill[r];
    }
  return m;
}

CsrMatrix CsrMatrix::identity(std::uint32_t n) {
  std::vector<SparseVector> cols(n);
  for (std::uint32_t i = 0; i < n; ++i) cols[i] = {{i, 1}};
  return from_columns(n, cols);
}

std::vector<mpz_class> CsrMatrix::apply(const std::vector<mpz_class>& x) const {
  if (x.size() != cols) throw std::invalid_argument("CsrMatrix::apply: size mismatch");
  std::vector<mpz_class> y(rows);
  for (std::uint32_t r = 0; r < rows; ++r) {
    mpz_class acc = 0;
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      if (val[k] >= 0)
        mpz_addmul_ui(acc.get_mpz_t(), x[col[k]].get_mpz_t(), static_cast<unsigned long>(val[k]));
      else
        mpz_submul_ui(acc.get_mpz_t(), x[col[k]].get_mpz_t(), static_cast<unsigned long>(-val[k]));
    }
    y[r] = acc;
  }
  return y;
}

std::vector<std::int64_t> CsrMatrix::apply(const std::vector<std::int64_t>& x) const {
  if (x.size() != cols) throw std::invalid_argument("CsrMatrix::apply: size mismatch");
  std::vector<std::int64_t> y(rows, 0);
  for (std::uint32_t r = 0; r < rows; ++r) {
    __int128 acc = 0;
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += static_cast<__int128>(val[k]) * x[col[k]];
    if (acc > INT64_MAX || acc < INT64_MIN) throw std::overflow_error("CsrMatrix::apply: int64 overflow");
    y[r] = static_cast<std::int64_t>(acc);
  }
  return y;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<SparseVector> cols_of_t(rows);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) cols_of_t[r].emplace_back(col[k], val[k]);
  return from_columns(cols, cols_of_t);
}

CsrMatrix CsrMatrix::multiply(const CsrMatrix& other) const {
  if (cols != other.rows) throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
  // column j of the product = this * (column j of other)
  const CsrMatrix ot = other.transpose();
  const CsrMatrix me_t = transpose();
  std::vector<SparseVector> out(other.cols);
  for (std::uint32_t j = 0; j < other.cols; ++j) {
    SparseVector acc;
    for (auto k = ot.row_ptr[j]; k < ot.row_ptr[j + 1]; ++k) {
      const std::uint32_t mid = ot.col[k];
      SparseVector column;
      for (auto t = me_t.row_ptr[mid]; t < me_t.row_ptr[mid + 1]; ++t) column.emplace_back(me_t.col[t], me_t.val[t]);
      axpy(acc, ot.val[k], column);
    }
    out[j] = std::move(acc);
  }
  return from_columns(rows, out);
}

CsrMatrix CsrMatrix::combine(std::int64_t a, const CsrMatrix& other, std::int64_t b) const {
  if (rows != other.rows || cols != other.cols) throw std::invalid_argument("CsrMatrix::combine: size mismatch");
  const CsrMatrix x = transpose(), y = other.transpose();
  std::vector<SparseVector> out(cols);
  for (std::uint32_t j = 0; j < cols; ++j) {
    SparseVector cx, cy;
    for (auto k = x.row_ptr[j]; k < x.row_ptr[j + 1]; ++k) cx.emplace_back(x.col[k], x.val[k]);
    for (auto k = y.row_ptr[j]; k < y.row_ptr[j + 1]; ++k) cy.emplace_back(y.col[k], y.val[k]);
    SparseVector acc;
    axpy(acc, a, cx);
    axpy(acc, b, cy);
    out[j] = std::move(acc);
  }
  return from_columns(rows, out);
}

CsrMatrix CsrMatrix::shift(std::int64_t c) const {
  if (rows != cols) throw std::invalid_argument("CsrMatrix::shift: not square");
  return combine(1, identity(rows), c);
}

}  // namespace nscurve::modsym
