#include "nscurve/modsym/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::modsym {

const std::vector<std::uint32_t>& elimination_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = (1u << 26) - 1; out.size() < 8; q -= 2)
      if (arith::is_prime(static_cast<arith::u64>(q))) out.push_back(q);
    return out;
  }();
  return primes;
}

namespace {

constexpr double kRound = 6755399441055744.0;

}  // namespace

ModularLU::ModularLU(const CsrMatrix& a, std::uint32_t q) : q_(q), rows_(a.rows), cols_(a.cols) {
  if (q >= (1u << 26)) throw std::invalid_argument("ModularLU: modulus must be below 2^26");
  const double dq = q, qinv = 1.0 / dq;
  // entries are kept in (-q, q) during elimination
  auto canonical = [q](double v) { return arith::mod(static_cast<arith::i64>(v), static_cast<arith::i64>(q)); };
  lu_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
      lu_[static_cast<std::size_t>(r) * cols_ + a.col[k]] = static_cast<double>(arith::mod(a.val[k], q));
  std::vector<std::uint32_t> row_id(rows_);
  for (std::uint32_t r = 0; r < rows_; ++r) row_id[r] = r;

  auto at = [&](std::uint32_t r, std::uint32_t c) -> double& { return lu_[static_cast<std::size_t>(r) * cols_ + c]; };
  std::uint32_t rank = 0;
  for (std::uint32_t c = 0; c < cols_; ++c) {
    std::uint32_t piv = rows_;
    for (std::uint32_t i = rank; i < rows_; ++i) {
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows_) {
      free_cols_.push_back(c);
      continue;
    }
    if (piv != rank) {
      std::swap_ranges(&at(piv, 0), &at(piv, 0) + cols_, &at(rank, 0));
      std::swap(row_id[piv], row_id[rank]);
    }
    const auto pinv = static_cast<std::uint64_t>(arith::invmod(canonical(at(rank, c)), q));
    const double* pr = &at(rank, 0);
    for (std::uint32_t i = rank + 1; i < rows_; ++i) {
      double* ri = &at(i, 0);
      if (ri[c] == 0) continue;
      const double l = static_cast<double>(static_cast<std::uint64_t>(canonical(ri[c])) * pinv % q);
      ri[c] = l;
      // |x| < 2^52 stays exact; adding and removing 1.5 * 2^52 rounds x / q to an integer
      for (std::uint32_t j = c + 1; j < cols_; ++j) {
        const double x = ri[j] - l * pr[j];
        ri[j] = x - dq * ((x * qinv + kRound) - kRound);
      }
    }
    pivot_cols_.push_back(c);
    ++rank;
  }
  pivot_rows_.assign(row_id.begin(), row_id.begin() + rank);
  // canonical residues on the stored factors
  for (auto& v : lu_) v = static_cast<double>(canonical(v));
}

std::vector<std::int64_t> ModularLU::solve(const std::vector<std::int64_t>& b) const {
  const std::uint32_t n = rank();
  if (b.size() != n) throw std::invalid_argument("ModularLU::solve: size mismatch");
  const std::uint64_t q = q_;
  auto at = [&](std::uint32_t r, std::uint32_t c) {
    return static_cast<std::uint64_t>(lu_[static_cast<std::size_t>(r) * cols_ + c]);
  };
  std::vector<std::uint64_t> y(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    unsigned __int128 sub = 0;
    for (std::uint32_t k = 0; k < i; ++k) sub += static_cast<unsigned __int128>(at(i, pivot_cols_[k])) * y[k];
    const auto bi = static_cast<std::uint64_t>(arith::mod(b[i], static_cast<arith::i64>(q)));
    y[i] = (bi + q - static_cast<std::uint64_t>(sub % q)) % q;
  }
  std::vector<std::uint64_t> x(n);
  for (std::uint32_t k = n; k-- > 0;) {
    unsigned __int128 sub = 0;
    for (std::uint32_t j = k + 1; j < n; ++j) sub += static_cast<unsigned __int128>(at(k, pivot_cols_[j])) * x[j];
    const std::uint64_t rhs = (y[k] + q - static_cast<std::uint64_t>(sub % q)) % q;
    const auto inv = static_cast<std::uint64_t>(arith::invmod(static_cast<arith::i64>(at(k, pivot_cols_[k])), q));
    x[k] = rhs * inv % q;
  }
  return std::vector<std::int64_t>(x.begin(), x.end());
}

namespace {

// a restricted to the given rows and columns (columns renumbered 0..).
CsrMatrix submatrix(const CsrMatrix& a, const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) {
  std::vector<std::int64_t> remap(a.cols, -1);
  for (std::uint32_t j = 0; j < cols.size(); ++j) remap[cols[j]] = j;
  CsrMatrix m;
  m.rows = static_cast<std::uint32_t>(rows.size());
  m.cols = static_cast<std::uint32_t>(cols.size());
  m.row_ptr.push_back(0);
  for (auto r : rows) {
    std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
      if (remap[a.col[k]] >= 0) entries.emplace_back(static_cast<std::uint32_t>(remap[a.col[k]]), a.val[k]);
    std::sort(entries.begin(), entries.end());
    for (auto& [c, v] : entries) {
      m.col.push_back(c);
      m.val.push_back(v);
    }
    m.row_ptr.push_back(m.col.size());
  }
  return m;
}

std::int64_t entry(const CsrMatrix& a, std::uint32_t r, std::uint32_t c) {
  for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
    if (a.col[k] == c) return a.val[k];
  return 0;
}

bool in_kernel(const CsrMatrix& a, const RationalVector& v) {
  mpz_class den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].get_num() * (den / v[i].get_den());
  for (const auto& y : a.apply(w))
    if (y != 0) return false;
  return true;
}

// Dixon lifting for B x = b; returns false when reconstruction never verifies.
bool dixon(const ModularLU& lu, const CsrMatrix& b_mat, const CsrMatrix& a, const std::vector<std::uint32_t>& free_cols,
           std::uint32_t free_index, RationalVector& out) {
  const std::uint32_t n = lu.rank();
  const std::int64_t q = lu.prime();
  std::vector<std::int64_t> r(n);
  for (std::uint32_t k = 0; k < n; ++k) r[k] = -entry(a, lu.pivot_rows()[k], free_cols[free_index]);
  IntegerVector acc(n, 0);
  mpz_class qpow = 1;
  const int max_iter = 600;
  for (int iter = 1; iter <= max_iter; ++iter) {
    std::vector<std::int64_t> x = lu.solve(r);
    for (auto& v : x)
      if (v > q / 2) v -= q;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (x[k] >= 0)
        mpz_addmul_ui(acc[k].get_mpz_t(), qpow.get_mpz_t(), static_cast<unsigned long>(x[k]));
      else
        mpz_submul_ui(acc[k].get_mpz_t(), qpow.get_mpz_t(), static_cast<unsigned long>(-x[k]));
    }
    const std::vector<std::int64_t> bx = b_mat.apply(x);
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::int64_t diff = r[k] - bx[k];
      if (diff % q != 0) throw std::logic_error("dixon: residual not divisible by the modulus");
      r[k] = diff / q;
    }
    qpow *= q;
    if (iter < 2) continue;
    RationalVector cand(a.cols, 0);
    cand[free_cols[free_index]] = 1;
    bool ok = true;
    mpz_class den = 1;
    for (std::uint32_t k = 0; k < n && ok; ++k) {
      // try the running common denominator first
      mpz_class t = acc[k] * den;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), qpow.get_mpz_t());
      if (2 * t > qpow) t -= qpow;
      mpz_class bound;
      mpz_sqrt(bound.get_mpz_t(), mpz_class(qpow / 2).get_mpz_t());
      if (abs(t) * den <= bound) {
        cand[lu.pivot_cols()[k]] = mpq_class(t, den);
        cand[lu.pivot_cols()[k]].canonicalize();
        continue;
      }
      mpz_class residue = acc[k];
      mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), qpow.get_mpz_t());
      mpq_class value;
      if (!arith::rational_reconstruct(residue, qpow, value)) {
        ok = false;
        break;
      }
      cand[lu.pivot_cols()[k]] = value;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), value.get_den_mpz_t());
    }
    if (ok && in_kernel(a, cand)) {
      out = std::move(cand);
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<RationalVector> exact_kernel(const CsrMatrix& a) {
  for (std::uint32_t q : elimination_primes()) {
    const ModularLU lu(a, q);
    const CsrMatrix b_mat = submatrix(a, lu.pivot_rows(), lu.pivot_cols());
    std::vector<RationalVector> basis;
    bool ok = true;
    for (std::uint32_t f = 0; f < lu.free_cols().size() && ok; ++f) {
      RationalVector v;
      ok = dixon(lu, b_mat, a, lu.free_cols(), f, v);
      if (ok) basis.push_back(std::move(v));
    }
    if (ok) return basis;
  }
  throw CrossCheckError("exact_kernel: no elimination prime produced a verified kernel");
}

std::vector<RationalVector> echelon_basis(const std::vector<RationalVector>& vs) {
  std::vector<RationalVector> rows = vs;
  if (rows.empty()) return rows;
  for (auto& row : rows)
    for (auto& x : row) x.canonicalize();
  const std::size_t n = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const mpq_class inv = 1 / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c];
      for (std::size_t j = c; j < n; ++j)
        if (rows[rank][j] != 0) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;  // row-major

// Column operation on columns i, j of m: (ci, cj) <- (a ci + b cj, c ci + d cj).
void column_op(IntMatrix& m, std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b, const mpz_class& c,
               const mpz_class& d) {
  for (auto& row : m) {
    const mpz_class x = row[i], y = row[j];
    row[i] = a * x + b * y;
    row[j] = c * x + d * y;
  }
}

// Lower-triangular column Hermite form of a nonsingular square matrix.
void column_hnf(IntMatrix& g) {
  const std::size_t k = g.size();
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = r + 1; j < k; ++j) {
      if (g[r][j] == 0) continue;
      mpz_class s, t, d;
      mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g[r][r].get_mpz_t(), g[r][j].get_mpz_t());
      const mpz_class x = g[r][r] / d, y = g[r][j] / d;
      column_op(g, r, j, s, t, -y, x);
    }
    if (g[r][r] < 0)
      for (auto& row : g) row[r] = -row[r];
    for (std::size_t j = 0; j < r; ++j) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), g[r][j].get_mpz_t(), g[r][r].get_mpz_t());
      if (f != 0)
        for (auto& row : g) row[j] -= f * row[r];
    }
  }
}

}  // namespace

std::vector<IntegerVector> saturate(const std::vector<RationalVector>& vs) {
  const std::vector<RationalVector> rref = echelon_basis(vs);
  const std::size_t k = rref.size();
  if (k == 0) return {};
  const std::size_t n = rref.front().size();
  // Columns of g span the admissible coefficient vectors.
  IntMatrix g(k, std::vector<mpz_class>(k, 0));
  for (std::size_t j = 0; j < k; ++j) g[j][j] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < k; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rref[j][i].get_den_mpz_t());
    if (den == 1) continue;
    // Row [s_1..s_k, den] reduced by unimodular column ops recorded in u.
    std::vector<mpz_class> s(k + 1);
    for (std::size_t l = 0; l < k; ++l) {
      mpz_class acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += rref[j][i].get_num() * (den / rref[j][i].get_den()) * g[j][l];
      mpz_fdiv_r(s[l].get_mpz_t(), acc.get_mpz_t(), den.get_mpz_t());
    }
    s[k] = den;
    IntMatrix u(k + 1, std::vector<mpz_class>(k + 1, 0));
    for (std::size_t j = 0; j <= k; ++j) u[j][j] = 1;
    IntMatrix row{s};
    for (std::size_t j = 1; j <= k; ++j) {
      if (row[0][j] == 0) continue;
      mpz_class a, b, d;
      mpz_gcdext(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), row[0][0].get_mpz_t(), row[0][j].get_mpz_t());
      const mpz_class x = row[0][0] / d, y = row[0][j] / d;
      column_op(row, 0, j, a, b, -y, x);
      column_op(u, 0, j, a, b, -y, x);
    }
    // Columns 1..k of u span the kernel; keep their first k coordinates.
    IntMatrix next(k, std::vector<mpz_class>(k, 0));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t l = 0; l < k; ++l) {
        mpz_class acc = 0;
        for (std::size_t m = 0; m < k; ++m) acc += g[r][m] * u[m][l + 1];
        next[r][l] = acc;
      }
    g = std::move(next);
    column_hnf(g);
  }
  std::vector<IntegerVector> out(k, IntegerVector(n, 0));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class acc = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (g[j][l] != 0 && rref[j][i] != 0) acc += mpq_class(g[j][l]) * rref[j][i];
      if (acc.get_den() != 1) throw std::logic_error("saturate: non-integral basis vector");
      out[l][i] = acc.get_num();
    }
  return out;
}

mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace nscurve::modsym
