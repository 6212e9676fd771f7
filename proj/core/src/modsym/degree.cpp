#include "nscurve/modsym/degree.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "nscurve/arith.hpp"
#include "nscurve/ec/period.hpp"
#include "nscurve/ec/point_count.hpp"
#include "nscurve/error.hpp"
#include "nscurve/modsym/eigen.hpp"
#include "nscurve/modsym/hecke.hpp"
#include "nscurve/modsym/pairing.hpp"

namespace nscurve::modsym {

namespace {

// psi (cuspidal coordinates) evaluated on a vector in generator coordinates.
mpz_class evaluate(const ManinSymbolSpace& space, const IntegerVector& psi, const IntegerVector& x) {
  mpz_class acc = 0;
  for (std::uint32_t k = 0; k < x.size(); ++k)
    if (k != space.cusp_generator() && x[k] != 0) acc += psi[space.cuspidal_index(k)] * x[k];
  return acc;
}

mpz_class evaluate(const ManinSymbolSpace& space, const IntegerVector& psi, const SparseVector& x) {
  mpz_class acc = 0;
  for (const auto& [k, c] : x)
    if (k != space.cusp_generator()) acc += psi[space.cuspidal_index(k)] * c;
  return acc;
}

IntegerVector combine(const mpz_class& a, const IntegerVector& x, const mpz_class& b, const IntegerVector& y) {
  IntegerVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// Functionals fixed (sign = +1) or negated (sign = -1) by the star involution,
// as a primitive combination of the dual basis.
IntegerVector signed_functional(const ManinSymbolSpace& space, const EigenLattice& el, const CsrMatrix& star_t, int sign) {
  const std::uint32_t n = space.rank();
  std::vector<IntegerVector> images;
  for (const auto& psi : el.dual) {
    IntegerVector ext(n, 0);
    for (std::uint32_t k = 0; k < n; ++k)
      if (k != space.cusp_generator()) ext[k] = psi[space.cuspidal_index(k)];
    const IntegerVector img = star_t.apply(ext);
    IntegerVector cusp_coords;
    for (std::uint32_t k = 0; k < n; ++k)
      if (k != space.cusp_generator()) cusp_coords.push_back(img[k]);
    images.push_back(std::move(cusp_coords));
  }
  // psi_k * star = sum_l r[k][l] psi_l, read off on two independent coordinates
  const auto& d0 = el.dual[0];
  const auto& d1 = el.dual[1];
  std::size_t i0 = 0, i1 = 0;
  bool found = false;
  for (std::size_t i = 0; i < d0.size() && !found; ++i)
    for (std::size_t j = i + 1; j < d0.size() && !found; ++j)
      if (d0[i] * d1[j] - d0[j] * d1[i] != 0) {
        i0 = i;
        i1 = j;
        found = true;
      }
  if (!found) throw CrossCheckError("modular_degree: dual functionals are dependent");
  const mpq_class det = mpq_class(d0[i0] * d1[i1] - d0[i1] * d1[i0]);
  std::vector<RationalVector> rows(2, RationalVector(2));  // rows of (R - sign I)^T
  for (int k = 0; k < 2; ++k) {
    const mpq_class a = (images[k][i0] * d1[i1] - images[k][i1] * d1[i0]) / det;
    const mpq_class b = (d0[i0] * images[k][i1] - d0[i1] * images[k][i0]) / det;
    const IntegerVector check = combine(a.get_num(), d0, b.get_num(), d1);
    if (a.get_den() != 1 || b.get_den() != 1 || check != images[k])
      throw CrossCheckError("modular_degree: dual lattice is not stable under the star involution");
    rows[0][k] = a - (k == 0 ? sign : 0);
    rows[1][k] = b - (k == 1 ? sign : 0);
  }
  const auto ker = rational_kernel(rows, 2);
  if (ker.size() != 1) throw CrossCheckError("modular_degree: star eigenspace on the dual has wrong rank");
  mpz_class den = 1, g = 0;
  for (const auto& x : ker[0]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  mpz_class c0 = ker[0][0].get_num() * (den / ker[0][0].get_den());
  mpz_class c1 = ker[0][1].get_num() * (den / ker[0][1].get_den());
  mpz_gcd(g.get_mpz_t(), c0.get_mpz_t(), c1.get_mpz_t());
  return combine(c0 / g, d0, c1 / g, d1);
}

// psi_plus^T J^{-1} psi_minus with J the Gram matrix of the pairing.
mpz_class inverse_form(const IntersectionPairing& ip, const IntegerVector& plus, const IntegerVector& minus) {
  const auto gram = ip.gram();
  const std::uint32_t n = static_cast<std::uint32_t>(gram.size());
  std::vector<SparseVector> columns(n + 1);
  for (std::uint32_t c = 0; c < n; ++c)
    for (std::uint32_t r = 0; r < n; ++r)
      if (gram[r][c] != 0) columns[c].emplace_back(r, gram[r][c]);
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!minus[r].fits_slong_p()) throw CrossCheckError("modular_degree: functional too large for the numeric check");
    if (minus[r] != 0) columns[n].emplace_back(r, -minus[r].get_si());
  }
  const auto ker = exact_kernel(CsrMatrix::from_columns(n, columns));
  if (ker.size() != 1 || ker[0][n] != 1) throw CrossCheckError("modular_degree: intersection form is degenerate");
  mpq_class acc = 0;
  for (std::uint32_t i = 0; i < n; ++i) acc += mpq_class(plus[i]) * ker[0][i];
  if (acc.get_den() != 1) throw CrossCheckError("modular_degree: intersection form is not unimodular");
  return acc.get_num();
}

struct NumericOutcome {
  double value, error;
};

// Periods of f from its q-expansion, then Omega+ Omega- |psi+^T J^{-1} psi-| / covol(E).
NumericOutcome numeric_degree(const ec::WeierstrassModel& optimal, const ManinSymbolSpace& space,
                              const EigenLattice& el, const IntersectionPairing& ip) {
  const std::uint32_t p = space.level();
  const CsrMatrix star_t = star_involution(space).transpose();
  const IntegerVector plus = signed_functional(space, el, star_t, 1);
  const IntegerVector minus = signed_functional(space, el, star_t, -1);
  const mpz_class form = inverse_form(ip, plus, minus);

  const double r = std::exp(-2 * M_PI / p);
  const auto terms = static_cast<std::uint32_t>(std::ceil(p * 50.0 / (2 * M_PI))) + 16;
  const std::vector<std::int64_t> an = ec::an_sequence(optimal, terms);
  std::vector<std::complex<double>> roots(p);
  for (std::uint32_t k = 0; k < p; ++k) roots[k] = std::polar(1.0, 2 * M_PI * k / p);
  std::vector<double> weight(terms + 1, 0);
  double rn = 1, total_abs = 0;
  for (std::uint32_t n = 1; n <= terms; ++n) {
    rn *= r;
    weight[n] = static_cast<double>(an[n]) / n * rn;
    total_abs += std::abs(weight[n]);
  }
  // F((k + i) / p) = sum a_n / n r^n zeta^{kn}
  auto series = [&](std::uint64_t k) {
    std::complex<double> acc = 0;
    for (std::uint32_t n = 1; n <= terms; ++n) acc += weight[n] * roots[(k * n) % p];
    return acc;
  };
  const double tail = 2 * std::pow(r, terms + 1) / (1 - r);
  const double eps = std::numeric_limits<double>::epsilon();
  const double period_error = 2 * (tail + 4 * terms * eps * total_abs);

  struct Estimate {
    double value = 0, error = std::numeric_limits<double>::infinity(), lo = 1e300, hi = -1e300;
    int count = 0;
    void add(double v, double e) {
      if (e < error) {
        value = v;
        error = e;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      ++count;
    }
  } om_plus, om_minus;
  double consistency = 0;
  for (std::uint32_t a = 1; a < p && a < 200 && (om_plus.count < 4 || om_minus.count < 4); ++a) {
    const std::int64_t d = arith::invmod(a, p);
    const std::int64_t b = (static_cast<std::int64_t>(a) * d - 1) / p;
    const SparseVector x = space.path_from_zero(b, d);
    const mpz_class sp = evaluate(space, plus, x), sm = evaluate(space, minus, x);
    const std::complex<double> pi_x = series(a) - series(p - d);
    if (sp != 0) om_plus.add(pi_x.real() / sp.get_d(), period_error / std::abs(sp.get_d()));
    else consistency = std::max(consistency, std::abs(pi_x.real()) - period_error);
    if (sm != 0) om_minus.add(pi_x.imag() / sm.get_d(), period_error / std::abs(sm.get_d()));
    else consistency = std::max(consistency, std::abs(pi_x.imag()) - period_error);
  }
  if (om_plus.count == 0 || om_minus.count == 0)
    throw CrossCheckError("modular_degree: no path detected the real or imaginary period");
  const double err_plus = std::max(om_plus.error, om_plus.hi - om_plus.lo);
  const double err_minus = std::max(om_minus.error, om_minus.hi - om_minus.lo);
  const ec::PeriodLattice lat = ec::period_lattice(optimal);
  const double scale = std::abs(form.get_d()) / lat.covolume.to_double();
  const double value = std::abs(om_plus.value * om_minus.value) * scale;
  const double error = value * (err_plus / std::abs(om_plus.value) + err_minus / std::abs(om_minus.value) + 1e-12) +
                       consistency * 1e6;
  return {value, error};
}

}  // namespace

DegreeResult modular_degree(const ec::WeierstrassModel& optimal, std::uint32_t p, const DegreeOptions& options) {
  if (!arith::is_prime(p)) throw DomainError("modular_degree: level must be prime");
  const ManinSymbolSpace space(p, options.level_limit);
  if (space.genus() == 0) throw DomainError("modular_degree: X_0(p) has genus 0");
  const EigenLattice el = eigen_lattice(
      space, [&](std::uint32_t ell) { return ec::ap_count(optimal, ell); }, options.seed);
  const IntersectionPairing ip(space);

  DegreeResult out;
  out.level = p;
  out.genus = space.genus();
  out.hecke_primes = el.primes_used;
  out.m = abs(ip(el.basis[0], el.basis[1]));
  out.methods.push_back("pairing");
  if (out.m == 0) throw CrossCheckError("modular_degree: pairing vanishes on the eigen lattice");

  if (options.dual_check) {
    std::vector<std::vector<mpz_class>> pairing(2, std::vector<mpz_class>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) pairing[i][j] = evaluate(space, el.dual[i], el.basis[j]);
    if (abs(determinant(pairing)) != out.m * out.m)
      throw CrossCheckError("modular_degree: dual functionals disagree with the pairing");
    out.methods.push_back("dual");
  }

  const bool numeric = options.numeric == NumericCheck::Always ||
                       (options.numeric == NumericCheck::Auto && p < kNumericAutoLimit);
  if (numeric) {
    const NumericOutcome n = numeric_degree(optimal, space, el, ip);
    out.numeric_value = n.value;
    out.numeric_error = n.error;
    if (!(n.error < 0.5) || std::abs(n.value - out.m.get_d()) > n.error)
      throw CrossCheckError("modular_degree: numeric period method gives " + std::to_string(n.value) + " +- " +
                            std::to_string(n.error) + ", exact method " + out.m.get_str());
    out.methods.push_back("numeric");
  }
  return out;
}

DegreeResult modular_degree(const family::NSPair& pair, const DegreeOptions& options) {
  if (!pair.parameter.p.fits_ulong_p() || pair.parameter.p > std::numeric_limits<std::uint32_t>::max())
    throw DomainError("modular_degree: level out of range");
  return modular_degree(pair.e0, static_cast<std::uint32_t>(pair.parameter.p.get_ui()), options);
}

std::string factored(const mpz_class& m) {
  if (m == 1) return "1";
  const arith::Factorization f = arith::factor(m);
  std::string out;
  for (const auto& [q, e] : f.factors) {
    if (!out.empty()) out += " * ";
    out += q.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace nscurve::modsym
