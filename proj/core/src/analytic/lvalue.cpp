#include "nscurve/analytic/lvalue.hpp"

#include <cmath>

#include "nscurve/arith.hpp"
#include "nscurve/ec/local_data.hpp"
#include "nscurve/ec/period.hpp"
#include "nscurve/ec/point_count.hpp"
#include "nscurve/error.hpp"

namespace nscurve::analytic {

mpz_class conductor(const ec::WeierstrassModel& e) {
  const ec::MinimalModel mm = ec::minimal_model(e);
  const ec::CurveInvariants inv = ec::compute_invariants(mm.model);
  if (inv.discriminant == 0) throw DomainError("conductor: singular curve");
  mpz_class n = 1;
  for (const auto& [q, k] : arith::factor(inv.discriminant).factors) {
    const ec::ReductionData rd = ec::local_data(mm.model, q);
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(rd.conductor_exponent));
    n *= f;
  }
  return n;
}

LValueResult lvalue_rank0(const ec::WeierstrassModel& e, double tol, long precision_bits) {
  return lvalue_rank0(e, conductor(e), tol, precision_bits);
}

LValueResult lvalue_rank0(const ec::WeierstrassModel& e, const mpz_class& n, double tol, long precision_bits) {
  if (n <= 1 || !n.fits_ulong_p() || !arith::is_prime(n.get_ui()))
    throw DomainError("lvalue_rank0: conductor " + n.get_str() + " is not a prime");
  if (precision_bits < 53) throw PrecisionError("lvalue_rank0: precision below 53 bits");
  if (!(tol > 0)) throw DomainError("lvalue_rank0: tolerance must be positive");
  const double nd = n.get_d();
  const double xd = std::exp(-2 * M_PI / std::sqrt(nd));
  // 2 sum_{k>M} 2k/k x^k = 4 x^{M+1} / (1 - x) <= tol / 2
  const double want = std::log(tol / 8 * (1 - xd)) / std::log(xd);
  if (!(want < static_cast<double>(kTermCap))) throw PrecisionError("lvalue_rank0: tolerance needs too many terms");
  const auto terms = static_cast<std::uint32_t>(std::max(1.0, std::ceil(want)));
  const std::vector<std::int64_t> an = ec::an_sequence(e, terms);

  const long w = precision_bits + 32;
  const Real x = exp(Real(-2.0, w) * Real::pi(w) / sqrt(Real(n, w)));
  Real power(1.0, w), sum(0.0, w);
  double abs_sum = 0, xn = 1;
  for (std::uint32_t k = 1; k <= terms; ++k) {
    power *= x;
    xn *= xd;
    if (an[k] == 0) continue;
    sum += Real(mpq_class(an[k], k), w) * power;
    abs_sum += std::abs(static_cast<double>(an[k])) / k * xn;
  }
  LValueResult out{Real(precision_bits), terms, Real(64), Real(64), n};
  mpfr_mul_ui(out.value.get(), sum.get(), 2, MPFR_RNDN);
  const Real tail = Real(4.0, 64) * exp(Real(static_cast<double>(terms + 1), 64) * log(Real(xd, 64))) /
                    (Real(1.0, 64) - Real(xd, 64));
  out.tail_bound = tail;
  // per-term relative error grows like k ulps; the partial sums add terms ulps each
  const double ulp = std::ldexp(1.0, static_cast<int>(-w + 2));
  out.rounding_bound = Real(2 * abs_sum * (2.0 * terms + 4) * ulp + std::ldexp(std::abs(out.value.to_double()) + 1, static_cast<int>(-precision_bits)), 64);
  if ((out.tail_bound + out.rounding_bound).to_double() >= tol)
    throw PrecisionError("lvalue_rank0: error bound exceeds the tolerance at this precision");
  return out;
}

BSDData bsd_sha(const family::NSPair& pair, int which, double tol) {
  if (which != 0 && which != 1) throw DomainError("bsd_sha: curve must be 0 or 1");
  const ec::WeierstrassModel& e = which == 0 ? pair.e0 : pair.e1;
  const mpz_class& p = pair.parameter.p;
  const long tamagawa = ec::local_data(e, p).tamagawa;
  std::string last;
  for (long bits : {64L, 128L, 256L}) {
    try {
      const LValueResult l = lvalue_rank0(e, p, std::ldexp(1.0, static_cast<int>(-bits + 24)), bits);
      const ec::PeriodData om = ec::real_period(e, bits);
      const double lerr = (l.tail_bound + l.rounding_bound).to_double();
      if (l.value.to_double() <= lerr) throw CrossCheckError("bsd_sha: L(E,1) is consistent with zero");
      BSDData out{l.value, om.big_omega, 2, tamagawa, Real(bits), 0, 0, false, bits};
      out.sha_real = l.value * Real(4.0, bits) / (om.big_omega * Real(static_cast<double>(tamagawa), bits));
      out.sha = out.sha_real.round();
      out.residual = std::abs((out.sha_real - Real(out.sha, bits)).to_double());
      const double err =
          out.sha_real.to_double() * (lerr / l.value.to_double() + om.error.to_double() / om.big_omega.to_double());
      if (out.sha <= 0 || out.residual + err >= tol) {
        last = "rounding residual " + std::to_string(out.residual) + " at " + std::to_string(bits) + " bits";
        continue;
      }
      out.perfect_square = mpz_perfect_square_p(out.sha.get_mpz_t()) != 0;
      return out;
    } catch (const PrecisionError& ex) {
      last = ex.what();
    }
  }
  throw PrecisionError("bsd_sha: no precision rung met the tolerance (" + last + ")");
}

HeightComparison height_compare(const family::NSPair& pair, long precision_bits) {
  const ec::PeriodData a = ec::real_period(pair.e0, precision_bits);
  const ec::PeriodData b = ec::real_period(pair.e1, precision_bits);
  HeightComparison out{a.big_omega, b.big_omega, a.error, b.error,
                       ec::period_lattice(pair.e0, precision_bits).covolume,
                       ec::period_lattice(pair.e1, precision_bits).covolume, b.big_omega / a.big_omega,
                       CurveTag::E1};
  if (b.big_omega - b.error > a.big_omega + a.error)
    out.smaller_height = CurveTag::E1;
  else if (a.big_omega - a.error > b.big_omega + b.error)
    out.smaller_height = CurveTag::E0;
  else
    throw PrecisionError("height_compare: periods are not separated at this precision");
  const bool by_area = out.covolume1 > out.covolume0;
  if (by_area != (out.smaller_height == CurveTag::E1))
    throw CrossCheckError("height_compare: real period and parallelogram area disagree");
  return out;
}

const char* to_string(CurveTag t) { return t == CurveTag::E0 ? "E0" : "E1"; }

}  // namespace nscurve::analytic
