#include "nscurve/family/ns_curve.hpp"

#include <stdexcept>

#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"

namespace nscurve::family {

namespace {

unsigned long mod_ui(const mpz_class& u, unsigned long m) { return mpz_fdiv_ui(u.get_mpz_t(), m); }

}  // namespace

bool is_ns_u(const mpz_class& u) {
  if (mod_ui(u, 2) == 0) return false;
  return arith::is_prime(mpz_class(u * u + 64));
}

mpz_class normalize_u(const mpz_class& u) {
  if (mod_ui(u, 2) == 0) throw DomainError("normalize_u: u must be odd, got " + u.get_str());
  return mod_ui(u, 4) == 3 ? u : mpz_class(-u);
}

NSParameter make_parameter(const mpz_class& u) {
  if (mod_ui(u, 4) != 3) throw DomainError("u must be odd and 3 mod 4, got " + u.get_str());
  const mpz_class p = u * u + 64;
  if (!arith::is_prime(p)) throw DomainError("u^2 + 64 = " + p.get_str() + " is not prime");
  return {u, p};
}

NSPair construct_pair(const mpz_class& u) {
  NSPair pair;
  pair.parameter = make_parameter(u);
  const mpz_class& p = pair.parameter.p;
  const mpz_class a2 = -(u + 1) / 4;
  pair.e0 = ec::WeierstrassModel{1, a2, 0, 4, -u};
  pair.e1 = ec::WeierstrassModel{1, a2, 0, -1, 0};
  pair.invariants0 = ec::compute_invariants(pair.e0);
  pair.invariants1 = ec::compute_invariants(pair.e1);
  const auto& i0 = pair.invariants0;
  const auto& i1 = pair.invariants1;
  if (i1.c4 != p - 16 || i1.c6 != u * (p + 8) || i1.discriminant != p || i0.c4 != p - 256 ||
      i0.c6 != u * (p + 512) || i0.discriminant != -p * p)
    throw std::logic_error("construct_pair: invariant identities failed for u = " + u.get_str());
  return pair;
}

ec::RationalPoint two_torsion_point(const NSPair& pair, int which) {
  if (which == 1) return ec::RationalPoint{0, 0, false};
  if (which != 0) throw DomainError("two_torsion_point: curve index must be 0 or 1");
  const mpz_class& u = pair.parameter.u;
  return ec::RationalPoint{mpq_class(u, 4), mpq_class(-u, 8), false};
}

ParityPrediction predict_parity(const mpz_class& u) {
  make_parameter(u);
  if (mod_ui(u, 8) == 3) return {Parity::Odd, TwoAdic::ExactlyZero, Provenance::Theorem};
  return {Parity::Even, TwoAdic::Positive, Provenance::Theorem};
}

ParityPrediction predict_two_valuation(const mpz_class& u) {
  make_parameter(u);
  const auto r = mod_ui(u, 16);
  if (r % 8 == 3) return {Parity::Odd, TwoAdic::ExactlyZero, Provenance::Theorem};
  if (r == 7) return {Parity::Even, TwoAdic::ExactlyOne, Provenance::Conjecture};
  return {Parity::Even, TwoAdic::AtLeastTwo, Provenance::Conjecture};
}

EisensteinData eisenstein_n(const mpz_class& p) {
  if (p < 2 || !arith::is_prime(p)) throw DomainError("eisenstein_n: " + p.get_str() + " is not prime");
  mpq_class q(p - 1, 12);
  q.canonicalize();
  return {q.get_num()};
}

const char* to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

const char* to_string(TwoAdic t) {
  switch (t) {
    case TwoAdic::ExactlyZero: return "exactly-zero";
    case TwoAdic::Positive: return "positive";
    case TwoAdic::ExactlyOne: return "exactly-one";
    case TwoAdic::AtLeastTwo: return "at-least-two";
  }
  return "?";
}

const char* to_string(Provenance p) { return p == Provenance::Theorem ? "theorem" : "conjecture"; }

}  // namespace nscurve::family
