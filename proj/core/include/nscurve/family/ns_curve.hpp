#pragma once

#include <gmpxx.h>

#include "nscurve/ec/weierstrass.hpp"

namespace nscurve::family {

// p = u^2 + 64 prime, u odd. The sign of u is fixed by u = 3 (mod 4).
struct NSParameter {
  mpz_class u;
  mpz_class p;
};

struct NSPair {
  NSParameter parameter;
  ec::WeierstrassModel e0, e1;  // discriminants -p^2 and p
  ec::CurveInvariants invariants0, invariants1;
};

enum class Parity { Odd, Even };
enum class TwoAdic { ExactlyZero, Positive, ExactlyOne, AtLeastTwo };
enum class Provenance { Theorem, Conjecture };

struct ParityPrediction {
  Parity parity;
  TwoAdic two_adic;
  Provenance provenance;
};

struct EisensteinData {
  mpz_class n;  // numerator of (p - 1) / 12
};

// True iff u is odd and u^2 + 64 is prime (BPSW-style probable prime past 3.3e24).
bool is_ns_u(const mpz_class& u);

// The representative of {u, -u} that is 3 mod 4. Throws DomainError on even u.
mpz_class normalize_u(const mpz_class& u);

// Validated parameter; throws DomainError unless u is normalized and p prime.
NSParameter make_parameter(const mpz_class& u);

// E0: [1, -(u+1)/4, 0, 4, -u] and E1: [1, -(u+1)/4, 0, -1, 0].
NSPair construct_pair(const mpz_class& u);

// (u/4, -u/8) on E0, (0, 0) on E1.
ec::RationalPoint two_torsion_point(const NSPair& pair, int which);

// Parity of the modular degree: odd iff u = 3 (mod 8).
ParityPrediction predict_parity(const mpz_class& u);

// Refines the even case: u = 7 (mod 16) exactly one factor of 2, u = 15 (mod 16)
// at least two. Both refinements are conjectural.
ParityPrediction predict_two_valuation(const mpz_class& u);

EisensteinData eisenstein_n(const mpz_class& p);

const char* to_string(Parity p);
const char* to_string(TwoAdic t);
const char* to_string(Provenance p);

}  // namespace nscurve::family
