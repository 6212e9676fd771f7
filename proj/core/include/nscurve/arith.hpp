#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nscurve::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Inverse of a modulo m; a and m coprime.
i64 invmod(i64 a, i64 m);

// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline u64 mod(const mpz_class& a, u64 m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

// Deterministic Miller-Rabin on the first twelve prime bases. Exact for all
// n < 3.3e24; above that it degrades to a strong probable-prime test.
bool is_prime(u64 n);
bool is_prime(const mpz_class& n);

// Legendre symbol (a/q) for an odd prime q.
int legendre(i64 a, i64 q);
int legendre(const mpz_class& a, u64 q);

int valuation(const mpz_class& n, const mpz_class& q);
int valuation(const mpz_class& n, u64 q);

std::vector<u64> primes_up_to(u64 n);

// Smallest prime factor for every 0 <= k <= n (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n);

struct Factorization {
  std::vector<std::pair<mpz_class, int>> factors;  // ascending primes
};

// Complete factorization of |n| > 0 by trial division up to trial_limit,
// followed by primality / perfect-power checks on the cofactor. Throws
// std::runtime_error when a composite cofactor with no small factor remains.
Factorization factor(const mpz_class& n, u64 trial_limit = 1000000);

// Every positive divisor d of n with d*d | n, given the factorization of n.
std::vector<mpz_class> square_divisors(const Factorization& f);

// Rational reconstruction of a mod m: returns false when no fraction with
// |num|, den <= sqrt(m/2) exists.
bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out);

}  // namespace nscurve::arith
