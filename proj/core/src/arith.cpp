#include "nscurve/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace nscurve::arith {

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::invalid_argument("invmod: not invertible");
  return mod(x, m);
}

namespace {

constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const mpz_class& n, unsigned long a) {
  mpz_class d = n - 1;
  int s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  mpz_class x;
  mpz_class base = a;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (int r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  for (u64 a : kBases) {
    if (!strong_probable_prime(n, a)) return false;
  }
  return true;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<u64>(n.get_ui()));
  for (u64 p : kBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  for (u64 a : kBases) {
    if (!strong_probable_prime(n, a)) return false;
  }
  // Outside the deterministic range: add random bases.
  static const mpz_class kDeterministicBound("3317044064679887385961981");
  if (n >= kDeterministicBound) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  return true;
}

int legendre(i64 a, i64 q) {
  const u64 r = powmod(static_cast<u64>(mod(a, q)), static_cast<u64>((q - 1) / 2), static_cast<u64>(q));
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int legendre(const mpz_class& a, u64 q) {
  return legendre(static_cast<i64>(mod(a, q)), static_cast<i64>(q));
}

int valuation(const mpz_class& n, const mpz_class& q) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  mpz_class m = n;
  while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
    ++v;
  }
  return v;
}

int valuation(const mpz_class& n, u64 q) { return valuation(n, mpz_class(static_cast<unsigned long>(q))); }

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  return spf;
}

Factorization factor(const mpz_class& n, u64 trial_limit) {
  if (n == 0) throw std::invalid_argument("factor: zero");
  Factorization f;
  mpz_class m = abs(n);
  auto pull = [&](const mpz_class& p) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e) f.factors.emplace_back(p, e);
  };
  pull(2);
  for (u64 p = 3; p <= trial_limit; p += 2) {
    if (m == 1) break;
    mpz_class pp = static_cast<unsigned long>(p);
    if (pp * pp > m) break;
    pull(pp);
  }
  if (m == 1) return f;
  if (is_prime(m)) {
    f.factors.emplace_back(m, 1);
    return f;
  }
  for (int k = 2; k <= 6; ++k) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(k)) && is_prime(r)) {
      f.factors.emplace_back(r, k);
      std::sort(f.factors.begin(), f.factors.end());
      return f;
    }
  }
  throw std::runtime_error("factor: cofactor has no small prime factor");
}

std::vector<mpz_class> square_divisors(const Factorization& f) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t sz = out.size();
    mpz_class pk = 1;
    for (int k = 1; 2 * k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out) {
  // Bound: |num|, den <= sqrt(m/2).
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace nscurve::arith
