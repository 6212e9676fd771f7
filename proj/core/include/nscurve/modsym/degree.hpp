#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nscurve/ec/weierstrass.hpp"
#include "nscurve/family/ns_curve.hpp"
#include "nscurve/modsym/space.hpp"

namespace nscurve::modsym {

enum class NumericCheck { Auto, Always, Never };

struct DegreeOptions {
  bool dual_check = true;
  NumericCheck numeric = NumericCheck::Auto;  // Auto runs it for levels below kNumericAutoLimit
  std::uint32_t level_limit = kDefaultLevelLimit;
  std::uint64_t seed = 0x5eed;
};

inline constexpr std::uint32_t kNumericAutoLimit = 2000;

struct DegreeResult {
  mpz_class m;
  std::uint32_t level = 0, genus = 0;
  std::vector<std::string> methods;  // "pairing" always; "dual" and "numeric" when run
  std::vector<std::uint32_t> hecke_primes;
  double numeric_value = 0, numeric_error = 0;  // meaningful when "numeric" is listed
};

// Degree of the optimal parametrization X_0(p) -> E for an optimal curve E of
// prime conductor p. Throws DomainError for a bad level or one above the limit
// and CrossCheckError when the methods disagree.
DegreeResult modular_degree(const ec::WeierstrassModel& optimal, std::uint32_t p, const DegreeOptions& options = {});

// Uses E0, the optimal member of the pair.
DegreeResult modular_degree(const family::NSPair& pair, const DegreeOptions& options = {});

// Prime factorization as "2^2 * 3^2 * 5 * 43".
std::string factored(const mpz_class& m);

}  // namespace nscurve::modsym
