#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nscurve/family/ns_curve.hpp"

namespace nscurve::survey {

enum class SurveyMode { Sha, Parity };

struct SurveyConfig {
  std::uint64_t u_max = 2000;
  std::vector<std::uint32_t> primes{3, 5, 7, 11};
  SurveyMode mode = SurveyMode::Sha;
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t chunk = 50;  // width of a work range in u
  // Stop after this many newly completed ranges (simulates an interrupted run).
  std::optional<std::size_t> stop_after;
};

// Throws DomainError unless u_max >= 3, every target prime is odd, workers >= 1, chunk >= 1.
void validate(const SurveyConfig& cfg);

// Hash over everything that changes results or range boundaries.
std::string config_hash(const SurveyConfig& cfg);

struct CurveOutcome {
  std::uint64_t u = 0;  // positive parameter
  mpz_class p;
  bool ok = false;
  std::string error;  // set when !ok
  mpz_class sha;      // Sha mode
  family::Parity parity_predicted = family::Parity::Even;
  // Parity mode
  mpz_class degree;
  family::TwoAdic two_adic_predicted = family::TwoAdic::AtLeastTwo;
  int two_valuation = 0;

  friend bool operator==(const CurveOutcome&, const CurveOutcome&) = default;
};

using Range = std::pair<std::uint64_t, std::uint64_t>;  // closed

// Completed ranges with their per-curve outcomes.
struct Checkpoint {
  std::string config_hash;
  std::map<Range, std::vector<CurveOutcome>> ranges;
};

// Union of completed ranges. Throws DomainError on a hash mismatch or on
// overlapping ranges that are not identical; identical ranges must agree.
Checkpoint merge_checkpoints(const Checkpoint& a, const Checkpoint& b);

// Reads a line-delimited checkpoint file. Truncated or malformed lines are
// skipped; a record written under another configuration hash throws DomainError.
Checkpoint load_checkpoint(const std::filesystem::path& path, const std::string& hash);

// Appends one completed range as a single line and fsyncs the file.
void append_checkpoint(const std::filesystem::path& path, const std::string& hash, const Range& range,
                       const std::vector<CurveOutcome>& curves, const std::vector<std::uint32_t>& primes);

struct Bucket {
  std::string label;  // "u=1 mod 8", "total"
  std::uint32_t modulus = 0, residue = 0;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> divisible;  // per target prime
};

struct ReferenceRow {
  const char* label;
  std::uint64_t count;  // 0 when not given
  double percent[4];    // p = 3, 5, 7, 11
};

inline constexpr ReferenceRow kDelaunayRow{"delaunay", 0, {36.1, 20.7, 14.5, 9.2}};
inline constexpr ReferenceRow kPublishedTotalRow{"published_total", 102312, {35.8, 19.0, 12.3, 6.2}};

struct FrequencyTable {
  std::uint64_t u_max = 0;
  std::vector<std::uint32_t> primes;
  std::vector<Bucket> buckets;  // u mod 8 in {1,3,5,7}, u mod 3 in {0,1,2}, u mod 5 in {0,2,3}
  Bucket total;
  std::uint64_t excluded = 0;
  std::vector<CurveOutcome> curves;  // ascending u
  bool complete = false;             // false when stopped early
};

// Tallies outcomes (ascending u) into the bucket layout.
FrequencyTable tabulate(const SurveyConfig& cfg, std::vector<CurveOutcome> curves, bool complete);

// Sha of E1 for every sieved u, tallied by divisibility.
FrequencyTable run_sha_survey(const SurveyConfig& cfg);

struct ParityReport {
  std::uint64_t u_max = 0;
  std::vector<CurveOutcome> curves;
  std::uint64_t parity_matches = 0, parity_mismatches = 0;
  std::uint64_t two_adic_consistent = 0, two_adic_inconsistent = 0;
  std::uint64_t odd_degrees = 0, failures = 0;
  bool complete = false;
};

// Exact modular degree for every sieved u compared with the predictions.
ParityReport run_parity_survey(const SurveyConfig& cfg);

// Percentages with one decimal, Table-1 layout.
std::string to_csv(const FrequencyTable& t);
std::string to_json(const FrequencyTable& t);
std::string to_json(const ParityReport& r);
std::string to_text(const ParityReport& r);

}  // namespace nscurve::survey
