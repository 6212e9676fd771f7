#include <filesystem>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "nscurve/error.hpp"
#include "nscurve/survey/sieve.hpp"
#include "nscurve/survey/survey.hpp"

using namespace nscurve;
using namespace nscurve::survey;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::filesystem::path temp_file(const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(path);
  return path;
}

SurveyConfig small_config(std::uint64_t u_max) {
  SurveyConfig cfg;
  cfg.u_max = u_max;
  cfg.chunk = 20;
  return cfg;
}

}  // namespace

TEST_CASE("sieve against trial division") {
  CHECK(sieve_ns_u(10) == std::vector<std::uint64_t>{3, 5, 7});
  CHECK(sieve_ns_u(50) == std::vector<std::uint64_t>{3, 5, 7, 13, 17, 23, 33, 35, 37, 43, 45, 47});
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t u = 1; u <= 5000; ++u)
    if (trial_division_prime(u * u + 64)) oracle.push_back(u);
  const auto got = sieve_ns_u(5000);
  CHECK(got == oracle);
  for (auto u : got) {
    CHECK(u % 2 == 1);
    CHECK(u % 5 != 1);
    CHECK(u % 5 != 4);
  }
  std::vector<std::uint64_t> pieces;
  for (std::uint64_t lo = 1; lo <= 5000; lo += 777) {
    const auto part = sieve_ns_u(lo, std::min<std::uint64_t>(5000, lo + 776));
    pieces.insert(pieces.end(), part.begin(), part.end());
  }
  CHECK(pieces == got);
  CHECK(sieve_ns_u(2).empty());
}

TEST_CASE("sha survey at u_max = 50") {
  const FrequencyTable t = run_sha_survey(small_config(50));
  CHECK(t.complete);
  CHECK(t.total.count == 12);
  CHECK(t.excluded == 0);
  CHECK(t.curves.size() == 12);
  for (std::uint32_t m : {8u, 3u, 5u}) {
    std::uint64_t sum = 0;
    for (const auto& b : t.buckets)
      if (b.modulus == m) sum += b.count;
    CHECK(sum == t.total.count);
  }
  for (const auto& b : t.buckets)
    for (auto d : b.divisible) CHECK(d <= b.count);
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("restriction,count,p3,p5,p7,p11\n", 0) == 0);
  CHECK(csv.find("\ndelaunay,,36.1,20.7,14.5,9.2\n") != std::string::npos);
  CHECK(csv.find("\ntotal,12,") != std::string::npos);
  const std::string json = to_json(t);
  CHECK(json.find("\"published_total\"") != std::string::npos);
  CHECK(json.find("102312") != std::string::npos);
}

TEST_CASE("survey configuration checks") {
  SurveyConfig cfg = small_config(2);
  CHECK_THROWS_AS(run_sha_survey(cfg), DomainError);
  cfg.u_max = 100;
  cfg.primes = {3, 4};
  CHECK_THROWS_AS(run_sha_survey(cfg), DomainError);
  cfg.primes = {3};
  cfg.mode = SurveyMode::Parity;
  CHECK_THROWS_AS(run_sha_survey(cfg), DomainError);
  SurveyConfig a = small_config(100), b = small_config(100);
  b.chunk = 25;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a) == config_hash(small_config(100)));
}

TEST_CASE("checkpoint merge laws") {
  const SurveyConfig cfg = small_config(100);
  const auto path = temp_file("nscurve_merge.ckpt");
  SurveyConfig with_file = cfg;
  with_file.checkpoint = path;
  run_sha_survey(with_file);
  const Checkpoint full = load_checkpoint(path, config_hash(cfg));
  REQUIRE(full.ranges.size() == 5);
  Checkpoint parts[4];
  std::size_t i = 0;
  for (const auto& [r, curves] : full.ranges) {
    parts[i % 4].config_hash = full.config_hash;
    parts[i % 4].ranges.emplace(r, curves);
    ++i;
  }
  const Checkpoint empty;
  CHECK(merge_checkpoints(full, empty).ranges == full.ranges);
  CHECK(merge_checkpoints(empty, full).ranges == full.ranges);
  CHECK(merge_checkpoints(parts[0], parts[1]).ranges == merge_checkpoints(parts[1], parts[0]).ranges);
  const auto left = merge_checkpoints(merge_checkpoints(parts[0], parts[1]), parts[2]);
  const auto right = merge_checkpoints(parts[0], merge_checkpoints(parts[1], parts[2]));
  CHECK(left.ranges == right.ranges);
  CHECK(merge_checkpoints(full, full).ranges == full.ranges);
  CHECK(merge_checkpoints(merge_checkpoints(left, parts[3]), parts[2]).ranges == full.ranges);

  Checkpoint foreign = parts[0];
  foreign.config_hash = "other";
  CHECK_THROWS_AS(merge_checkpoints(parts[1], foreign), DomainError);
  Checkpoint overlap{full.config_hash, {{{10, 30}, {}}}};
  CHECK_THROWS_AS(merge_checkpoints(full, overlap), DomainError);
  Checkpoint altered = parts[0];
  altered.ranges.begin()->second.clear();
  CHECK_THROWS_AS(merge_checkpoints(parts[0], altered), DomainError);

  // tallies from merged partitions equal the sequential run
  std::vector<CurveOutcome> curves;
  const auto merged = merge_checkpoints(merge_checkpoints(parts[3], parts[1]), merge_checkpoints(parts[2], parts[0]));
  for (const auto& [r, c] : merged.ranges) curves.insert(curves.end(), c.begin(), c.end());
  CHECK(to_csv(tabulate(cfg, curves, true)) == to_csv(run_sha_survey(cfg)));
  std::filesystem::remove(path);
}

TEST_CASE("worker count does not change the output") {
  SurveyConfig one = small_config(200);
  SurveyConfig four = one;
  four.workers = 4;
  const FrequencyTable a = run_sha_survey(one), b = run_sha_survey(four);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("interrupted run resumes to the same table") {
  const SurveyConfig base = small_config(200);
  const std::string reference = to_csv(run_sha_survey(base));
  const auto path = temp_file("nscurve_resume.ckpt");
  SurveyConfig first = base;
  first.checkpoint = path;
  first.stop_after = 3;
  first.workers = 2;
  const FrequencyTable partial = run_sha_survey(first);
  CHECK_FALSE(partial.complete);
  {
    // a writer killed mid-line
    std::ofstream torn(path, std::ios::app);
    torn << "{\"config_hash\":\"" << config_hash(base) << "\",\"range\":[181,200],\"cur";
  }
  CHECK(load_checkpoint(path, config_hash(base)).ranges.size() == 3);
  SurveyConfig second = base;
  second.checkpoint = path;
  second.workers = 3;
  const FrequencyTable resumed = run_sha_survey(second);
  CHECK(resumed.complete);
  CHECK(to_csv(resumed) == reference);
  CHECK(load_checkpoint(path, config_hash(base)).ranges.size() == 10);

  SurveyConfig wrong = base;
  wrong.checkpoint = path;
  wrong.chunk = 25;
  CHECK_THROWS_AS(run_sha_survey(wrong), DomainError);
  std::filesystem::remove(path);
}

TEST_CASE("parity survey up to u = 45") {
  SurveyConfig cfg = small_config(45);
  cfg.mode = SurveyMode::Parity;
  const ParityReport r = run_parity_survey(cfg);
  CHECK(r.complete);
  CHECK(r.curves.size() == 11);
  CHECK(r.failures == 0);
  CHECK(r.parity_mismatches == 0);
  CHECK(r.parity_matches == 11);
  bool saw17 = false;
  for (const auto& c : r.curves)
    if (c.u == 17) {
      saw17 = true;
      CHECK(c.degree == 24);
      CHECK(c.two_adic_predicted == family::TwoAdic::AtLeastTwo);
      CHECK(c.two_valuation == 3);
    }
  CHECK(saw17);
  SurveyConfig empty = cfg;
  empty.u_max = 2;
  const ParityReport none = run_parity_survey(empty);
  CHECK(none.curves.empty());
  CHECK(none.complete);
}
