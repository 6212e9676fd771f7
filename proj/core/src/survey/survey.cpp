#include "nscurve/survey/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nscurve/analytic/lvalue.hpp"
#include "nscurve/error.hpp"
#include "nscurve/modsym/degree.hpp"
#include "nscurve/survey/sieve.hpp"

namespace nscurve::survey {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

CurveOutcome evaluate(std::uint64_t u, SurveyMode mode) {
  CurveOutcome c;
  c.u = u;
  const mpz_class signed_u = family::normalize_u(mpz_class(u));
  c.p = mpz_class(u) * u + 64;
  c.parity_predicted = family::predict_parity(signed_u).parity;
  try {
    const family::NSPair pair = family::construct_pair(signed_u);
    if (mode == SurveyMode::Sha) {
      c.sha = analytic::bsd_sha(pair, 1).sha;
    } else {
      c.two_adic_predicted = family::predict_two_valuation(signed_u).two_adic;
      c.degree = modsym::modular_degree(pair).m;
      c.two_valuation = static_cast<int>(mpz_scan1(c.degree.get_mpz_t(), 0));
    }
    c.ok = true;
  } catch (const std::exception& ex) {
    c.ok = false;
    c.error = ex.what();
    c.sha = 0;
    c.degree = 0;
  }
  return c;
}

std::vector<Range> plan(const SurveyConfig& cfg) {
  std::vector<Range> out;
  for (std::uint64_t lo = 1; lo <= cfg.u_max; lo += cfg.chunk) out.emplace_back(lo, std::min(cfg.u_max, lo + cfg.chunk - 1));
  return out;
}

struct RunResult {
  std::vector<CurveOutcome> curves;
  bool complete = false;
};

RunResult run(const SurveyConfig& cfg) {
  validate(cfg);
  const std::string hash = config_hash(cfg);
  const std::vector<Range> ranges = plan(cfg);
  Checkpoint done{hash, {}};
  if (cfg.checkpoint) done = load_checkpoint(*cfg.checkpoint, hash);
  for (const auto& [r, curves] : done.ranges)
    if (!std::binary_search(ranges.begin(), ranges.end(), r))
      throw DomainError("survey: checkpoint holds a range that is not part of this run");

  std::vector<Range> pending;
  for (const auto& r : ranges)
    if (!done.ranges.count(r)) pending.push_back(r);

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::size_t finished = 0;
  bool stop = false;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      {
        std::lock_guard<std::mutex> lock(mu);
        if (stop || failure) return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      try {
        std::vector<CurveOutcome> curves;
        for (std::uint64_t u : sieve_ns_u(pending[i].first, pending[i].second)) curves.push_back(evaluate(u, cfg.mode));
        std::lock_guard<std::mutex> lock(mu);
        if (stop) return;
        if (cfg.checkpoint) append_checkpoint(*cfg.checkpoint, hash, pending[i], curves, cfg.primes);
        done.ranges.emplace(pending[i], std::move(curves));
        ++finished;
        if (cfg.stop_after && finished >= *cfg.stop_after) stop = true;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(std::max<std::size_t>(1, pending.size()))));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  RunResult out;
  out.complete = done.ranges.size() == ranges.size();
  for (const auto& [r, curves] : done.ranges) out.curves.insert(out.curves.end(), curves.begin(), curves.end());
  return out;
}

std::string percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * static_cast<double>(part) / static_cast<double>(whole));
  return buf;
}

const char* parity_name(family::Parity p) { return p == family::Parity::Odd ? "odd" : "even"; }

json big(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

bool two_adic_consistent(family::TwoAdic t, int v) {
  switch (t) {
    case family::TwoAdic::ExactlyZero: return v == 0;
    case family::TwoAdic::Positive: return v >= 1;
    case family::TwoAdic::ExactlyOne: return v == 1;
    case family::TwoAdic::AtLeastTwo: return v >= 2;
  }
  return false;
}

std::optional<double> reference_percent(const ReferenceRow& row, std::uint32_t prime) {
  const std::uint32_t known[4] = {3, 5, 7, 11};
  for (int i = 0; i < 4; ++i)
    if (known[i] == prime) return row.percent[i];
  return std::nullopt;
}

json bucket_json(const Bucket& b, const std::vector<std::uint32_t>& primes) {
  json j{{"restriction", b.label}, {"count", b.count}};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::string key = "p" + std::to_string(primes[i]);
    j["divisible"][key] = b.divisible[i];
    const std::string pc = percent(b.divisible[i], b.count);
    j["percent"][key] = pc.empty() ? json(nullptr) : json(std::stod(pc));
  }
  return j;
}

}  // namespace

void validate(const SurveyConfig& cfg) {
  if (cfg.u_max < 3) throw DomainError("survey: u_max must be at least 3");
  if (cfg.primes.empty()) throw DomainError("survey: no target primes");
  for (auto q : cfg.primes)
    if (q % 2 == 0 || q < 3) throw DomainError("survey: target primes must be odd");
  if (cfg.workers < 1) throw DomainError("survey: need at least one worker");
  if (cfg.chunk < 1) throw DomainError("survey: chunk must be positive");
}

std::string config_hash(const SurveyConfig& cfg) {
  std::ostringstream os;
  os << "v" << kFormatVersion << ";mode=" << (cfg.mode == SurveyMode::Sha ? "sha" : "parity") << ";u_max=" << cfg.u_max
     << ";chunk=" << cfg.chunk << ";primes=";
  for (auto q : cfg.primes) os << q << ",";
  const std::string s = os.str();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FrequencyTable tabulate(const SurveyConfig& cfg, std::vector<CurveOutcome> curves, bool complete) {
  std::sort(curves.begin(), curves.end(), [](const CurveOutcome& a, const CurveOutcome& b) { return a.u < b.u; });
  FrequencyTable t;
  t.u_max = cfg.u_max;
  t.primes = cfg.primes;
  t.complete = complete;
  const std::pair<std::uint32_t, std::vector<std::uint32_t>> layout[] = {{8, {1, 3, 5, 7}}, {3, {0, 1, 2}}, {5, {0, 2, 3}}};
  for (const auto& [m, residues] : layout)
    for (auto r : residues)
      t.buckets.push_back({"u=" + std::to_string(r) + " mod " + std::to_string(m), m, r, 0,
                           std::vector<std::uint64_t>(cfg.primes.size(), 0)});
  t.total = {"total", 0, 0, 0, std::vector<std::uint64_t>(cfg.primes.size(), 0)};
  for (const auto& c : curves) {
    if (!c.ok) {
      ++t.excluded;
      continue;
    }
    auto tally = [&](Bucket& b) {
      ++b.count;
      for (std::size_t i = 0; i < cfg.primes.size(); ++i)
        if (mpz_divisible_ui_p(c.sha.get_mpz_t(), cfg.primes[i])) ++b.divisible[i];
    };
    tally(t.total);
    for (auto& b : t.buckets)
      if (c.u % b.modulus == b.residue) tally(b);
  }
  t.curves = std::move(curves);
  return t;
}

FrequencyTable run_sha_survey(const SurveyConfig& cfg) {
  if (cfg.mode != SurveyMode::Sha) throw DomainError("run_sha_survey: configuration is not in sha mode");
  RunResult r = run(cfg);
  return tabulate(cfg, std::move(r.curves), r.complete);
}

ParityReport run_parity_survey(const SurveyConfig& cfg) {
  if (cfg.mode != SurveyMode::Parity) throw DomainError("run_parity_survey: configuration is not in parity mode");
  ParityReport rep;
  rep.u_max = cfg.u_max;
  if (cfg.u_max < 3) {
    rep.complete = true;
    return rep;
  }
  RunResult r = run(cfg);
  rep.complete = r.complete;
  rep.curves = std::move(r.curves);
  for (const auto& c : rep.curves) {
    if (!c.ok) {
      ++rep.failures;
      continue;
    }
    const bool odd = c.two_valuation == 0;
    if (odd) ++rep.odd_degrees;
    if (odd == (c.parity_predicted == family::Parity::Odd))
      ++rep.parity_matches;
    else
      ++rep.parity_mismatches;
    if (two_adic_consistent(c.two_adic_predicted, c.two_valuation))
      ++rep.two_adic_consistent;
    else
      ++rep.two_adic_inconsistent;
  }
  return rep;
}

std::string to_csv(const FrequencyTable& t) {
  std::ostringstream os;
  os << "restriction,count";
  for (auto q : t.primes) os << ",p" << q;
  os << "\n";
  auto row = [&](const Bucket& b) {
    os << b.label << "," << b.count;
    for (std::size_t i = 0; i < t.primes.size(); ++i) os << "," << percent(b.divisible[i], b.count);
    os << "\n";
  };
  for (const auto& b : t.buckets) row(b);
  row(t.total);
  os << kDelaunayRow.label << ",";
  for (auto q : t.primes) {
    os << ",";
    if (auto v = reference_percent(kDelaunayRow, q)) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.1f", *v);
      os << buf;
    }
  }
  os << "\n";
  return os.str();
}

std::string to_json(const FrequencyTable& t) {
  json j;
  j["u_max"] = t.u_max;
  j["primes"] = t.primes;
  j["complete"] = t.complete;
  j["excluded"] = t.excluded;
  j["header"] = json::array({"restriction", "count"});
  for (auto q : t.primes) j["header"].push_back("p" + std::to_string(q));
  j["rows"] = json::array();
  for (const auto& b : t.buckets) j["rows"].push_back(bucket_json(b, t.primes));
  j["total"] = bucket_json(t.total, t.primes);
  for (const ReferenceRow* ref : {&kDelaunayRow, &kPublishedTotalRow}) {
    json r{{"restriction", ref->label}};
    if (ref->count) r["count"] = ref->count;
    for (auto q : t.primes)
      if (auto v = reference_percent(*ref, q)) r["percent"]["p" + std::to_string(q)] = *v;
    j["reference"][ref->label] = r;
  }
  j["curves"] = json::array();
  for (const auto& c : t.curves) {
    json cj{{"u", c.u}, {"p", big(c.p)}, {"parity_predicted", parity_name(c.parity_predicted)}};
    if (c.ok)
      cj["sha"] = big(c.sha);
    else
      cj["error"] = c.error;
    j["curves"].push_back(cj);
  }
  return j.dump(2) + "\n";
}

std::string to_json(const ParityReport& r) {
  json j{{"u_max", r.u_max},
         {"complete", r.complete},
         {"parity_matches", r.parity_matches},
         {"parity_mismatches", r.parity_mismatches},
         {"two_adic_consistent", r.two_adic_consistent},
         {"two_adic_inconsistent", r.two_adic_inconsistent},
         {"odd_degrees", r.odd_degrees},
         {"failures", r.failures}};
  const std::uint64_t ok = r.parity_matches + r.parity_mismatches;
  j["odd_fraction"] = ok ? static_cast<double>(r.odd_degrees) / static_cast<double>(ok) : 0.0;
  j["curves"] = json::array();
  for (const auto& c : r.curves) {
    json cj{{"u", c.u}, {"p", big(c.p)}, {"parity_predicted", parity_name(c.parity_predicted)}};
    if (c.ok) {
      cj["degree"] = big(c.degree);
      cj["parity_observed"] = c.two_valuation == 0 ? "odd" : "even";
      cj["two_adic_predicted"] = family::to_string(c.two_adic_predicted);
      cj["two_valuation"] = c.two_valuation;
      cj["two_adic_consistent"] = two_adic_consistent(c.two_adic_predicted, c.two_valuation);
    } else {
      cj["error"] = c.error;
    }
    j["curves"].push_back(cj);
  }
  return j.dump(2) + "\n";
}

std::string to_text(const ParityReport& r) {
  std::ostringstream os;
  os << "u,p,degree,predicted,observed,two_adic_predicted,v2,status\n";
  for (const auto& c : r.curves) {
    os << c.u << "," << c.p << ",";
    if (!c.ok) {
      os << ",,,,," << "error: " << c.error << "\n";
      continue;
    }
    const bool odd = c.two_valuation == 0;
    const bool match = odd == (c.parity_predicted == family::Parity::Odd);
    os << c.degree << "," << parity_name(c.parity_predicted) << "," << (odd ? "odd" : "even") << ","
       << family::to_string(c.two_adic_predicted) << "," << c.two_valuation << ","
       << (match ? "match" : "MISMATCH")
       << (two_adic_consistent(c.two_adic_predicted, c.two_valuation) ? "" : " (two-adic conjecture fails)") << "\n";
  }
  os << "matches " << r.parity_matches << ", mismatches " << r.parity_mismatches << ", odd degrees " << r.odd_degrees
     << ", failures " << r.failures << "\n";
  return os.str();
}

}  // namespace nscurve::survey
