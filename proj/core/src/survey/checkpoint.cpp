#include <fcntl.h>
#include <unistd.h>

#include <fstream>

#include "json.hpp"
#include "nscurve/error.hpp"
#include "nscurve/survey/survey.hpp"

namespace nscurve::survey {

namespace {

using nlohmann::json;

json encode(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

mpz_class decode(const json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(j.get<long>());
}

const char* parity_name(family::Parity p) { return p == family::Parity::Odd ? "odd" : "even"; }

family::Parity parse_parity(const std::string& s) {
  if (s == "odd") return family::Parity::Odd;
  if (s == "even") return family::Parity::Even;
  throw std::invalid_argument("bad parity");
}

family::TwoAdic parse_two_adic(const std::string& s) {
  for (auto t : {family::TwoAdic::ExactlyZero, family::TwoAdic::Positive, family::TwoAdic::ExactlyOne,
                 family::TwoAdic::AtLeastTwo})
    if (s == family::to_string(t)) return t;
  throw std::invalid_argument("bad two-adic tag");
}

json encode(const CurveOutcome& c) {
  json j{{"u", c.u}, {"p", encode(c.p)}, {"ok", c.ok}, {"parity_predicted", parity_name(c.parity_predicted)}};
  if (!c.ok) j["error"] = c.error;
  if (c.ok && c.sha != 0) j["sha"] = encode(c.sha);
  if (c.ok && c.degree != 0) {
    j["degree"] = encode(c.degree);
    j["two_adic_predicted"] = family::to_string(c.two_adic_predicted);
    j["two_valuation"] = c.two_valuation;
  }
  return j;
}

CurveOutcome decode_outcome(const json& j) {
  CurveOutcome c;
  c.u = j.at("u").get<std::uint64_t>();
  c.p = decode(j.at("p"));
  c.ok = j.at("ok").get<bool>();
  c.parity_predicted = parse_parity(j.at("parity_predicted").get<std::string>());
  if (!c.ok) c.error = j.at("error").get<std::string>();
  if (j.contains("sha")) c.sha = decode(j.at("sha"));
  if (j.contains("degree")) {
    c.degree = decode(j.at("degree"));
    c.two_adic_predicted = parse_two_adic(j.at("two_adic_predicted").get<std::string>());
    c.two_valuation = j.at("two_valuation").get<int>();
  }
  return c;
}

// Per-range tallies stored next to the curves so a record can be checked on reload.
json range_buckets(const std::vector<CurveOutcome>& curves, const std::vector<std::uint32_t>& primes) {
  std::uint64_t count = 0, excluded = 0;
  std::vector<std::uint64_t> divisible(primes.size(), 0);
  for (const auto& c : curves) {
    if (!c.ok) {
      ++excluded;
      continue;
    }
    ++count;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (c.sha != 0 && mpz_divisible_ui_p(c.sha.get_mpz_t(), primes[i])) ++divisible[i];
  }
  return json{{"count", count}, {"excluded", excluded}, {"divisible", divisible}};
}

}  // namespace

Checkpoint merge_checkpoints(const Checkpoint& a, const Checkpoint& b) {
  if (a.ranges.empty() && a.config_hash.empty()) return b;
  if (b.ranges.empty() && b.config_hash.empty()) return a;
  if (a.config_hash != b.config_hash) throw DomainError("merge_checkpoints: configuration hash mismatch");
  Checkpoint out = a;
  for (const auto& [range, curves] : b.ranges) {
    auto same = out.ranges.find(range);
    if (same != out.ranges.end()) {
      if (same->second != curves) throw DomainError("merge_checkpoints: identical ranges with different results");
      continue;
    }
    // neighbours in key order are the only candidates for overlap
    auto next = out.ranges.lower_bound(range);
    if (next != out.ranges.end() && next->first.first <= range.second)
      throw DomainError("merge_checkpoints: overlapping ranges");
    if (next != out.ranges.begin() && std::prev(next)->first.second >= range.first)
      throw DomainError("merge_checkpoints: overlapping ranges");
    out.ranges.emplace(range, curves);
  }
  return out;
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const std::string& hash) {
  Checkpoint out{hash, {}};
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Checkpoint one{hash, {}};
    std::vector<std::uint32_t> primes;
    json stored;
    try {
      const json j = json::parse(line);
      if (j.at("config_hash").get<std::string>() != hash)
        throw DomainError("load_checkpoint: " + path.string() + " was written with a different configuration");
      const Range r{j.at("range").at(0).get<std::uint64_t>(), j.at("range").at(1).get<std::uint64_t>()};
      std::vector<CurveOutcome> curves;
      for (const auto& c : j.at("curves")) curves.push_back(decode_outcome(c));
      primes = j.at("primes").get<std::vector<std::uint32_t>>();
      if (range_buckets(curves, primes) != j.at("buckets")) continue;
      one.ranges.emplace(r, std::move(curves));
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      continue;  // torn or garbled line
    }
    out = merge_checkpoints(out, one);
  }
  return out;
}

void append_checkpoint(const std::filesystem::path& path, const std::string& hash, const Range& range,
                       const std::vector<CurveOutcome>& curves, const std::vector<std::uint32_t>& primes) {
  json j{{"config_hash", hash}, {"range", {range.first, range.second}}, {"primes", primes},
         {"buckets", range_buckets(curves, primes)}};
  j["curves"] = json::array();
  for (const auto& c : curves) j["curves"].push_back(encode(c));
  // a leading newline ends any torn line left by an interrupted writer
  const std::string text = "\n" + j.dump() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("append_checkpoint: cannot open " + path.string());
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n <= 0) {
      ::close(fd);
      throw std::runtime_error("append_checkpoint: write failed for " + path.string());
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

}  // namespace nscurve::survey
