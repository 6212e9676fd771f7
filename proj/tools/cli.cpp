#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nscurve/analytic/lvalue.hpp"
#include "nscurve/arith.hpp"
#include "nscurve/error.hpp"
#include "nscurve/family/ns_curve.hpp"
#include "nscurve/modsym/degree.hpp"
#include "nscurve/survey/sieve.hpp"
#include "nscurve/survey/survey.hpp"

namespace nscurve::cli {

namespace {

using nlohmann::ordered_json;

ordered_json big(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flat "key: value" rendering of the same payload used for --json.
void render_table(const ordered_json& j, const std::string& prefix, std::ostream& os) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      render_table(value, name, os);
    } else if (value.is_array()) {
      os << name << ":";
      for (const auto& v : value) os << " " << scalar_text(v);
      os << "\n";
    } else {
      os << name << ": " << scalar_text(value) << "\n";
    }
  }
}

void emit(const ordered_json& payload, bool as_json, std::ostream& os) {
  if (as_json)
    os << payload.dump(2) << "\n";
  else
    render_table(payload, "", os);
}

mpz_class parse_integer(const std::string& text, const char* what) {
  mpz_class v;
  if (text.empty() || v.set_str(text, 10) != 0) throw DomainError(std::string(what) + " must be an integer, got '" + text + "'");
  return v;
}

family::NSPair pair_from_u(const std::string& text, mpz_class& normalized) {
  const mpz_class u = parse_integer(text, "--u");
  if (!family::is_ns_u(u)) throw DomainError("u = " + u.get_str() + " does not give a prime u^2 + 64 with u odd");
  normalized = family::normalize_u(u);
  return family::construct_pair(normalized);
}

std::string point_text(const ec::RationalPoint& pt) { return "(" + pt.x.get_str() + ", " + pt.y.get_str() + ")"; }

double to_double(const Real& r) { return r.to_double(); }

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot write " + tmp.string());
    f << text;
    if (!f) throw DomainError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw DomainError("cannot write " + path + ": " + ec.message());
}

struct Options {
  bool json = false;
  std::string u, p, out, resume, format = "csv", json_out;
  int curve = 1;
  double tol = 1e-12;
  long bits = 128;
  std::uint64_t u_max = 0;
  unsigned workers = 1;
  std::uint32_t level_limit = modsym::kDefaultLevelLimit;
  bool no_numeric = false, no_dual = false;
};

ordered_json cmd_curve(const Options& o) {
  mpz_class u;
  const auto pair = pair_from_u(o.u, u);
  ordered_json j;
  j["u"] = big(u);
  j["p"] = big(pair.parameter.p);
  j["model0"] = pair.e0.label();
  j["model1"] = pair.e1.label();
  j["c4"] = {big(pair.invariants0.c4), big(pair.invariants1.c4)};
  j["c6"] = {big(pair.invariants0.c6), big(pair.invariants1.c6)};
  j["delta"] = {big(pair.invariants0.discriminant), big(pair.invariants1.discriminant)};
  j["torsion_point0"] = point_text(family::two_torsion_point(pair, 0));
  j["torsion_point1"] = point_text(family::two_torsion_point(pair, 1));
  return j;
}

ordered_json cmd_parity(const Options& o) {
  mpz_class u;
  const auto pair = pair_from_u(o.u, u);
  const auto parity = family::predict_parity(u);
  const auto two = family::predict_two_valuation(u);
  ordered_json j;
  j["u"] = big(u);
  j["p"] = big(pair.parameter.p);
  j["parity"] = family::to_string(parity.parity);
  j["parity_basis"] = family::to_string(parity.provenance);
  j["two_adic"] = family::to_string(two.two_adic);
  j["two_adic_basis"] = family::to_string(two.provenance);
  j["eisenstein_n"] = big(family::eisenstein_n(pair.parameter.p).n);
  return j;
}

ordered_json cmd_moddeg(const Options& o) {
  if (o.u.empty() == o.p.empty()) throw DomainError("moddeg needs exactly one of --u and --p");
  std::string u_text = o.u;
  if (!o.p.empty()) {
    const mpz_class p = parse_integer(o.p, "--p");
    if (p <= 64 || !arith::is_prime(p)) throw DomainError("p = " + p.get_str() + " is not a prime of the form u^2 + 64");
    const mpz_class rest = p - 64;
    if (!mpz_perfect_square_p(rest.get_mpz_t())) throw DomainError("p = " + p.get_str() + " is not of the form u^2 + 64");
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    u_text = root.get_str();
  }
  mpz_class u;
  const auto pair = pair_from_u(u_text, u);
  modsym::DegreeOptions opts;
  opts.level_limit = o.level_limit;
  opts.dual_check = !o.no_dual;
  if (o.no_numeric) opts.numeric = modsym::NumericCheck::Never;
  const auto r = modsym::modular_degree(pair, opts);
  ordered_json j;
  j["u"] = big(u);
  j["p"] = big(pair.parameter.p);
  j["degree"] = big(r.m);
  j["factored"] = modsym::factored(r.m);
  j["parity"] = mpz_odd_p(r.m.get_mpz_t()) ? "odd" : "even";
  j["genus"] = r.genus;
  j["methods"] = r.methods;
  j["hecke_primes"] = r.hecke_primes;
  if (std::find(r.methods.begin(), r.methods.end(), "numeric") != r.methods.end()) {
    j["numeric_value"] = r.numeric_value;
    j["numeric_error"] = r.numeric_error;
  }
  return j;
}

ordered_json cmd_lfun(const Options& o) {
  mpz_class u;
  const auto pair = pair_from_u(o.u, u);
  const auto& e = o.curve == 0 ? pair.e0 : pair.e1;
  const auto l = analytic::lvalue_rank0(e, pair.parameter.p, o.tol, o.bits);
  ordered_json j;
  j["u"] = big(u);
  j["p"] = big(pair.parameter.p);
  j["curve"] = o.curve;
  j["lvalue"] = to_double(l.value);
  j["lvalue_digits"] = l.value.to_string(30);
  j["terms"] = l.terms;
  j["tail_bound"] = to_double(l.tail_bound);
  j["rounding_bound"] = to_double(l.rounding_bound);
  return j;
}

ordered_json cmd_sha(const Options& o) {
  mpz_class u;
  const auto pair = pair_from_u(o.u, u);
  const auto b = analytic::bsd_sha(pair, o.curve);
  ordered_json j;
  j["u"] = big(u);
  j["p"] = big(pair.parameter.p);
  j["curve"] = o.curve;
  j["sha"] = big(b.sha);
  j["sha_real"] = to_double(b.sha_real);
  j["residual"] = b.residual;
  j["perfect_square"] = b.perfect_square;
  j["lvalue"] = to_double(b.l_value);
  j["omega"] = to_double(b.omega);
  j["torsion"] = b.torsion;
  j["tamagawa"] = b.tamagawa;
  j["precision_bits"] = b.precision_bits;
  return j;
}

ordered_json cmd_sieve(const Options& o) {
  if (o.u_max < 3) throw DomainError("--u-max must be at least 3");
  const auto us = survey::sieve_ns_u(o.u_max);
  ordered_json j;
  j["u_max"] = o.u_max;
  j["count"] = us.size();
  j["u"] = us;
  return j;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neumann-Setzer elliptic curves: construction, modular degrees, L-values and Sha surveys", "nscurve"};
  app.require_subcommand(1);
  Options o;
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json, "Emit JSON"); };

  auto* curve = app.add_subcommand("curve", "Construct the curve pair for u");
  curve->add_option("--u", o.u, "Parameter u (either sign)")->required();
  json_flag(curve);

  auto* parity = app.add_subcommand("parity", "Predicted parity of the modular degree");
  parity->add_option("--u", o.u, "Parameter u")->required();
  json_flag(parity);

  auto* moddeg = app.add_subcommand("moddeg", "Exact modular degree of E0");
  moddeg->add_option("--u", o.u, "Parameter u");
  moddeg->add_option("--p", o.p, "Prime p = u^2 + 64");
  moddeg->add_option("--level-limit", o.level_limit, "Largest level accepted")->capture_default_str();
  moddeg->add_flag("--no-numeric", o.no_numeric, "Skip the numeric period cross-check");
  moddeg->add_flag("--no-dual", o.no_dual, "Skip the dual-functional cross-check");
  json_flag(moddeg);

  auto* lfun = app.add_subcommand("lfun", "L(E, 1)");
  lfun->add_option("--u", o.u, "Parameter u")->required();
  lfun->add_option("--curve", o.curve, "0 for E0, 1 for E1")->check(CLI::IsMember({0, 1}))->capture_default_str();
  lfun->add_option("--tol", o.tol, "Absolute error bound")->check(CLI::PositiveNumber)->capture_default_str();
  lfun->add_option("--bits", o.bits, "Working precision")->capture_default_str();
  json_flag(lfun);

  auto* sha = app.add_subcommand("sha", "Conjectural order of Sha");
  sha->add_option("--u", o.u, "Parameter u")->required();
  sha->add_option("--curve", o.curve, "0 for E0, 1 for E1")->check(CLI::IsMember({0, 1}))->capture_default_str();
  json_flag(sha);

  auto* sieve = app.add_subcommand("sieve", "Positive u <= u_max with u^2 + 64 prime");
  sieve->add_option("--u-max", o.u_max, "Upper bound")->required();
  json_flag(sieve);

  auto* verify = app.add_subcommand("verify-parity", "Exact degrees against the parity prediction");
  verify->add_option("--u-max", o.u_max, "Upper bound")->required();
  verify->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--resume", o.resume, "Checkpoint file");
  json_flag(verify);

  auto* survey_cmd = app.add_subcommand("survey-sha", "Frequency of small primes dividing Sha");
  survey_cmd->add_option("--u-max", o.u_max, "Upper bound")->required();
  survey_cmd->add_option("--out", o.out, "Output table")->required();
  survey_cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  survey_cmd->add_option("--json-out", o.json_out, "Also write the JSON report here");
  survey_cmd->add_option("--resume", o.resume, "Checkpoint file (created when missing)");
  survey_cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  json_flag(survey_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kDomainError;
  }

  std::ostringstream buffer;
  try {
    if (curve->parsed()) emit(cmd_curve(o), o.json, buffer);
    if (parity->parsed()) emit(cmd_parity(o), o.json, buffer);
    if (moddeg->parsed()) emit(cmd_moddeg(o), o.json, buffer);
    if (lfun->parsed()) emit(cmd_lfun(o), o.json, buffer);
    if (sha->parsed()) emit(cmd_sha(o), o.json, buffer);
    if (sieve->parsed()) emit(cmd_sieve(o), o.json, buffer);
    if (verify->parsed()) {
      if (o.u_max < 3) throw DomainError("--u-max must be at least 3");
      survey::SurveyConfig cfg;
      cfg.u_max = o.u_max;
      cfg.mode = survey::SurveyMode::Parity;
      cfg.workers = o.workers;
      if (!o.resume.empty()) cfg.checkpoint = o.resume;
      const auto report = survey::run_parity_survey(cfg);
      buffer << (o.json ? survey::to_json(report) : survey::to_text(report));
      if (report.parity_mismatches > 0) {
        out << buffer.str();
        err << "parity prediction failed for " << report.parity_mismatches << " curve(s)\n";
        return kCrossCheckFailure;
      }
    }
    if (survey_cmd->parsed()) {
      survey::SurveyConfig cfg;
      cfg.u_max = o.u_max;
      cfg.workers = o.workers;
      if (!o.resume.empty()) cfg.checkpoint = o.resume;
      const auto table = survey::run_sha_survey(cfg);
      write_file(o.out, o.format == "csv" ? survey::to_csv(table) : survey::to_json(table));
      if (!o.json_out.empty()) write_file(o.json_out, survey::to_json(table));
      ordered_json j;
      j["u_max"] = o.u_max;
      j["curves"] = table.total.count;
      j["excluded"] = table.excluded;
      j["complete"] = table.complete;
      j["out"] = o.out;
      emit(j, o.json, buffer);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const CrossCheckError& e) {
    err << "cross-check failed: " << e.what() << "\n";
    return kCrossCheckFailure;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return kCrossCheckFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kCrossCheckFailure;
  }
  out << buffer.str();
  return kSuccess;
}

}  // namespace nscurve::cli
