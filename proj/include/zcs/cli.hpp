#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zcs/json_io.hpp"
#include "zcs/local.hpp"
#include "zcs/period_index.hpp"
#include "zcs/sieve.hpp"

namespace zcs::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInvalidCertificate = 1, kUsage = 2, kPrecision = 3, kObstruction = 10 };

inline int exit_code_for(ErrorKind k) { return k == ErrorKind::PrecisionExhausted ? kPrecision : kUsage; }

inline json big_triple(const std::array<BigInt, 3>& p) {
  return json::array({big_to_json(p[0]), big_to_json(p[1]), big_to_json(p[2])});
}

inline json place_json(const Place& v) { return v.is_real() ? json("real") : json(v.p); }

inline json local_report_json(const LocalReport& r) {
  json j = {{"place", place_json(r.place)}, {"soluble", r.soluble}, {"method", r.method}};
  if (!r.place.is_real()) j["precision"] = r.precision;
  if (r.witness) {
    j["witness"] = big_triple(*r.witness);
    j["witness_precision"] = r.witness_precision;
    j["lift_valuation"] = r.lift_valuation;
  }
  return j;
}

inline json local_index_json(const LocalIndexReport& r) {
  json d = json::array();
  for (const auto& w : r.degrees) d.push_back({{"degree", w.degree}, {"witness", w.description}, {"unramified", w.unramified}});
  return {{"prime", r.place.p},
          {"index", r.index},
          {"degrees", d},
          {"unramified_only", r.unramified_only},
          {"max_degree_searched", r.max_degree_searched}};
}

inline json els_json(const CurveModel& curve, const ElsReport& r) {
  json places = json::array();
  for (const auto& p : r.places) places.push_back(local_report_json(p));
  json idx = json::array();
  for (u64 p : r.bad_primes) idx.push_back(local_index_json(local_index(curve, p)));
  return {{"soluble", r.soluble},
          {"places", places},
          {"bad_primes", r.bad_primes},
          {"explicit_bound", r.weil_bound},
          {"above_bound", "good primes above the bound are soluble by the Weil bound"},
          {"local_indices", idx},
          {"note", "closed-point degree search capped at min(2g + 2, 4); degrees beyond are asserted irrelevant"}};
}

inline json index_json(const IndexReport& r) {
  json w = json::array(), s = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"degree", x.degree}, {"witness", x.description}});
  for (const auto& x : r.structural) s.push_back({{"divides", x.value}, {"rule", x.rule}});
  return {{"curve", r.curve_kind},
          {"genus", r.genus},
          {"height_bound", r.height_bound},
          {"witnesses", w},
          {"structural", s},
          {"upper_bound", r.upper_bound},
          {"rational_point_found", r.rational_point_found}};
}

inline json relation_json(const PeriodIndexRelation& r) {
  json c = json::array();
  for (const auto& x : r.claims) c.push_back({{"id", x.id}, {"statement", x.statement}, {"status", x.status}, {"rule", x.rule}});
  json j = {{"claims", c}, {"index_upper_bound", r.index_upper_bound}};
  j["index"] = r.index ? json(*r.index) : json(nullptr);
  j["period"] = r.period ? json(*r.period) : json(nullptr);
  return j;
}

inline json conic_json(const ConicDecision& d) {
  json s = json::array();
  for (const auto& [v, h] : d.symbols) s.push_back({{"place", place_json(v)}, {"symbol", h}});
  json j = {{"soluble", d.soluble}, {"hilbert_symbols", s}};
  j["witness"] = d.witness ? big_triple(*d.witness) : json(nullptr);
  json o = json::array();
  for (const auto& v : d.obstructions) o.push_back(place_json(v));
  j["obstructions"] = o;
  return j;
}

struct Options {
  std::string format = "json";
  unsigned threads = 0;
  std::string curve_path, config_path, cert_path, out_path;
  int precision = 0;
  u64 bound = 0;
  u64 height = 0;
  std::vector<long long> coeffs;
  std::vector<u64> primes;
  u64 modulus = 0;
  u64 prime_count = 0;
  std::string mode;
  int genus = -1;
  std::vector<u64> sha_zero;
  bool assume_local = false;
};

/// A curve file, or a sieve configuration whose "curve" entry is used.
inline CurveModel load_curve(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("curve") && !j.contains("type")) return parse_curve(j.at("curve"));
  return parse_curve(j);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int emit(const std::string& command, const json& inputs, const json& result, const std::vector<std::string>& text,
           int code) {
    if (opt_.format == "text") {
      for (const auto& line : text) out_ << line << "\n";
      return code;
    }
    json report = {{"tool", "zcs"},
                   {"version", kVersion},
                   {"command", command},
                   {"input_hash", sha256_hex(inputs.dump())},
                   {"assumptions", assumptions(command)},
                   {"result", result}};
    out_ << report.dump(2) << "\n";
    return code;
  }

  int error(const std::string& command, const Error& e) {
    const int code = exit_code_for(e.kind());
    if (opt_.format == "text") {
      err_ << "error: " << e.what() << "\n";
      return code;
    }
    json report = {{"tool", "zcs"},
                   {"version", kVersion},
                   {"command", command},
                   {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    out_ << report.dump(2) << "\n";
    return code;
  }

  static std::vector<std::string> assumptions(const std::string& command) {
    if (command == "sieve" || command == "verify-cert") return sieve_assumptions();
    if (command == "corollary") return {"Sha[p] = 0 flags are user assertions, not verified"};
    if (command == "period" || command == "index")
      return {"index values other than 1 are upper bounds, never asserted exactly"};
    return {};
  }

  unsigned threads() const { return opt_.threads ? opt_.threads : default_threads(); }

  int local() {
    const CurveModel curve = load_curve(opt_.curve_path);
    if (opt_.precision < 0) fail(ErrorKind::ConfigError, "--precision must be >= 1");
    ElsReport r;
    if (opt_.precision > 0) {
      r.bad_primes = bad_primes(curve);
      r.weil_bound = std::max(weil_threshold(genus(curve)), opt_.bound);
      r.places.push_back(real_report(curve));
      std::set<u64> ps(r.bad_primes.begin(), r.bad_primes.end());
      for (u64 p : primes_up_to(r.weil_bound)) ps.insert(p);
      for (u64 p : ps) r.places.push_back(qp_soluble(curve, p, opt_.precision));
      for (const auto& x : r.places) r.soluble = r.soluble && x.soluble;
    } else {
      r = everywhere_locally_soluble(curve, opt_.bound);
    }
    json inputs = {{"curve", curve_to_json(curve)}, {"bound", opt_.bound}, {"precision", opt_.precision}};
    std::vector<std::string> text{std::string("everywhere locally soluble: ") + (r.soluble ? "yes" : "no")};
    for (const auto& p : r.places)
      text.push_back("  " + p.place.str() + ": " + (p.soluble ? "soluble" : "insoluble") + " (" + p.method + ")");
    text.push_back("  good primes above " + std::to_string(r.weil_bound) + ": soluble by the Weil bound");
    return emit("local", inputs, els_json(curve, r), text, r.soluble ? kOk : kObstruction);
  }

  int index() {
    const CurveModel curve = load_curve(opt_.curve_path);
    const u64 h = opt_.height ? opt_.height : default_height(curve);
    auto r = index_upper_bound(curve, h, threads());
    json inputs = {{"curve", curve_to_json(curve)}, {"height", h}};
    std::vector<std::string> text{"index upper bound: " + std::to_string(r.upper_bound)};
    for (const auto& w : r.witnesses) text.push_back("  degree " + std::to_string(w.degree) + ": " + w.description);
    for (const auto& s : r.structural) text.push_back("  divides " + std::to_string(s.value) + " (" + s.rule + ")");
    return emit("index", inputs, index_json(r), text, kOk);
  }

  int period() {
    const CurveModel curve = load_curve(opt_.curve_path);
    const u64 h = opt_.height ? opt_.height : default_height(curve);
    auto els = everywhere_locally_soluble(curve, opt_.bound);
    auto idx = index_upper_bound(curve, h, threads());
    auto rel = period_report(curve, els, idx);
    json inputs = {{"curve", curve_to_json(curve)}, {"height", h}, {"bound", opt_.bound}};
    json result = relation_json(rel);
    result["everywhere_locally_soluble"] = els.soluble;
    result["index_report"] = index_json(idx);
    std::vector<std::string> text;
    for (const auto& c : rel.claims) text.push_back("[" + c.status + "] " + c.statement);
    return emit("period", inputs, result, text, kOk);
  }

  int conic() {
    if (opt_.coeffs.size() != 3) fail(ErrorKind::ConfigError, "--coeffs needs exactly three integers a b c");
    auto d = conic_has_rational_point(opt_.coeffs[0], opt_.coeffs[1], opt_.coeffs[2]);
    json inputs = {{"coeffs", opt_.coeffs}};
    std::vector<std::string> text;
    if (d.soluble)
      text.push_back("rational point: " + detail::triple_str(*d.witness));
    else
    {
      std::string at;
      for (const auto& v : d.obstructions) at += (at.empty() ? "" : ", ") + v.str();
      text.push_back("no rational point: local obstruction at " + at);
    }
    return emit("conic", inputs, conic_json(d), text, d.soluble ? kOk : kObstruction);
  }

  int corollary() {
    int g = opt_.genus;
    bool soluble = opt_.assume_local;
    json inputs = {{"sha_zero", opt_.sha_zero}};
    if (!opt_.curve_path.empty()) {
      const CurveModel curve = load_curve(opt_.curve_path);
      g = genus(curve);
      soluble = everywhere_locally_soluble(curve, opt_.bound).soluble;
      inputs["curve"] = curve_to_json(curve);
    } else {
      if (g < 0) fail(ErrorKind::ConfigError, "give --curve or --genus");
      inputs["genus"] = g;
      inputs["assume_local_solubility"] = soluble;
    }
    if (!soluble && g >= 2) {
      Error e(ErrorKind::HypothesisUnmet, "the curve is not everywhere locally soluble");
      if (opt_.format == "text") {
        err_ << "hypothesis unmet: " << e.what() << "\n";
        return kObstruction;
      }
      (void)error("corollary", e);
      return kObstruction;
    }
    auto r = sha_corollary_report(g, soluble, std::set<u64>(opt_.sha_zero.begin(), opt_.sha_zero.end()));
    json result = {{"conclusion", r.conclusion},
                   {"claim", r.claim},
                   {"status", r.status},
                   {"required_primes", r.required_primes},
                   {"missing_primes", r.missing_primes},
                   {"genus", g}};
    return emit("corollary", inputs, result, {"[" + r.status + "] " + r.claim}, kOk);
  }

  int sieve() {
    json cfgj = read_json_file(opt_.config_path);
    if (!cfgj.is_object()) fail(ErrorKind::ParseError, "config: expected an object");
    if (opt_.modulus) cfgj["modulus"] = opt_.modulus;
    if (!opt_.primes.empty()) cfgj["primes"] = opt_.primes;
    if (opt_.prime_count) cfgj["prime_count"] = opt_.prime_count;
    if (!opt_.mode.empty()) cfgj["mode"] = opt_.mode;
    SieveConfig cfg = parse_sieve_config(cfgj);
    auto cert = sieve_run(cfg, threads());
    json cj = certificate_to_json(cert);
    if (!opt_.out_path.empty()) {
      std::ofstream f(opt_.out_path);
      if (!f) fail(ErrorKind::IoError, "cannot write " + opt_.out_path);
      f << cj.dump(2) << "\n";
    }
    std::vector<std::string> text{"verdict: " + cj["verdict"]["status"].get<std::string>() + " (" +
                                  std::to_string(cert.survivors.size()) + " surviving cosets)"};
    for (const auto& s : cert.steps)
      text.push_back("  p = " + std::to_string(s.prime) + ": #J = " + std::to_string(s.jacobian_order) +
                     ", |W_p| = " + std::to_string(s.admissible.size()) + ", running = " +
                     std::to_string(s.running.size()));
    return emit("sieve", cert.config, cj, text, cert.empty() ? kObstruction : kOk);
  }

  int verify_cert() {
    json c = read_json_file(opt_.cert_path);
    if (c.is_object() && c.contains("result") && c.contains("tool")) c = c.at("result");
    VerifyResult v = verify_certificate(c, threads());
    if (v.ok && !opt_.config_path.empty()) {
      json cfgj = read_json_file(opt_.config_path);
      SieveConfig cfg = parse_sieve_config(cfgj);
      if (input_hash(config_echo(cfg, resolve_primes(cfg))) != c.value("input_hash", std::string()))
        v = {false, "/input_hash (does not match --config)"};
    }
    json result = {{"valid", v.ok}};
    result["mismatch"] = v.ok ? json(nullptr) : json(v.mismatch);
    json inputs = c.is_object() && c.contains("input_hash") ? c.at("input_hash") : json(nullptr);
    std::vector<std::string> text{v.ok ? "certificate valid" : "certificate invalid at " + v.mismatch};
    return emit("verify-cert", inputs, result, text, v.ok ? kOk : kInvalidCertificate);
  }

  static u64 default_height(const CurveModel& curve) {
    if (auto* k = std::get_if<PlaneCubic>(&curve)) return k->diagonal_in_z() ? 10000 : 60;
    if (std::holds_alternative<Conic>(curve)) return 1000;
    return 200;
  }

  int run(std::vector<std::string> args) {
    CLI::App app{"zcs: period/index invariants and Mordell-Weil sieve certificates for curves over Q"};
    app.require_subcommand(1);
    app.add_option("--format", opt_.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--threads", opt_.threads, "worker threads (default: ZCS_THREADS or hardware)");

    auto* local = app.add_subcommand("local", "real and p-adic solubility of a curve");
    local->add_option("--curve", opt_.curve_path, "curve JSON")->required();
    local->add_option("--precision", opt_.precision, "Hensel search depth (default 2 v_p(disc) + 3)");
    local->add_option("--bound", opt_.bound, "check every good prime up to this bound explicitly");

    auto* sieve = app.add_subcommand("sieve", "Mordell-Weil sieve with certificate");
    sieve->add_option("--config", opt_.config_path, "sieve configuration JSON")->required();
    sieve->add_option("--modulus", opt_.modulus, "override modulus B");
    sieve->add_option("--primes", opt_.primes, "override sieve primes");
    sieve->add_option("--prime-count", opt_.prime_count, "number of default primes");
    sieve->add_option("--mode", opt_.mode, "points or zero_cycles")->check(CLI::IsMember({"points", "zero_cycles"}));
    sieve->add_option("--out", opt_.out_path, "also write the bare certificate here");

    auto* index = app.add_subcommand("index", "upper bound for the index");
    index->add_option("--curve", opt_.curve_path, "curve JSON")->required();
    index->add_option("--height", opt_.height, "rational point search height");

    auto* period = app.add_subcommand("period", "period/index relations");
    period->add_option("--curve", opt_.curve_path, "curve JSON")->required();
    period->add_option("--height", opt_.height, "rational point search height");
    period->add_option("--bound", opt_.bound, "explicit prime bound for local checks");

    auto* conic = app.add_subcommand("conic", "rational points on a x^2 + b y^2 = c z^2");
    conic->add_option("--coeffs", opt_.coeffs, "a b c")->required()->expected(3);

    auto* cor = app.add_subcommand("corollary", "rational 0-cycle of degree 1 from Sha[p] = 0 assumptions");
    cor->add_option("--curve", opt_.curve_path, "curve JSON");
    cor->add_option("--genus", opt_.genus, "genus, when no curve is given");
    cor->add_flag("--assume-local-solubility", opt_.assume_local, "with --genus: treat as everywhere locally soluble");
    cor->add_option("--sha-zero", opt_.sha_zero, "primes p with Sha[p] = 0 asserted");
    cor->add_option("--bound", opt_.bound, "explicit prime bound for local checks");

    auto* verify = app.add_subcommand("verify-cert", "recompute and check a sieve certificate");
    verify->add_option("--cert", opt_.cert_path, "certificate (or sieve report) JSON")->required();
    verify->add_option("--config", opt_.config_path, "refuse if the certificate was made from a different config");

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n" << app.help();
      return kUsage;
    }

    std::string command;
    for (auto* s : app.get_subcommands()) command = s->get_name();
    try {
      if (command == "local") return this->local();
      if (command == "sieve") return this->sieve();
      if (command == "index") return this->index();
      if (command == "period") return this->period();
      if (command == "conic") return this->conic();
      if (command == "corollary") return this->corollary();
      if (command == "verify-cert") return this->verify_cert();
    } catch (const Error& e) {
      return error(command, e);
    } catch (const std::exception& e) {
      return error(command, Error(ErrorKind::IoError, e.what()));
    }
    return kUsage;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Options opt_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace zcs::cli
