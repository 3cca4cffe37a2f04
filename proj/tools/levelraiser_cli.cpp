// levelraiser command-line tool. Every subcommand prints one JSON object on
// stdout: {command, status, payload | error, timing_ms}. Exit codes: 0 ok,
// 1 domain error, 2 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "levelraiser/coeff_arith.hpp"
#include "levelraiser/ec_arith.hpp"
#include "levelraiser/error.hpp"
#include "levelraiser/family.hpp"
#include "levelraiser/json_io.hpp"
#include "levelraiser/levelraise.hpp"
#include "levelraiser/lmfdb_client.hpp"
#include "levelraiser/modsym.hpp"
#include "levelraiser/reports.hpp"

using namespace levelraiser;
using json_io::json;
using namespace levelraiser::reports;

namespace {

struct Globals {
  bool pretty = false;
  unsigned jobs = 1;
};

// Thrown by handlers that computed a payload but must still fail.
struct DomainFailure {
  ErrorKind kind;
  std::string message;
  json payload;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

std::pair<Integer, Integer> parse_range(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos) throw Error(ErrorKind::InvalidInput, "range must look like LO..HI");
  return {parse_integer(text.substr(0, pos)), parse_integer(text.substr(pos + 2))};
}

void print_pretty(const json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_pretty(value, indent + "  ");
    } else {
      std::cout << indent << key << ": " << value.dump() << "\n";
    }
  }
}

void emit(const Globals& g, const json& out) {
  if (g.pretty) {
    print_pretty(out);
  } else {
    std::cout << out.dump() << "\n";
  }
}

std::optional<std::int64_t> fixture_conductor(const ec::EllipticCurve& e) {
  auto options = lmfdb::default_options();
  options.offline = true;
  try {
    return lmfdb::fetch_curve(e.to_string(), options).conductor;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level raising planner and verifier for elliptic-curve newforms"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--pretty", g.pretty, "Human-readable output");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));

  std::string curve, poly, label, scan, hecke, file;
  std::int64_t p = 0, bound = 0, ell = 0, level = 0, B = 30, q_bound = 200, conductor = 0, crosscheck = 0;
  std::int64_t new_p = 0;
  int eps = 0, n = 0;
  std::string k;
  bool avoid_p = false, try_lower = false, offline = false, use_new = false;

  auto* ap_cmd = app.add_subcommand("ap", "Traces of Frobenius a_p");
  ap_cmd->add_option("--curve", curve, "a1,a2,a3,a4,a6")->required();
  auto* ap_p = ap_cmd->add_option("--p", p, "Single prime");
  auto* ap_b = ap_cmd->add_option("--bound", bound, "All primes up to bound");
  ap_p->excludes(ap_b);

  auto* plan_cmd = app.add_subcommand("plan", "Congruence characteristics for (E, p)");
  plan_cmd->add_option("--curve", curve)->required();
  plan_cmd->add_option("--p", p)->required();
  plan_cmd->add_flag("--avoid-p", avoid_p);

  auto* coeff_cmd = app.add_subcommand("coeff", "Norms and characteristics of an algebraic a_p");
  coeff_cmd->add_option("--p", p)->required();
  coeff_cmd->add_option("--poly", poly, "Characteristic polynomial, constant term first")->required();

  auto* cn_cmd = app.add_subcommand("cn-bound", "Upper bound for C_n");
  cn_cmd->add_option("--n", n)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Search for the congruent eigensystem at level N p");
  verify_cmd->add_option("--curve", curve)->required();
  verify_cmd->add_option("--p", p)->required();
  verify_cmd->add_option("--ell", ell)->required();
  verify_cmd->add_option("--eps", eps)->required();
  verify_cmd->add_option("--B", B)->capture_default_str();
  verify_cmd->add_option("--conductor", conductor, "Conductor of E (else fixture or semistable rule)");
  verify_cmd->add_flag("--try-lower", try_lower);

  auto* reverify_cmd = app.add_subcommand("reverify", "Re-check a certificate JSON file");
  reverify_cmd->add_option("--file", file)->required();

  auto* check_cmd = app.add_subcommand("check", "Hypothesis report for E");
  check_cmd->add_option("--curve", curve)->required();
  check_cmd->add_option("--q-bound", q_bound)->capture_default_str();
  check_cmd->add_flag("--offline", offline);

  auto* modsym_cmd = app.add_subcommand("modsym", "Modular symbols for Gamma_0(M)");
  modsym_cmd->add_option("--level", level)->required();
  modsym_cmd->add_option("--hecke", hecke, "Comma-separated primes");
  modsym_cmd->add_flag("--new", use_new, "Act on the new subspace instead of the cuspidal one");
  modsym_cmd->add_option("--p", new_p, "Raised prime (must divide the level)");

  auto* family_cmd = app.add_subcommand("family", "Members of the E_k family");
  auto* fam_k = family_cmd->add_option("--k", k);
  auto* fam_scan = family_cmd->add_option("--scan", scan, "LO..HI");
  fam_k->excludes(fam_scan);

  auto* aux_cmd = app.add_subcommand("aux-primes", "Auxiliary primes for (E, p)");
  aux_cmd->add_option("--curve", curve)->required();
  aux_cmd->add_option("--p", p)->required();
  aux_cmd->add_option("--bound", bound)->required();

  auto* cong_cmd = app.add_subcommand("conggcong", "Full-congruence bookkeeping at p");
  cong_cmd->add_option("--curve", curve)->required();
  cong_cmd->add_option("--p", p)->required();
  cong_cmd->add_option("--ell", ell)->required();
  cong_cmd->add_option("--eps", eps)->required();

  auto* lmfdb_cmd = app.add_subcommand("lmfdb", "Fetch an LMFDB curve record");
  lmfdb_cmd->add_option("--label", label, "Label or a-invariants")->required();
  lmfdb_cmd->add_flag("--offline", offline);
  lmfdb_cmd->add_option("--crosscheck", crosscheck, "Compare a_p up to this bound");

  app.add_subcommand("verify-1427", "Point count and Frobenius certificate over F_1427");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  json payload;
  try {
    if (command == "ap") {
      const auto e = ec::minimal_model(ec::EllipticCurve::parse(curve));
      if (*ap_p) {
        payload = {{"p", p}, {"ap", ec::ap(e, p)}};
      } else if (*ap_b) {
        auto table = ec::ap_range(e, bound, g.jobs);
        json good = json::array();
        for (const auto& [q, a] : table.good) good.push_back({q, a});
        payload = {{"bound", bound}, {"ap", good}, {"bad", table.bad}};
      } else {
        throw Error(ErrorKind::InvalidInput, "ap needs --p or --bound");
      }
      payload["curve"] = e.to_string();
    } else if (command == "plan") {
      payload = plan_json(raise::plan(ec::EllipticCurve::parse(curve), p, avoid_p));
    } else if (command == "coeff") {
      coeff::AlgebraicCoefficient a(p, IntPoly::parse(poly));
      json chars = json::array();
      for (const auto& c : coeff::congruence_characteristics(a)) chars.push_back(json_io::characteristic(c));
      json avoiding = json::array();
      for (const auto& l : coeff::avoiding_p_characteristics(a)) avoiding.push_back(json_io::integer(l));
      auto report = coeff::validate(a);
      const Integer t = p + 1;
      payload = {{"p", p},
                 {"charpoly", a.charpoly().to_string()},
                 {"norm_minus", json_io::integer(coeff::norm_shift(a, t, coeff::Shift::Minus))},
                 {"norm_plus", json_io::integer(coeff::norm_shift(a, t, coeff::Shift::Plus))},
                 {"unit_obstructed", coeff::is_unit_obstructed(a)},
                 {"characteristics", chars},
                 {"avoiding_p", avoiding},
                 {"valid", report.ok},
                 {"violation", report.violation}};
    } else if (command == "cn-bound") {
      payload = {{"n", n}, {"generic", json_io::rational(coeff::cn_bound(n))},
                 {"refined", n == 1 ? json(coeff::kRefinedC1) : json(nullptr)}};
    } else if (command == "verify") {
      const auto e = ec::EllipticCurve::parse(curve);
      raise::VerifyOptions options;
      options.B = B;
      options.try_lower_levels = try_lower;
      if (conductor > 0) {
        options.conductor = conductor;
      } else {
        options.conductor = fixture_conductor(ec::minimal_model(e));
      }
      auto cert = raise::verify(e, p, ell, eps, options);
      payload = raise::certificate_json(cert);
      if (cert.status == raise::CertificateStatus::NotFound) {
        throw DomainFailure{ErrorKind::NotFound, "no congruent eigensystem at levels tried", payload};
      }
    } else if (command == "reverify") {
      std::ifstream in(file);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + file);
      json j = json::parse(in);
      if (j.contains("payload")) j = j["payload"];
      bool ok = raise::reverify(raise::parse_certificate(j));
      payload = {{"file", file}, {"reverified", ok}};
      if (!ok) throw DomainFailure{ErrorKind::CertificateFailure, "certificate does not re-verify", payload};
    } else if (command == "check") {
      const auto e = ec::EllipticCurve::parse(curve);
      raise::HypothesisOptions options;
      options.q_bound = q_bound;
      json lmfdb_note = nullptr;
      auto client = lmfdb::default_options();
      client.offline = offline;
      try {
        auto record = lmfdb::fetch_curve(ec::minimal_model(e).to_string(), client);
        options.isogeny_class_size = record.isogeny_class_size;
        lmfdb_note = {{"label", record.label}, {"source", record.source}};
      } catch (const Error& err) {
        lmfdb_note = {{"error", std::string(err.name())}, {"message", err.what()}};
      }
      payload = hypotheses_json(raise::check_hypotheses(e, options));
      payload["lmfdb"] = lmfdb_note;
    } else if (command == "modsym") {
      auto sp = modsym::space(level);
      payload = {{"level", level},
                 {"dims", {{"full", sp->dimension()}, {"cuspidal", sp->cuspidal_dimension()}}},
                 {"cusps", sp->cusp_classes().size()},
                 {"genus", sp->genus().genus}};
      const QMatrix* subspace = &sp->cuspidal_basis();
      QMatrix v_new;
      if (use_new || new_p) {
        if (new_p && level % new_p != 0) throw Error(ErrorKind::LevelMismatch, "--p must divide the level");
        v_new = modsym::new_subspace(*sp);
        payload["dims"]["new"] = v_new.rows();
        if (new_p) payload["p"] = new_p;
        subspace = &v_new;
      }
      json ops = json::array();
      for (std::int64_t q : parse_list(hecke)) {
        auto cp = modsym::integral_charpoly(sp->hecke_on(*subspace, q));
        ops.push_back(json{{"q", q}, {"charpoly", json_io::polynomial(cp)}});
      }
      payload["subspace"] = subspace == &v_new ? "new" : "cuspidal";
      payload["operators"] = ops;
    } else if (command == "family") {
      if (*fam_k) {
        payload = member_json(family::family_member(parse_integer(k), true));
      } else if (*fam_scan) {
        auto [lo, hi] = parse_range(scan);
        auto ks = family::family_scan(lo, hi);
        std::vector<json> results(ks.size());
        std::mutex mutex;
        std::size_t next = 0;
        auto worker = [&] {
          for (;;) {
            std::size_t i;
            {
              std::lock_guard<std::mutex> lock(mutex);
              if (next >= ks.size()) return;
              i = next++;
            }
            try {
              results[i] = member_json(family::family_member(ks[i]));
            } catch (const Error& err) {
              results[i] = {{"k", json_io::integer(ks[i])}, {"error", std::string(err.name())}};
            }
          }
        };
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < g.jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        payload = {{"range", scan}, {"count", ks.size()}, {"members", results}};
      } else {
        throw Error(ErrorKind::InvalidInput, "family needs --k or --scan");
      }
    } else if (command == "aux-primes") {
      auto r = raise::aux_primes(ec::EllipticCurve::parse(curve), p, bound);
      payload = {{"p", r.p}, {"bound", r.bound}, {"primes", r.primes}, {"count", r.primes.size()},
                 {"density", r.density}};
    } else if (command == "conggcong") {
      auto r = raise::conggcong_check(ec::EllipticCurve::parse(curve), p, ell, eps);
      payload = {{"p", r.p},
                 {"ell", r.ell},
                 {"eps", r.eps},
                 {"ap_residue", r.ap_residue},
                 {"eps_residue", r.eps_residue},
                 {"ap_congruent_to_eps", r.ap_congruent_to_eps},
                 {"ell_is_p", r.ell_is_p},
                 {"full_congruence_possible", r.full_congruence_possible},
                 {"branch", r.branch}};
    } else if (command == "lmfdb") {
      auto options = lmfdb::default_options();
      options.offline = offline;
      auto record = lmfdb::fetch_curve(label, options);
      payload = json_io::record(record);
      if (crosscheck > 0) {
        auto report = lmfdb::crosscheck_ap(record.curve(), record, crosscheck);
        payload["crosscheck"] = {{"bound", report.bound}, {"compared", report.compared}, {"ok", true}};
      }
    } else if (command == "verify-1427") {
      auto cert = family::compute_1427();
      payload = certificate_1427_json(cert);
      try {
        family::verify_1427();
      } catch (const Error& err) {
        throw DomainFailure{err.kind(), err.what(), payload};
      }
    }
  } catch (const DomainFailure& f) {
    emit(g, {{"command", command},
             {"status", "error"},
             {"error", std::string(error_name(f.kind))},
             {"message", f.message},
             {"payload", f.payload},
             {"timing_ms", elapsed()}});
    return 1;
  } catch (const Error& e) {
    emit(g, {{"command", command},
             {"status", "error"},
             {"error", std::string(e.name())},
             {"message", e.what()},
             {"timing_ms", elapsed()}});
    return 1;
  } catch (const json::exception& e) {
    emit(g, {{"command", command}, {"status", "error"}, {"error", "InvalidInput"}, {"message", e.what()},
             {"timing_ms", elapsed()}});
    return 1;
  }

  emit(g, {{"command", command}, {"status", "ok"}, {"payload", payload}, {"timing_ms", elapsed()}});
  return 0;
}
