// Python bindings. Results cross the boundary as JSON text; the package
// __init__ decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levelraiser/coeff_arith.hpp"
#include "levelraiser/ec_arith.hpp"
#include "levelraiser/error.hpp"
#include "levelraiser/family.hpp"
#include "levelraiser/json_io.hpp"
#include "levelraiser/levelraise.hpp"
#include "levelraiser/lmfdb_client.hpp"
#include "levelraiser/modsym.hpp"
#include "levelraiser/reports.hpp"

namespace py = pybind11;
using namespace levelraiser;
using json_io::json;

namespace {

ec::EllipticCurve curve_of(const std::string& text) { return ec::EllipticCurve::parse(text); }

std::string ap(const std::string& curve, std::int64_t p) {
  const auto e = ec::minimal_model(curve_of(curve));
  return json{{"curve", e.to_string()}, {"p", p}, {"ap", ec::ap(e, p)}}.dump();
}

std::string plan(const std::string& curve, std::int64_t p, bool avoid_p) {
  return reports::plan_json(raise::plan(curve_of(curve), p, avoid_p)).dump();
}

std::string coefficient(std::int64_t p, const std::string& poly) {
  coeff::AlgebraicCoefficient a(p, IntPoly::parse(poly));
  json chars = json::array();
  for (const auto& c : coeff::congruence_characteristics(a)) chars.push_back(json_io::characteristic(c));
  json avoiding = json::array();
  for (const auto& l : coeff::avoiding_p_characteristics(a)) avoiding.push_back(json_io::integer(l));
  const auto report = coeff::validate(a);
  return json{{"p", p},
              {"charpoly", a.charpoly().to_string()},
              {"unit_obstructed", coeff::is_unit_obstructed(a)},
              {"characteristics", chars},
              {"avoiding_p", avoiding},
              {"valid", report.ok},
              {"violation", report.violation}}
      .dump();
}

std::string cn_bound(int n) { return json_io::rational(coeff::cn_bound(n)).dump(); }

std::string verify(const std::string& curve, std::int64_t p, std::int64_t ell, int eps, std::int64_t B,
                   std::optional<std::int64_t> conductor, bool try_lower_levels) {
  raise::VerifyOptions options;
  options.B = B;
  options.conductor = conductor;
  options.try_lower_levels = try_lower_levels;
  return raise::certificate_json(raise::verify(curve_of(curve), p, ell, eps, options)).dump();
}

bool reverify(const std::string& certificate) {
  return raise::reverify(raise::parse_certificate(json::parse(certificate)));
}

std::string check(const std::string& curve, std::int64_t q_bound, std::optional<int> isogeny_class_size) {
  raise::HypothesisOptions options;
  options.q_bound = q_bound;
  options.isogeny_class_size = isogeny_class_size;
  return reports::hypotheses_json(raise::check_hypotheses(curve_of(curve), options)).dump();
}

std::string modsym_info(std::int64_t level, const std::vector<std::int64_t>& hecke, bool use_new) {
  const auto sp = modsym::space(level);
  json out = {{"level", level},
              {"dims", {{"full", sp->dimension()}, {"cuspidal", sp->cuspidal_dimension()}}},
              {"genus", sp->genus().genus}};
  QMatrix subspace = sp->cuspidal_basis();
  if (use_new) {
    subspace = modsym::new_subspace(*sp);
    out["dims"]["new"] = subspace.rows();
  }
  json ops = json::array();
  for (std::int64_t q : hecke)
    ops.push_back({{"q", q}, {"charpoly", json_io::polynomial(modsym::integral_charpoly(sp->hecke_on(subspace, q)))}});
  out["operators"] = ops;
  return out.dump();
}

std::string family_member(const std::string& k) {
  return reports::member_json(family::family_member(parse_integer(k), true)).dump();
}

std::vector<std::string> family_scan(const std::string& lo, const std::string& hi) {
  std::vector<std::string> out;
  for (const auto& k : family::family_scan(parse_integer(lo), parse_integer(hi))) out.push_back(to_string(k));
  return out;
}

std::string certificate_1427() { return reports::certificate_1427_json(family::compute_1427()).dump(); }

std::vector<std::int64_t> aux_primes(const std::string& curve, std::int64_t p, std::int64_t bound) {
  return raise::aux_primes(curve_of(curve), p, bound).primes;
}

std::string lmfdb_fetch(const std::string& label, bool offline) {
  auto options = lmfdb::default_options();
  options.offline = offline;
  return json_io::record(lmfdb::fetch_curve(label, options)).dump();
}

}  // namespace

PYBIND11_MODULE(_levelraiser, m) {
  static py::exception<Error> error_type(m, "LevelraiserError");
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(std::string(e.name()), std::string(e.what()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("ap", &ap, py::arg("curve"), py::arg("p"));
  m.def("plan", &plan, py::arg("curve"), py::arg("p"), py::arg("avoid_p") = false);
  m.def("coefficient", &coefficient, py::arg("p"), py::arg("charpoly"));
  m.def("cn_bound", &cn_bound, py::arg("n"));
  m.def("verify", &verify, py::arg("curve"), py::arg("p"), py::arg("ell"), py::arg("eps"), py::arg("B") = 30,
        py::arg("conductor") = py::none(), py::arg("try_lower_levels") = false);
  m.def("reverify", &reverify, py::arg("certificate"));
  m.def("check", &check, py::arg("curve"), py::arg("q_bound") = 200, py::arg("isogeny_class_size") = py::none());
  m.def("modsym", &modsym_info, py::arg("level"), py::arg("hecke") = std::vector<std::int64_t>{},
        py::arg("new") = false);
  m.def("family_member", &family_member, py::arg("k"));
  m.def("family_scan", &family_scan, py::arg("lo"), py::arg("hi"));
  m.def("certificate_1427", &certificate_1427);
  m.def("aux_primes", &aux_primes, py::arg("curve"), py::arg("p"), py::arg("bound"));
  m.def("lmfdb_fetch", &lmfdb_fetch, py::arg("label"), py::arg("offline") = true);
}
