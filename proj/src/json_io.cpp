#include "levelraiser/json_io.hpp"

#include <limits>

#include "levelraiser/error.hpp"

namespace levelraiser::json_io {

json integer(const Integer& n) {
  if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

Integer to_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected an integer in JSON");
}

json rational(const Rational& q) {
  if (q.get_den() == 1) return integer(q.get_num());
  return to_string(q);
}

json mod_matrix(const ModMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

ModMatrix parse_mod_matrix(const json& j) {
  ModMatrix m;
  for (const auto& row : j) m.append_row(row.get<std::vector<std::int64_t>>());
  return m;
}

json curve(const ec::EllipticCurve& e) {
  json a = json::array();
  for (const auto& x : e.ainvs()) a.push_back(integer(x));
  return {{"ainvs", a}, {"discriminant", integer(e.discriminant())}};
}

json characteristic(const coeff::CongruenceCharacteristic& c) {
  return {{"ell", integer(c.ell)}, {"eps", c.eps}, {"avoids_p", c.avoids_p}};
}

json polynomial(const std::vector<Integer>& coeffs) {
  json out = json::array();
  for (const auto& c : coeffs) out.push_back(integer(c));
  return out;
}

namespace {

json targets_json(const std::vector<modsym::HeckeTarget>& targets) {
  json out = json::array();
  for (const auto& t : targets) out.push_back({t.q, t.residue});
  return out;
}

}  // namespace

json witness(const modsym::EigensystemWitness& w) {
  json ops = json::object();
  for (const auto& [q, m] : w.operators) ops[std::to_string(q)] = mod_matrix(m);
  json up = nullptr;
  if (w.up_target) up = {w.up_target->q, w.up_target->residue};
  return {{"level", w.level},
          {"ell", w.ell},
          {"targets", targets_json(w.targets)},
          {"up_target", up},
          {"new_dim", w.new_dimension},
          {"kernel_dim", w.kernel_dimension},
          {"basis", mod_matrix(w.kernel_basis)},
          {"operators", ops}};
}

modsym::EigensystemWitness parse_witness(const json& j) {
  modsym::EigensystemWitness w;
  w.level = j.at("level").get<std::int64_t>();
  w.ell = j.at("ell").get<std::int64_t>();
  for (const auto& t : j.at("targets")) w.targets.push_back({t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>()});
  if (!j.at("up_target").is_null()) {
    const auto& u = j.at("up_target");
    w.up_target = modsym::HeckeTarget{u.at(0).get<std::int64_t>(), u.at(1).get<std::int64_t>()};
  }
  w.new_dimension = j.at("new_dim").get<std::size_t>();
  w.kernel_dimension = j.at("kernel_dim").get<std::size_t>();
  w.kernel_basis = parse_mod_matrix(j.at("basis"));
  for (const auto& [q, m] : j.at("operators").items()) w.operators[std::stoll(q)] = parse_mod_matrix(m);
  return w;
}

json record(const lmfdb::CurveRecord& r) {
  json a = json::array();
  for (const auto& x : r.ainvs) a.push_back(integer(x));
  json aps = json::array();
  for (const auto& [p, ap] : r.aplist) aps.push_back({p, ap});
  return {{"label", r.label},
          {"ainvs", a},
          {"conductor", r.conductor},
          {"isogeny_class_size", r.isogeny_class_size},
          {"aplist", aps},
          {"source", r.source}};
}

lmfdb::CurveRecord parse_record(const json& j) {
  lmfdb::CurveRecord r;
  r.label = j.at("label").get<std::string>();
  const auto& a = j.at("ainvs");
  if (!a.is_array() || a.size() != 5) throw Error(ErrorKind::InvalidInput, "ainvs must have 5 entries");
  for (std::size_t i = 0; i < 5; ++i) r.ainvs[i] = to_integer(a[i]);
  r.conductor = j.at("conductor").get<std::int64_t>();
  r.isogeny_class_size = j.at("isogeny_class_size").get<int>();
  for (const auto& e : j.at("aplist")) r.aplist.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
  r.source = j.value("source", "fixture");
  return r;
}

}  // namespace levelraiser::json_io
