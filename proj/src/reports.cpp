#include "levelraiser/reports.hpp"

namespace levelraiser::reports {

using json_io::json;

json plan_json(const raise::RaisePlan& pl) {
  json entries = json::array();
  for (const auto& c : pl.entries) entries.push_back(json_io::characteristic(c));
  return {{"curve", pl.curve.to_string()},
          {"p", pl.p},
          {"ap", pl.ap},
          {"avoid_p", pl.avoid_p},
          {"unit_obstructed", pl.unit_obstructed},
          {"characteristics", entries},
          {"notes", pl.notes}};
}

json hypotheses_json(const raise::HypothesisReport& r) {
  json certs = json::object();
  for (const auto& [ell, q] : r.certificates) certs[std::to_string(ell)] = q ? json(*q) : json(nullptr);
  auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
  return {
      {"minimal_model", r.minimal.to_string()},
      {"discriminant", json_io::integer(r.minimal.discriminant())},
      {"irreducibility_certificates", certs},
      {"irreducible_evidence_all_T", r.irreducible_evidence_all_T()},
      {"absolutely_irreducible_mod2", r.absolutely_irreducible_mod2},
      {"two_division_degree", r.two_division_degree},
      {"two_division_galois", std::string(ec::to_string(r.two_division_galois))},
      {"isogeny_class_size", opt(r.isogeny_class_size)},
      {"discriminant_sign", r.discriminant_sign},
      {"discriminant_squarefree", r.discriminant_squarefree},
      {"reduction_at_2", std::string(ec::to_string(r.reduction_at_2))},
      {"semistable", r.semistable},
      {"conductor", r.conductor ? json_io::integer(*r.conductor) : json(nullptr)},
      {"disc_conditions",
       {{"i_trivial_isogeny_graph", opt(r.trivial_isogeny_graph)},
        {"ii_degree_six", r.degree_six},
        {"iii_semistable_good_at_2", r.semistable_good_at_2},
        {"iv_squarefree_discriminant", r.squarefree_discriminant},
        {"all", r.all_disc_conditions()}}},
      {"signed_bullets",
       {{"no_rational_isogeny", opt(r.trivial_isogeny_graph)},
        {"degree_six", r.degree_six},
        {"good_or_multiplicative_at_2", r.good_or_multiplicative_at_2},
        {"positive_discriminant", r.positive_discriminant}}},
  };
}

json member_json(const family::FamilyMember& m) {
  json certified = json::object();
  for (const auto& [ell, ok] : m.certified) certified[std::to_string(ell)] = ok;
  json out = {{"k", json_io::integer(m.k)},
              {"n", json_io::integer(m.n)},
              {"curve", m.curve.to_string()},
              {"discriminant", json_io::integer(m.curve.discriminant())},
              {"cubic_galois", std::string(family::to_string(m.cubic))},
              {"three_n_nonsquare_mod_1427", m.three_n_nonsquare_mod_1427},
              {"odd_certificate_prime", m.odd_certificate_prime},
              {"certified", certified},
              {"absolutely_irreducible_all_T", m.absolutely_irreducible_all_T()}};
  if (m.report) out["hypotheses"] = hypotheses_json(*m.report);
  return out;
}

json certificate_1427_json(const family::Certificate1427& c) {
  json irr = json::object();
  for (const auto& [ell, ok] : c.irreducible_mod) irr[std::to_string(ell)] = ok;
  return {{"curve", "0,0,0,33,-22"},
          {"q", family::kModulus},
          {"count", c.count},
          {"trace", c.trace},
          {"frobpoly", json_io::polynomial(c.frobpoly)},
          {"frob_discriminant", json_io::integer(c.frob_discriminant)},
          {"irreducible_mod", irr},
          {"all_irreducible", c.all_irreducible()}};
}

}  // namespace levelraiser::reports
