#include "doctest.h"

#include <algorithm>

#include "levelraiser/error.hpp"
#include "levelraiser/levelraise.hpp"

using namespace levelraiser;
using namespace levelraiser::raise;

namespace {

const ec::EllipticCurve e11 = ec::EllipticCurve::parse("0,-1,1,-10,-20");
const ec::EllipticCurve e43 = ec::EllipticCurve::parse("0,1,1,0,0");
const ec::EllipticCurve e37 = ec::EllipticCurve::parse("0,0,1,-1,0");
const ec::EllipticCurve e_fam = ec::EllipticCurve::short_weierstrass(33, -22);

// x^2 - a x + q has no root mod ell, by search
bool irreducible_by_search(std::int64_t a, std::int64_t q, std::int64_t ell) {
  for (std::int64_t x = 0; x < ell; ++x)
    if (mod(x * x - a * x + q, ell) == 0) return false;
  return true;
}

bool cubic_has_root_mod(const ec::EllipticCurve& e, std::int64_t q) {
  for (std::int64_t x = 0; x < q; ++x) {
    Integer v = ((4 * Integer(x) + e.b2()) * x + 2 * e.b4()) * x + e.b6();
    if (mod(v, q) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("mazur_T") {
  const auto& t = mazur_T();
  CHECK(t.size() == 12);
  CHECK(std::count(t.begin(), t.end(), 163) == 1);
  CHECK(std::count(t.begin(), t.end(), 23) == 0);
  CHECK(t == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163});
}

TEST_CASE("irreducibility certificates") {
  // q = 1427 certifies every odd ell in T for the family curve
  for (std::int64_t ell : mazur_T()) {
    if (ell == 2) continue;
    CHECK(recheck_certificate(e_fam, ell, 1427));
    auto q = irreducibility_certificate(e_fam, ell, 1427);
    REQUIRE(q.has_value());
    CHECK(*q <= 1427);
    CHECK(recheck_certificate(e_fam, ell, *q));
  }
  // 11a has a rational 5-isogeny
  CHECK_FALSE(irreducibility_certificate(e11, 5, 2000).has_value());
  for (std::int64_t q : primes_up_to(100)) {
    if (q == 11) continue;
    CHECK_FALSE(irreducible_by_search(ec::ap(e11, q), q, 5));
  }
  auto q43 = irreducibility_certificate(e43, 2, 50);
  REQUIRE(q43.has_value());
  CHECK(*q43 <= 50);
  CHECK(recheck_certificate(e43, 2, *q43));
  CHECK(mod(ec::ap(e43, *q43), 2) == 1);
}

TEST_CASE("certificate re-check agrees with root search") {
  for (const auto& e : {e11, e43, e37, e_fam}) {
    const Integer disc = ec::minimal_model(e).discriminant();
    for (std::int64_t ell : {2, 3, 5, 7, 13}) {
      for (std::int64_t q : primes_up_to(150)) {
        bool expected = false;
        if (q != ell && disc % q != 0) {
          std::int64_t a = ec::ap(e, q);
          expected = ell == 2 ? (q % 2 == 1 && mod(a, 2) == 1) : irreducible_by_search(a, q, ell);
        }
        CHECK(recheck_certificate(e, ell, q) == expected);
      }
      auto least = irreducibility_certificate(e, ell, 150);
      for (std::int64_t q : primes_up_to(150)) {
        if (least && q >= *least) break;
        CHECK_FALSE(recheck_certificate(e, ell, q));
      }
    }
  }
}

TEST_CASE("check_hypotheses on 43a") {
  HypothesisOptions opts;
  opts.isogeny_class_size = 1;
  auto r = check_hypotheses(e43, opts);
  CHECK(r.trivial_isogeny_graph == true);
  CHECK(r.degree_six);
  CHECK(r.two_division_degree == 6);
  CHECK(r.semistable_good_at_2);
  CHECK(r.squarefree_discriminant);
  CHECK(r.all_disc_conditions());
  CHECK(r.irreducible_evidence_all_T());
  CHECK(r.certificates.size() == mazur_T().size());
  for (const auto& [ell, q] : r.certificates) {
    REQUIRE(q.has_value());
    CHECK(recheck_certificate(e43, ell, *q));
  }
  CHECK(r.discriminant_sign == -1);
  CHECK_FALSE(r.positive_discriminant);
  CHECK(r.conductor == Integer(43));
}

TEST_CASE("check_hypotheses on 11a and sign flags") {
  HypothesisOptions opts;
  opts.isogeny_class_size = 3;
  auto r = check_hypotheses(e11, opts);
  CHECK_FALSE(r.certificates.at(5).has_value());
  CHECK_FALSE(r.irreducible_evidence_all_T());
  CHECK(r.trivial_isogeny_graph == false);
  CHECK_FALSE(r.all_disc_conditions());
  // without a class size the graph is settled only by certificates for all of T
  auto inferred = check_hypotheses(e43);
  CHECK(inferred.trivial_isogeny_graph == true);
  CHECK(inferred.all_disc_conditions());
  auto unknown = check_hypotheses(e11);
  CHECK_FALSE(unknown.trivial_isogeny_graph.has_value());
  CHECK_FALSE(unknown.all_disc_conditions());
  CHECK(check_hypotheses(e37).positive_discriminant);
  CHECK_FALSE(check_hypotheses(e_fam).positive_discriminant);
}

TEST_CASE("plan examples") {
  using CC = coeff::CongruenceCharacteristic;
  auto p11 = plan(e11, 7);
  CHECK(p11.ap == -2);
  CHECK(p11.entries == std::vector<CC>{{2, 1, true}, {5, 1, true}, {2, -1, true}, {3, -1, true}});
  CHECK(p11.contains(3, -1));
  CHECK_FALSE(p11.contains(3, 1));
  auto p43 = plan(e43, 5);
  CHECK(p43.entries == std::vector<CC>{{2, 1, true}, {5, 1, false}, {2, -1, true}});
  auto avoid = plan(e43, 5, true);
  CHECK(avoid.entries == std::vector<CC>{{2, 1, true}, {2, -1, true}});
  auto cm = plan(ec::EllipticCurve::parse("0,0,0,1,0"), 3);
  CHECK(cm.ap == 0);
  CHECK(cm.entries == std::vector<CC>{{2, 1, true}, {2, -1, true}});
  CHECK_THROWS_AS(plan(e11, 11), Error);
  CHECK_FALSE(p11.unit_obstructed);
}

TEST_CASE("sign dichotomy of plan entries") {
  for (const auto& e : {e11, e43, e37, e_fam}) {
    const Integer disc = ec::minimal_model(e).discriminant();
    for (std::int64_t p : primes_up_to(60)) {
      if (disc % p == 0) continue;
      auto pl = plan(e, p);
      const std::int64_t a = pl.ap;
      CHECK(a == ec::ap(e, p));
      for (const auto& entry : pl.entries) {
        const std::int64_t ell = entry.ell.get_si();
        CHECK(mod(a - entry.eps * (p + 1), ell) == 0);
        if (ell == 2) continue;
        const bool plus = mod(a - (p + 1), ell) == 0, minus = mod(a + (p + 1), ell) == 0;
        if (plus && minus) {
          CHECK(mod(2 * (p + 1), ell) == 0);
          CHECK(mod(2 * a, ell) == 0);
          CHECK(pl.contains(ell, 1));
          CHECK(pl.contains(ell, -1));
        } else {
          CHECK(plus != minus);
          CHECK(pl.contains(ell, plus ? 1 : -1));
          CHECK_FALSE(pl.contains(ell, plus ? -1 : 1));
        }
      }
    }
  }
}

TEST_CASE("helpers") {
  CHECK(sturm_bound(77) == 16);
  CHECK(sturm_bound(215) == 264 / 6);
  CHECK(semistable_conductor(e11) == 11);
  CHECK(semistable_conductor(e43) == 43);
  CHECK(semistable_conductor(e37) == 37);
  CHECK_THROWS_AS(semistable_conductor(e_fam), Error);
  auto t = hecke_targets(e11, 11, 7, 3, 30);
  std::vector<std::int64_t> qs;
  for (const auto& h : t) qs.push_back(h.q);
  CHECK(qs == std::vector<std::int64_t>{2, 5, 13, 17, 19, 23, 29});
  for (const auto& h : t) CHECK(h.residue == mod(ec::ap(e11, h.q), 3));
}

TEST_CASE("verify: 11a at p = 7, ell = 3") {
  VerifyOptions opts;
  opts.B = 30;
  auto minus = verify(e11, 7, 3, -1, opts);
  CHECK(minus.status == CertificateStatus::Witnessed);
  CHECK(minus.level == 77);
  REQUIRE(minus.witness.has_value());
  CHECK(minus.witness->verify());
  CHECK(minus.witness->up_target == modsym::HeckeTarget{7, 2});
  for (const auto& t : minus.witness->targets) CHECK(t.residue == mod(ec::ap(e11, t.q), 3));
  CHECK(reverify(minus));
  auto plus = verify(e11, 7, 3, 1, opts);
  CHECK(plus.status == CertificateStatus::NotFound);
  CHECK_FALSE(plus.witness.has_value());
  CHECK(plus.levels_tried == std::vector<std::int64_t>{77});
  opts.try_lower_levels = true;
  auto lower = verify(e11, 7, 3, 1, opts);
  CHECK(lower.status == CertificateStatus::NotFound);
  CHECK(lower.levels_tried == std::vector<std::int64_t>{77, 7});
}

TEST_CASE("verify: 43a at p = 5, ell = 2") {
  auto c = verify(e43, 5, 2, 1);
  CHECK(c.status == CertificateStatus::WitnessedWithL2Caveat);
  CHECK(c.level == 215);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->new_dimension == 30);
  CHECK_FALSE(c.witness->up_target.has_value());
  CHECK(c.witness->verify());
  CHECK(reverify(c));
  CHECK(c.sturm_bound == 44);
  CHECK_FALSE(c.sturm_complete);
  VerifyOptions wide;
  wide.B = 60;
  auto full = verify(e43, 5, 2, 1, wide);
  CHECK(full.sturm_complete);
  CHECK(full.status == CertificateStatus::WitnessedWithL2Caveat);
}

TEST_CASE("certificate JSON round trip") {
  auto c = verify(e11, 7, 3, -1);
  auto j = certificate_json(c);
  for (const char* key : {"curve", "p", "ell", "eps", "level", "B", "status", "witness"}) CHECK(j.contains(key));
  auto text = j.dump();
  auto back = parse_certificate(json_io::json::parse(text));
  CHECK(certificate_json(back).dump() == text);
  CHECK(reverify(back));
  auto tampered = json_io::json::parse(text);
  auto& first = tampered["witness"]["targets"][0][1];
  first = (first.get<std::int64_t>() + 1) % 3;
  CHECK_FALSE(reverify(parse_certificate(tampered)));
  auto not_found = verify(e11, 7, 3, 1);
  auto nf = parse_certificate(json_io::json::parse(certificate_json(not_found).dump()));
  CHECK(nf.status == CertificateStatus::NotFound);
  CHECK(parse_status(to_string(CertificateStatus::WitnessedWithL2Caveat)) == CertificateStatus::WitnessedWithL2Caveat);
}

TEST_CASE("auxiliary primes") {
  auto r = aux_primes(e43, 5, 100);
  CHECK(std::count(r.primes.begin(), r.primes.end(), 11) == 1);
  CHECK_THROWS_AS(aux_primes(ec::EllipticCurve::parse("0,0,0,-1,0"), 5, 100), Error);
  auto wide = aux_primes(e43, 5, 10000);
  CHECK(wide.density >= 0.05);
  CHECK(wide.density <= 0.25);
  const Integer disc = e43.discriminant();
  auto small = aux_primes(e43, 5, 200);
  CHECK_FALSE(small.primes.empty());
  for (std::int64_t q : primes_up_to(200)) {
    const bool expected = q % 4 == 3 && (2 * 5 * disc) % q != 0 && !cubic_has_root_mod(e43, q) && legendre(5, q) == 1;
    CHECK(std::count(small.primes.begin(), small.primes.end(), q) == (expected ? 1 : 0));
    CHECK(is_aux_prime(e43, 5, q) == expected);
  }
}

TEST_CASE("conggcong bookkeeping") {
  auto r43 = conggcong_check(e43, 5, 2, 1);
  CHECK(r43.ap_residue == 0);
  CHECK_FALSE(r43.ap_congruent_to_eps);
  CHECK_FALSE(r43.ell_is_p);
  CHECK_FALSE(r43.full_congruence_possible);
  auto r11 = conggcong_check(e11, 7, 5, 1);
  CHECK(r11.ap_residue == 3);
  CHECK(r11.eps_residue == 1);
  CHECK_FALSE(r11.full_congruence_possible);
  auto same = conggcong_check(e11, 7, 7, 1);
  CHECK(same.ell_is_p);
  CHECK(same.branch.find("consistent") != std::string::npos);
}
