#include "levelraiser/levelraise.hpp"

#include <algorithm>

#include "levelraiser/error.hpp"

namespace levelraiser::raise {

using json_io::json;

namespace {

bool frobenius_poly_irreducible(std::int64_t aq, std::int64_t q, std::int64_t ell) {
  if (ell == 2) return mod(aq, 2) == 1 && mod(q, 2) == 1;
  return legendre(mod(aq * aq - 4 * q, ell), ell) == -1;
}

void check_prime(std::int64_t p, const char* what) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be prime");
}

}  // namespace

const std::vector<std::int64_t>& mazur_T() {
  static const std::vector<std::int64_t> t{2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163};
  return t;
}

std::optional<std::int64_t> irreducibility_certificate(const ec::EllipticCurve& curve, std::int64_t ell,
                                                       std::int64_t bound) {
  check_prime(ell, "ell");
  const ec::EllipticCurve e = ec::minimal_model(curve);
  const Integer bad = e.discriminant() * ell;
  for (std::int64_t q : primes_up_to(bound)) {
    if (bad % q == 0) continue;
    if (frobenius_poly_irreducible(ec::ap(e, q), q, ell)) return q;
  }
  return std::nullopt;
}

bool recheck_certificate(const ec::EllipticCurve& curve, std::int64_t ell, std::int64_t q) {
  if (!is_prime(ell) || !is_prime(q)) return false;
  const ec::EllipticCurve e = ec::minimal_model(curve);
  if ((e.discriminant() * ell) % q == 0) return false;
  std::int64_t aq = static_cast<std::int64_t>(q) + 1 - ec::count_points_naive(e, q);
  IntPoly frob({Integer(q), Integer(-aq), Integer(1)});
  return count_roots_mod(frob, ell) == 0;
}

bool HypothesisReport::irreducible_evidence_all_T() const {
  for (const auto& [ell, q] : certificates)
    if (!q) return false;
  return !certificates.empty();
}

HypothesisReport check_hypotheses(const ec::EllipticCurve& curve, const HypothesisOptions& options) {
  HypothesisReport r{ec::minimal_model(curve)};
  const ec::EllipticCurve& e = r.minimal;
  const Integer& disc = e.discriminant();
  for (std::int64_t ell : mazur_T()) r.certificates[ell] = irreducibility_certificate(e, ell, options.q_bound);

  auto two = ec::two_division_data(e);
  r.two_division_degree = two.degree;
  r.two_division_galois = two.galois;
  r.absolutely_irreducible_mod2 = two.galois == ec::CubicGalois::S3;
  r.isogeny_class_size = options.isogeny_class_size;
  r.discriminant_sign = sgn(disc);
  r.discriminant_squarefree = is_squarefree(abs(disc));
  r.reduction_at_2 = ec::reduction_type(e, 2).kind;

  r.semistable = true;
  Integer conductor = 1;
  for (const Integer& q : prime_divisors(disc)) {
    if (ec::reduction_type(e, to_int64(q)).kind != ec::ReductionKind::Multiplicative) r.semistable = false;
    conductor *= q;
  }
  if (r.semistable) r.conductor = conductor;

  if (options.isogeny_class_size) {
    r.trivial_isogeny_graph = *options.isogeny_class_size == 1;
  } else if (r.irreducible_evidence_all_T()) {
    // no rational ell-isogeny for any ell in T, hence none of prime degree
    r.trivial_isogeny_graph = true;
  }
  r.degree_six = two.degree == 6;
  r.semistable_good_at_2 = r.semistable && r.reduction_at_2 == ec::ReductionKind::Good;
  r.squarefree_discriminant = r.discriminant_squarefree;
  r.good_or_multiplicative_at_2 = r.reduction_at_2 != ec::ReductionKind::Additive;
  r.positive_discriminant = r.discriminant_sign > 0;
  return r;
}

bool RaisePlan::contains(std::int64_t ell, int eps) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const auto& c) { return c.ell == ell && c.eps == eps; });
}

RaisePlan plan(const ec::EllipticCurve& curve, std::int64_t p, bool avoid_p) {
  check_prime(p, "p");
  RaisePlan out{ec::minimal_model(curve)};
  out.p = p;
  out.avoid_p = avoid_p;
  out.ap = ec::ap(out.curve, p);
  auto coefficient = coeff::AlgebraicCoefficient::rational(p, out.ap);
  out.unit_obstructed = coeff::is_unit_obstructed(coefficient);
  if (out.unit_obstructed) {
    out.notes.push_back("unit obstructed: (p+1)^2 - a_p^2 has norm +-1, no characteristic exists");
    return out;
  }
  out.entries = coeff::congruence_characteristics(coefficient);
  out.notes.push_back("a_p = eps (p+1) mod ell for every entry");
  if (avoid_p) {
    std::erase_if(out.entries, [](const auto& c) { return !c.avoids_p; });
    if (p > coeff::kRefinedC1) out.notes.push_back("p > 2: a characteristic different from p always exists");
  }
  return out;
}

std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Witnessed: return "Witnessed";
    case CertificateStatus::WitnessedWithL2Caveat: return "WitnessedWithL2Caveat";
    case CertificateStatus::NotFound: return "NotFound";
  }
  return "NotFound";
}

CertificateStatus parse_status(std::string_view s) {
  if (s == "Witnessed") return CertificateStatus::Witnessed;
  if (s == "WitnessedWithL2Caveat") return CertificateStatus::WitnessedWithL2Caveat;
  if (s == "NotFound") return CertificateStatus::NotFound;
  throw Error(ErrorKind::InvalidInput, "unknown status " + std::string(s));
}

std::int64_t sturm_bound(std::int64_t level) { return modsym::genus_data(level).index / 6; }

std::int64_t semistable_conductor(const ec::EllipticCurve& curve) {
  const ec::EllipticCurve e = ec::minimal_model(curve);
  std::int64_t n = 1;
  for (const Integer& q : prime_divisors(e.discriminant())) {
    std::int64_t qq = to_int64(q);
    if (ec::reduction_type(e, qq).kind != ec::ReductionKind::Multiplicative) {
      throw Error(ErrorKind::PreconditionFailed,
                  "conductor not supplied and curve is not semistable at " + std::to_string(qq));
    }
    n *= qq;
  }
  return n;
}

std::vector<modsym::HeckeTarget> hecke_targets(const ec::EllipticCurve& curve, std::int64_t conductor,
                                               std::int64_t p, std::int64_t ell, std::int64_t B) {
  const ec::EllipticCurve e = ec::minimal_model(curve);
  const Integer excluded = Integer(conductor) * p * ell;
  std::vector<modsym::HeckeTarget> out;
  for (std::int64_t q : primes_up_to(B)) {
    if (excluded % q == 0 || e.discriminant() % q == 0) continue;
    out.push_back({q, mod(ec::ap(e, q), ell)});
  }
  return out;
}

RaiseCertificate verify(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t ell, int eps,
                        const VerifyOptions& options) {
  check_prime(p, "p");
  check_prime(ell, "ell");
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidInput, "eps must be +1 or -1");
  if (options.B < 2) throw Error(ErrorKind::InvalidInput, "B must be at least 2");

  RaiseCertificate c{ec::minimal_model(curve)};
  c.p = p;
  c.ell = ell;
  c.eps = eps;
  c.B = options.B;
  c.conductor = options.conductor ? *options.conductor : semistable_conductor(c.curve);
  if (c.conductor < 1) throw Error(ErrorKind::InvalidInput, "conductor must be positive");
  if (c.conductor % p == 0) throw Error(ErrorKind::BadReduction, "p divides the conductor");

  RaisePlan pl = plan(c.curve, p);
  if (!pl.contains(ell, eps)) c.notes.push_back("(ell, eps) is not a congruence characteristic of (E, p)");

  auto targets = hecke_targets(c.curve, c.conductor, p, ell, options.B);
  std::optional<modsym::HeckeTarget> up;
  if (ell != 2) {
    up = modsym::HeckeTarget{p, eps};
  } else {
    c.notes.push_back("ell = 2: no U_p target; kernel may contain extra 2-torsion classes");
  }

  std::vector<std::int64_t> levels{c.conductor * p};
  if (options.try_lower_levels) {
    auto divs = divisors(c.conductor);
    for (auto it = divs.rbegin(); it != divs.rend(); ++it)
      if (*it != c.conductor) levels.push_back(*it * p);
  }
  c.level = levels.front();
  for (std::int64_t level : levels) {
    c.levels_tried.push_back(level);
    auto w = modsym::congruence_witness(level, ell, targets, up);
    if (!w) continue;
    c.level = level;
    c.witness = std::move(w);
    c.status = ell == 2 ? CertificateStatus::WitnessedWithL2Caveat : CertificateStatus::Witnessed;
    break;
  }
  c.sturm_bound = sturm_bound(c.level);
  c.sturm_complete = c.witness && options.B >= c.sturm_bound;
  return c;
}

json certificate_json(const RaiseCertificate& c) {
  return {{"curve", c.curve.to_string()},
          {"p", c.p},
          {"ell", c.ell},
          {"eps", c.eps},
          {"conductor", c.conductor},
          {"level", c.level},
          {"B", c.B},
          {"status", std::string(to_string(c.status))},
          {"witness", c.witness ? json_io::witness(*c.witness) : json(nullptr)},
          {"levels_tried", c.levels_tried},
          {"sturm_bound", c.sturm_bound},
          {"sturm_complete", c.sturm_complete},
          {"notes", c.notes}};
}

RaiseCertificate parse_certificate(const json& j) {
  RaiseCertificate c{ec::EllipticCurve::parse(j.at("curve").get<std::string>())};
  c.p = j.at("p").get<std::int64_t>();
  c.ell = j.at("ell").get<std::int64_t>();
  c.eps = j.at("eps").get<int>();
  c.conductor = j.at("conductor").get<std::int64_t>();
  c.level = j.at("level").get<std::int64_t>();
  c.B = j.at("B").get<std::int64_t>();
  c.status = parse_status(j.at("status").get<std::string>());
  if (!j.at("witness").is_null()) c.witness = json_io::parse_witness(j.at("witness"));
  c.levels_tried = j.value("levels_tried", std::vector<std::int64_t>{});
  c.sturm_bound = j.value("sturm_bound", std::int64_t{0});
  c.sturm_complete = j.value("sturm_complete", false);
  c.notes = j.value("notes", std::vector<std::string>{});
  return c;
}

bool reverify(const RaiseCertificate& c) {
  if (c.status == CertificateStatus::NotFound || !c.witness) return false;
  const auto& w = *c.witness;
  if (w.level != c.level || w.ell != c.ell || c.level % c.p != 0) return false;
  if ((c.ell == 2) != (c.status == CertificateStatus::WitnessedWithL2Caveat)) return false;
  if (w.targets != hecke_targets(c.curve, c.conductor, c.p, c.ell, c.B)) return false;
  if (c.ell != 2) {
    if (!w.up_target || w.up_target->q != c.p || w.up_target->residue != mod(c.eps, c.ell)) return false;
  } else if (w.up_target) {
    return false;
  }
  return w.verify();
}

bool is_aux_prime(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t q) {
  if (!is_prime(q) || q % 4 != 3) return false;
  const ec::EllipticCurve e = ec::minimal_model(curve);
  if ((e.discriminant() * 2 * p) % q == 0) return false;
  if (ec::frob_order_in_S3(e, q) != ec::FrobeniusOrder::Three) return false;
  return legendre(p, q) == 1;
}

AuxPrimeReport aux_primes(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t bound) {
  check_prime(p, "p");
  const ec::EllipticCurve e = ec::minimal_model(curve);
  auto two = ec::two_division_data(e);
  if (two.galois != ec::CubicGalois::S3) {
    throw Error(ErrorKind::PreconditionFailed,
                "2-division field has degree " + std::to_string(two.degree) + ", S3 image required");
  }
  if (is_square(-e.discriminant())) {
    throw Error(ErrorKind::PreconditionFailed, "Q(sqrt(Delta)) = Q(i)");
  }
  if (e.discriminant() % p == 0) throw Error(ErrorKind::PreconditionFailed, "bad reduction at p");
  AuxPrimeReport r;
  r.p = p;
  r.bound = bound;
  for (std::int64_t q : primes_up_to(bound))
    if (is_aux_prime(e, p, q)) r.primes.push_back(q);
  std::int64_t total = prime_pi(bound);
  r.density = total > 0 ? static_cast<double>(r.primes.size()) / static_cast<double>(total) : 0.0;
  return r;
}

CongGCongReport conggcong_check(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t ell, int eps) {
  check_prime(p, "p");
  check_prime(ell, "ell");
  if (eps != 1 && eps != -1) throw Error(ErrorKind::InvalidInput, "eps must be +1 or -1");
  CongGCongReport r;
  r.p = p;
  r.ell = ell;
  r.eps = eps;
  r.ap_residue = mod(ec::ap(ec::minimal_model(curve), p), ell);
  r.eps_residue = mod(eps, ell);
  r.ap_congruent_to_eps = r.ap_residue == r.eps_residue;
  r.ell_is_p = ell == p;
  r.full_congruence_possible = r.ap_congruent_to_eps;
  if (r.ell_is_p) {
    r.branch = "ell = p: consistent";
  } else if (!r.ap_congruent_to_eps) {
    r.branch = "ell != p: full congruence excluded (a_p(f) != eps mod ell)";
  } else {
    r.branch = "ell != p: a_p(f) = eps mod ell";
  }
  return r;
}

}  // namespace levelraiser::raise
