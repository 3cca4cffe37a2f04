#pragma once

// Planning and verification of level raising for elliptic-curve newforms.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levelraiser/coeff_arith.hpp"
#include "levelraiser/ec_arith.hpp"
#include "levelraiser/json_io.hpp"
#include "levelraiser/modsym.hpp"

namespace levelraiser::raise {

/// Primes that can occur as degrees of rational isogenies of prime degree.
const std::vector<std::int64_t>& mazur_T();

/// Least good q <= bound, q not dividing ell * Delta, for which
/// x^2 - a_q x + q is irreducible over F_ell.
std::optional<std::int64_t> irreducibility_certificate(const ec::EllipticCurve& curve, std::int64_t ell,
                                                       std::int64_t bound);
/// Independent re-check of a certificate (ell, q).
bool recheck_certificate(const ec::EllipticCurve& curve, std::int64_t ell, std::int64_t q);

struct HypothesisOptions {
  std::int64_t q_bound = 200;
  std::optional<int> isogeny_class_size;  // from LMFDB when available
};

struct HypothesisReport {
  ec::EllipticCurve minimal;
  std::map<std::int64_t, std::optional<std::int64_t>> certificates{};  // ell in T -> q
  bool absolutely_irreducible_mod2 = false;  // S3 image on E[2]
  int two_division_degree = 0;
  ec::CubicGalois two_division_galois = ec::CubicGalois::S3;
  std::optional<int> isogeny_class_size{};
  int discriminant_sign = 0;
  bool discriminant_squarefree = false;
  ec::ReductionKind reduction_at_2 = ec::ReductionKind::Good;
  bool semistable = false;
  std::optional<Integer> conductor{};  // product of bad primes when semistable

  // Conditions (i)-(iv) for strong level raising at M = N.
  std::optional<bool> trivial_isogeny_graph{};
  bool degree_six = false;
  bool semistable_good_at_2 = false;
  bool squarefree_discriminant = false;
  bool all_disc_conditions() const {
    return trivial_isogeny_graph.value_or(false) && degree_six && semistable_good_at_2 && squarefree_discriminant;
  }
  // Curve-level bullets for the signed variant.
  bool good_or_multiplicative_at_2 = false;
  bool positive_discriminant = false;
  bool irreducible_evidence_all_T() const;
};

HypothesisReport check_hypotheses(const ec::EllipticCurve& curve, const HypothesisOptions& options = {});

struct RaisePlan {
  ec::EllipticCurve curve;
  std::int64_t p = 0;
  std::int64_t ap = 0;
  bool avoid_p = false;
  bool unit_obstructed = false;
  std::vector<coeff::CongruenceCharacteristic> entries{};
  std::vector<std::string> notes{};
  bool contains(std::int64_t ell, int eps) const;
};

RaisePlan plan(const ec::EllipticCurve& curve, std::int64_t p, bool avoid_p = false);

enum class CertificateStatus { Witnessed, WitnessedWithL2Caveat, NotFound };
std::string_view to_string(CertificateStatus s);
CertificateStatus parse_status(std::string_view s);

struct RaiseCertificate {
  ec::EllipticCurve curve;
  std::int64_t p = 0;
  std::int64_t ell = 0;
  int eps = 1;
  std::int64_t conductor = 0;
  std::int64_t level = 0;  // level of the witness (or N p when not found)
  std::int64_t B = 30;
  CertificateStatus status = CertificateStatus::NotFound;
  std::optional<modsym::EigensystemWitness> witness{};
  std::vector<std::int64_t> levels_tried{};
  std::int64_t sturm_bound = 0;
  bool sturm_complete = false;
  std::vector<std::string> notes{};
};

struct VerifyOptions {
  std::optional<std::int64_t> conductor;  // else derived for semistable curves
  std::int64_t B = 30;
  bool try_lower_levels = false;
};

/// Searches for the congruent eigensystem at level N p (then M p, M | N,
/// when requested). Never throws NotFound: the status records it.
RaiseCertificate verify(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t ell, int eps,
                        const VerifyOptions& options = {});

/// Targets (q, a_q mod ell) for good q <= B with q not dividing N p ell.
std::vector<modsym::HeckeTarget> hecke_targets(const ec::EllipticCurve& curve, std::int64_t conductor,
                                               std::int64_t p, std::int64_t ell, std::int64_t B);

/// Sturm bound for weight 2 on Gamma_0(M): floor(index / 6).
std::int64_t sturm_bound(std::int64_t level);

/// Conductor of a semistable curve (product of bad primes); throws
/// PreconditionFailed if some bad prime is additive.
std::int64_t semistable_conductor(const ec::EllipticCurve& curve);

json_io::json certificate_json(const RaiseCertificate& c);
RaiseCertificate parse_certificate(const json_io::json& j);
/// Re-verifies a certificate from its own data: targets recomputed from the
/// curve, witness re-multiplied.
bool reverify(const RaiseCertificate& c);

struct AuxPrimeReport {
  std::int64_t p = 0;
  std::int64_t bound = 0;
  std::vector<std::int64_t> primes;
  double density = 0.0;  // primes.size() / pi(bound)
};

AuxPrimeReport aux_primes(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t bound);
/// The four defining conditions of an auxiliary prime, checked directly.
bool is_aux_prime(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t q);

struct CongGCongReport {
  std::int64_t p = 0;
  std::int64_t ell = 0;
  int eps = 1;
  std::int64_t ap_residue = 0;
  std::int64_t eps_residue = 0;
  bool ap_congruent_to_eps = false;  // a_p(f) = eps mod ell
  bool ell_is_p = false;
  bool full_congruence_possible = false;
  std::string branch;
};

CongGCongReport conggcong_check(const ec::EllipticCurve& curve, std::int64_t p, std::int64_t ell, int eps);

}  // namespace levelraiser::raise
