#pragma once

// The curves E_k: y^2 = x^3 - 3k x + 2k with k = -11 mod 1427, their
// S3 cubic criterion, and the F_1427 certificate shared by the family.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelraiser/ec_arith.hpp"
#include "levelraiser/levelraise.hpp"
#include "levelraiser/numtheory.hpp"

namespace levelraiser::family {

inline constexpr std::int64_t kModulus = 1427;
inline constexpr std::int64_t kResidue = -11;

enum class CubicGalois { S3, C3, Reducible };
std::string_view to_string(CubicGalois g);

struct CubicGaloisReport {
  CubicGalois galois = CubicGalois::S3;
  Integer discriminant;  // of X^3 - 3(n+1) X + 2(n+1)
};

/// Galois group of X^3 - 3(n+1) X + 2(n+1). Throws if the closed-form
/// discriminant 108 n (n+1)^2 disagrees with the generic formula.
CubicGaloisReport cubic_galois(const Integer& n);

/// All integer solutions (a, c) of 2a^2 + 3ac - 2c = 0.
std::vector<std::pair<Integer, Integer>> conic_integer_points();

struct Certificate1427 {
  std::int64_t count = 0;
  std::int64_t trace = 0;
  std::vector<Integer> frobpoly;           // constant term first
  Integer frob_discriminant;
  std::map<std::int64_t, bool> irreducible_mod;  // ell in T
  bool all_irreducible() const;
};

/// Counts points of y^2 = x^3 + 33x - 22 over F_1427 and tests the Frobenius
/// polynomial mod every ell in T. Never throws.
Certificate1427 compute_1427();
/// compute_1427 followed by the checks; throws CertificateFailure naming
/// the first failing sub-check.
Certificate1427 verify_1427();

ec::EllipticCurve family_curve(const Integer& k);

struct FamilyMember {
  Integer k;
  Integer n;  // k - 1
  ec::EllipticCurve curve;
  std::map<std::int64_t, bool> certified;  // ell in T
  std::int64_t odd_certificate_prime = kModulus;
  CubicGalois cubic = CubicGalois::S3;
  bool three_n_nonsquare_mod_1427 = false;
  std::optional<raise::HypothesisReport> report;
  bool absolutely_irreducible_all_T() const;
};

/// Builds E_k and certifies irreducibility for every ell in T: odd ell via
/// q = 1427, ell = 2 via the S3 cubic.
FamilyMember family_member(const Integer& k, bool with_report = false);

/// All k in [lo, hi] with k = -11 mod 1427.
std::vector<Integer> family_scan(const Integer& lo, const Integer& hi);

/// max(|a|, |b|) for a/b in lowest terms.
Integer weil_height(const Rational& x);

}  // namespace levelraiser::family
