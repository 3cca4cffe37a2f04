#include "levelraiser/family.hpp"

#include <algorithm>

#include "levelraiser/error.hpp"
#include "levelraiser/poly.hpp"

namespace levelraiser::family {

std::string_view to_string(CubicGalois g) {
  switch (g) {
    case CubicGalois::S3: return "S3";
    case CubicGalois::C3: return "C3";
    case CubicGalois::Reducible: return "Reducible";
  }
  return "Reducible";
}

CubicGaloisReport cubic_galois(const Integer& n) {
  const Integer a1 = -3 * (n + 1), a0 = 2 * (n + 1);
  CubicGaloisReport r;
  r.discriminant = 108 * n * (n + 1) * (n + 1);
  const Integer generic = -4 * a1 * a1 * a1 - 27 * a0 * a0;
  if (generic != r.discriminant || discriminant_cubic(0, a1, a0) != generic) {
    throw Error(ErrorKind::Mismatch, "cubic discriminant formulas disagree at n = " + levelraiser::to_string(n));
  }
  IntPoly cubic({a0, a1, Integer(0), Integer(1)});
  if (!integer_roots(cubic).empty()) {
    r.galois = CubicGalois::Reducible;
  } else {
    r.galois = is_square(r.discriminant) ? CubicGalois::C3 : CubicGalois::S3;
  }
  return r;
}

std::vector<std::pair<Integer, Integer>> conic_integer_points() {
  // (6a + 9c + 4)(6a - 4) = -16 is 18 (2a^2 + 3ac - 2c) - 16.
  std::vector<std::pair<Integer, Integer>> out;
  for (std::int64_t u : divisors(16)) {
    for (std::int64_t su : {u, -u}) {
      const std::int64_t v = -16 / su;
      if ((v + 4) % 6 != 0) continue;
      const std::int64_t a = (v + 4) / 6;
      if ((su - 6 * a - 4) % 9 != 0) continue;
      const std::int64_t c = (su - 6 * a - 4) / 9;
      out.emplace_back(a, c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Certificate1427::all_irreducible() const {
  return std::all_of(irreducible_mod.begin(), irreducible_mod.end(), [](const auto& e) { return e.second; });
}

Certificate1427 compute_1427() {
  const auto curve = ec::EllipticCurve::short_weierstrass(33, -22);
  Certificate1427 c;
  c.count = ec::count_points_naive(curve, kModulus);
  c.trace = kModulus + 1 - c.count;
  c.frobpoly = {Integer(kModulus), Integer(-c.trace), Integer(1)};
  c.frob_discriminant = Integer(c.trace) * c.trace - 4 * kModulus;
  const IntPoly frob(c.frobpoly);
  for (std::int64_t ell : raise::mazur_T()) {
    if (ell == 2) {
      c.irreducible_mod[ell] = count_roots_mod(frob, 2) == 0;
    } else {
      c.irreducible_mod[ell] = legendre(c.frob_discriminant, ell) == -1;
    }
  }
  return c;
}

Certificate1427 verify_1427() {
  Certificate1427 c = compute_1427();
  if (c.count != 1424) throw Error(ErrorKind::CertificateFailure, "point count " + std::to_string(c.count));
  if (c.trace != 4) throw Error(ErrorKind::CertificateFailure, "trace " + std::to_string(c.trace));
  std::string failed;
  for (const auto& [ell, ok] : c.irreducible_mod)
    if (!ok) failed += (failed.empty() ? "" : ", ") + std::to_string(ell);
  if (!failed.empty()) throw Error(ErrorKind::CertificateFailure, "frobenius polynomial reducible mod " + failed);
  return c;
}

ec::EllipticCurve family_curve(const Integer& k) {
  return ec::EllipticCurve::short_weierstrass(-3 * k, 2 * k);
}

bool FamilyMember::absolutely_irreducible_all_T() const {
  return std::all_of(certified.begin(), certified.end(), [](const auto& e) { return e.second; });
}

FamilyMember family_member(const Integer& k, bool with_report) {
  if (mod(k - kResidue, kModulus) != 0) throw Error(ErrorKind::NotInFamily, "k = " + levelraiser::to_string(k) + " is not -11 mod 1427");
  if (k == 0 || k == 1) throw Error(ErrorKind::SingularMember, "E_k is singular for k in {0, 1}");
  static const Certificate1427 reduction = compute_1427();
  ec::EllipticCurve curve = family_curve(k);
  FamilyMember m{k, k - 1, curve, {}, kModulus, CubicGalois::S3, false, std::nullopt};
  const bool good_at_q = mod(curve.discriminant(), kModulus) != 0;
  m.cubic = cubic_galois(m.n).galois;
  m.three_n_nonsquare_mod_1427 = legendre(mod(3 * m.n, kModulus), kModulus) == -1;
  for (std::int64_t ell : raise::mazur_T()) {
    if (ell == 2) {
      m.certified[ell] = m.cubic == CubicGalois::S3 && m.three_n_nonsquare_mod_1427;
    } else {
      m.certified[ell] = good_at_q && reduction.irreducible_mod.at(ell);
    }
  }
  if (with_report) m.report = raise::check_hypotheses(curve);
  return m;
}

std::vector<Integer> family_scan(const Integer& lo, const Integer& hi) {
  std::vector<Integer> out;
  Integer k = lo + mod(Integer(kResidue) - lo, kModulus);
  for (; k <= hi; k += kModulus) out.push_back(k);
  return out;
}

Integer weil_height(const Rational& x) {
  Rational q = x;
  q.canonicalize();
  Integer num = abs(q.get_num());
  return std::max(num, Integer(q.get_den()));
}

}  // namespace levelraiser::family
