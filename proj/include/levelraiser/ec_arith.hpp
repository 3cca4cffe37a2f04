#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelraiser/numtheory.hpp"
#include "levelraiser/poly.hpp"

namespace levelraiser::ec {

/// Integral long Weierstrass model
///   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with its standard invariants. Construction rejects singular models.
class EllipticCurve {
 public:
  EllipticCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
  explicit EllipticCurve(const std::array<Integer, 5>& ainvs)
      : EllipticCurve(ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4]) {}

  /// Parses "a1,a2,a3,a4,a6".
  static EllipticCurve parse(const std::string& text);
  static EllipticCurve short_weierstrass(const Integer& a4, const Integer& a6) {
    return EllipticCurve(0, 0, 0, a4, a6);
  }

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const std::array<Integer, 5>& ainvs() const { return a_; }

  const Integer& b2() const { return b2_; }
  const Integer& b4() const { return b4_; }
  const Integer& b6() const { return b6_; }
  const Integer& b8() const { return b8_; }
  const Integer& c4() const { return c4_; }
  const Integer& c6() const { return c6_; }
  const Integer& discriminant() const { return disc_; }
  Rational j_invariant() const;

  /// Model obtained by the substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
  /// Throws InvalidInput if the result is not integral.
  EllipticCurve change_coordinates(const Rational& u, const Integer& r, const Integer& s,
                                   const Integer& t) const;

  std::string to_string() const;  // "a1,a2,a3,a4,a6"
  friend bool operator==(const EllipticCurve& a, const EllipticCurve& b) { return a.a_ == b.a_; }

 private:
  std::array<Integer, 5> a_;
  Integer b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

enum class ReductionKind { Good, Multiplicative, Additive };
std::string_view to_string(ReductionKind kind);

struct ReductionType {
  std::int64_t p = 0;
  ReductionKind kind = ReductionKind::Good;
  std::optional<std::int64_t> ap;  // set for good reduction
};

/// Globally minimal model (Laska-Kraus-Connell), in the reduced form
/// a1, a3 in {0, 1}, a2 in {-1, 0, 1}.
EllipticCurve minimal_model(const EllipticCurve& curve);

/// Classification at p; assumes the model is minimal at p.
ReductionType reduction_type(const EllipticCurve& curve, std::int64_t p);

/// Trace of Frobenius p + 1 - #E(F_p). Throws BadReduction if p divides the
/// minimal discriminant.
std::int64_t ap(const EllipticCurve& curve, std::int64_t p);

/// Point count of the reduction: for each x, the number of y from a table
/// of square roots (full (x, y) enumeration at p = 2).
/// Requires good reduction of the given model at p; used as an oracle.
std::int64_t count_points_naive(const EllipticCurve& curve, std::int64_t p);

struct ApTable {
  std::vector<std::pair<std::int64_t, std::int64_t>> good;  // (p, a_p)
  std::vector<std::int64_t> bad;
};

/// a_p for all good primes p <= bound; bad primes are listed separately.
ApTable ap_range(const EllipticCurve& curve, std::int64_t bound, unsigned jobs = 1);

enum class CubicGalois { S3, C3, Partial, Split };
std::string_view to_string(CubicGalois g);

struct TwoDivisionData {
  IntPoly integral_cubic;  // 4x^3 + b2 x^2 + 2 b4 x + b6
  IntPoly cubic;           // monic: x^3 + b2 x^2 + 8 b4 x + 16 b6
  Integer discriminant;    // of the monic cubic
  CubicGalois galois = CubicGalois::S3;
  int degree = 6;          // [Q(E[2]) : Q]
};

TwoDivisionData two_division_data(const EllipticCurve& curve);

enum class FrobeniusOrder { Ramified = 0, One = 1, Two = 2, Three = 3 };

/// Order of Frobenius at q on E[2], read off from the number of roots of
/// the 2-division cubic mod q; Ramified when q | 2 * disc(minimal model).
FrobeniusOrder frob_order_in_S3(const EllipticCurve& curve, std::int64_t q);

}  // namespace levelraiser::ec
