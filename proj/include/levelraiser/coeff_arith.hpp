#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levelraiser/numtheory.hpp"
#include "levelraiser/poly.hpp"

namespace levelraiser::coeff {

/// A p-th Fourier coefficient a_p, given through its characteristic
/// polynomial over Q (a power of the minimal polynomial). No number field
/// is ever constructed: every quantity below factors through the
/// characteristic polynomial.
class AlgebraicCoefficient {
 public:
  /// charpoly must be monic of degree >= 1; p must be prime.
  AlgebraicCoefficient(std::int64_t p, IntPoly charpoly);
  /// The rational coefficient a_p = a, i.e. charpoly x - a.
  static AlgebraicCoefficient rational(std::int64_t p, const Integer& a);

  std::int64_t p() const { return p_; }
  const IntPoly& charpoly() const { return charpoly_; }
  int degree() const { return charpoly_.degree(); }

 private:
  std::int64_t p_;
  IntPoly charpoly_;
};

enum class Shift { Minus = -1, Plus = 1 };

/// N(t - a_p) = P(t) for Shift::Minus, N(t + a_p) = (-1)^n P(-t) for Shift::Plus.
Integer norm_shift(const AlgebraicCoefficient& a, const Integer& t, Shift sign);

/// A residue characteristic ell together with the sign eps such that
/// a_p = eps (p + 1) modulo some prime of Zbar above ell.
struct CongruenceCharacteristic {
  Integer ell;
  int eps = 1;
  bool avoids_p = true;

  friend bool operator==(const CongruenceCharacteristic&, const CongruenceCharacteristic&) = default;
};

/// True iff (p+1+a_p)(p+1-a_p) is a unit, which happens only for p = 2
/// and a_2^2 = 8.
bool is_unit_obstructed(const AlgebraicCoefficient& a);

/// Every (ell, eps) with ell | N(p + 1 - eps a_p), ordered by eps = +1
/// first and then by ell.
std::vector<CongruenceCharacteristic> congruence_characteristics(const AlgebraicCoefficient& a);

/// Primes ell != p dividing N(p+1-a_p) N(p+1+a_p), increasing.
std::vector<Integer> avoiding_p_characteristics(const AlgebraicCoefficient& a);

/// Rational B with theta^(2n) <= B < theta^(2n) + 1, where theta is the
/// largest real root of x^n - x^(n-1) - 1. n must be odd and positive.
Rational cn_bound(int n);

/// Sharp threshold for rational coefficients: for every p > 2 some ell != p
/// divides (p+1)^2 - a_p^2. At p = 2, a_2 = +-1 gives (p+1)^2 - a^2 = 8,
/// a pure power of p.
inline constexpr int kRefinedC1 = 2;

struct ValidationReport {
  bool ok = true;
  std::string violation;  // empty when ok
};

/// Checks total reality (Sturm) and |sigma(a_p)| <= 2 sqrt(p) for every
/// root, using exact rational brackets around 2 sqrt(p).
ValidationReport validate(const AlgebraicCoefficient& a);

/// Number of distinct real roots of `poly` strictly outside
/// [-2 sqrt(p), 2 sqrt(p)]; exact.
int roots_outside_hasse_interval(const IntPoly& poly, std::int64_t p);

}  // namespace levelraiser::coeff
