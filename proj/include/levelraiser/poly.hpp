#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levelraiser/numtheory.hpp"

namespace levelraiser {

/// Dense univariate polynomial over Z, constant term first. The zero
/// polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  /// Parses "[c0,c1,...,cn]".
  static IntPoly parse(const std::string& text);
  static IntPoly monomial(int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  Integer coeff(int i) const;
  const Integer& leading() const { return coeffs_.back(); }

  Integer operator()(const Integer& x) const;
  /// Sign of the value at a rational point, computed without fractions.
  int sign_at(const Rational& x) const;
  std::int64_t eval_mod(std::int64_t x, std::int64_t m) const;

  IntPoly derivative() const;
  /// P(-x).
  IntPoly reflected() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  std::string to_string() const;  // "[c0,c1,...]"

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Primitive gcd with positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
/// a / b over Q, made primitive; b must divide a.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

/// Squarefree part P / gcd(P, P'), made primitive with positive leading
/// coefficient.
IntPoly squarefree_part(const IntPoly& p);

/// Sturm chain of the squarefree part, kept as primitive integer polynomials
/// with the signs of the rational chain.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);
  /// Distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const;
  int real_roots() const;
  /// The squarefree polynomial the chain starts from.
  const IntPoly& base() const { return chain_.front(); }
  bool empty() const { return chain_.empty(); }

 private:
  int variations(const Rational& x) const;
  int variations_at_infinity(int direction) const;
  std::vector<IntPoly> chain_;
};

/// Number of distinct real roots of p in the half-open interval (a, b].
int sturm_count(const IntPoly& p, const Rational& a, const Rational& b);
/// Number of distinct real roots of p.
int real_root_count(const IntPoly& p);
/// Cauchy bound: every complex root has absolute value below it.
Integer root_bound(const IntPoly& p);

/// Resultant via the Sylvester matrix and a fraction-free determinant.
Integer resultant(const IntPoly& a, const IntPoly& b);
Integer discriminant_cubic(const Integer& a2, const Integer& a1, const Integer& a0);

/// Integer roots of a monic polynomial (with multiplicity ignored).
std::vector<Integer> integer_roots(const IntPoly& p);
/// Number of distinct roots in F_m, m prime.
int count_roots_mod(const IntPoly& p, std::int64_t m);
/// Exact quotient by (x - r); r must be a root.
IntPoly deflate(const IntPoly& p, const Integer& r);

}  // namespace levelraiser
