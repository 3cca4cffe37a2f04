#include "levelraiser/coeff_arith.hpp"

#include <algorithm>

#include "levelraiser/error.hpp"

namespace levelraiser::coeff {

AlgebraicCoefficient::AlgebraicCoefficient(std::int64_t p, IntPoly charpoly)
    : p_(p), charpoly_(std::move(charpoly)) {
  if (!is_prime(p_)) throw Error(ErrorKind::InvalidInput, std::to_string(p_) + " is not prime");
  if (charpoly_.degree() < 1 || !charpoly_.is_monic()) {
    throw Error(ErrorKind::InvalidInput, "characteristic polynomial must be monic of degree >= 1");
  }
}

AlgebraicCoefficient AlgebraicCoefficient::rational(std::int64_t p, const Integer& a) {
  return AlgebraicCoefficient(p, IntPoly(std::vector<Integer>{-a, 1}));
}

Integer norm_shift(const AlgebraicCoefficient& a, const Integer& t, Shift sign) {
  const IntPoly& poly = a.charpoly();
  if (sign == Shift::Minus) return poly(t);
  Integer value = poly(-t);
  return a.degree() % 2 == 0 ? value : Integer(-value);
}

bool is_unit_obstructed(const AlgebraicCoefficient& a) {
  const Integer t = a.p() + 1;
  Integer product = norm_shift(a, t, Shift::Minus) * norm_shift(a, t, Shift::Plus);
  return abs(product) == 1;
}

std::vector<CongruenceCharacteristic> congruence_characteristics(const AlgebraicCoefficient& a) {
  const Integer t = a.p() + 1;
  std::vector<CongruenceCharacteristic> out;
  for (int eps : {1, -1}) {
    // a_p = eps (p+1) mod l  <=>  l | p + 1 - eps a_p
    Integer norm = norm_shift(a, t, eps == 1 ? Shift::Minus : Shift::Plus);
    if (norm == 0) throw Error(ErrorKind::ZeroNorm, "a root of the charpoly equals +-(p+1)");
    for (const auto& ell : prime_divisors(norm)) {
      out.push_back({ell, eps, ell != a.p()});
    }
  }
  return out;
}

std::vector<Integer> avoiding_p_characteristics(const AlgebraicCoefficient& a) {
  std::vector<Integer> out;
  for (const auto& c : congruence_characteristics(a)) {
    if (c.avoids_p) out.push_back(c.ell);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational cn_bound(int n) {
  if (n < 1 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidDegree, "cn_bound needs an odd degree n >= 1, got " + std::to_string(n));
  }
  // f(x) = x^n - x^(n-1) - 1 is increasing on [1, 2], f(1) = -1, f(2) >= 0.
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  c[static_cast<std::size_t>(n - 1)] -= 1;
  c[0] -= 1;
  const IntPoly f(std::move(c));
  auto power = [n](const Rational& x) {
    Rational r = 1;
    for (int i = 0; i < 2 * n; ++i) r *= x;
    return r;
  };
  Rational lo = 1, hi = 2;
  const Rational width = Rational(1, 1u << std::min(n, 30));
  while (hi - lo >= width || power(hi) - power(lo) >= Rational(1, 1024)) {
    Rational mid = (lo + hi) / 2;
    if (f.sign_at(mid) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Outward rounding of hi^(2n) to a multiple of 1/1024.
  Rational bound = power(hi) * 1024;
  Integer ceil_num;
  mpz_cdiv_q(ceil_num.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  Rational out(ceil_num, 1024);
  out.canonicalize();
  return out;
}

int roots_outside_hasse_interval(const IntPoly& poly, std::int64_t p) {
  IntPoly q = squarefree_part(poly);
  if (q.degree() <= 0) return 0;
  // Split off roots exactly at +-2 sqrt(p); they count as inside.
  const IntPoly boundary(std::vector<Integer>{Integer(-4 * p), 0, 1});
  IntPoly g = poly_gcd(q, boundary);
  if (g.degree() > 0) q = exact_quotient(q, g);
  if (q.degree() <= 0) return 0;

  const SturmSequence sturm(q);
  const int total = sturm.real_roots();
  const Integer four_p = 4 * p;
  for (unsigned k = 0;; k += 8) {
    // m / 2^k < 2 sqrt(p) < (m + 1) / 2^k
    Integer scale = pow_int(2, k);
    Integer m;
    Integer target = four_p * scale * scale;
    mpz_sqrt(m.get_mpz_t(), target.get_mpz_t());
    if (m * m == target) throw Error(ErrorKind::InvalidInput, "4p is a perfect square");
    Rational l(m, scale), u(m + 1, scale);
    l.canonicalize();
    u.canonicalize();
    const int ambiguous = sturm.count(l, u) - (q.sign_at(u) == 0 ? 1 : 0) + sturm.count(-u, -l) -
                          (q.sign_at(-l) == 0 ? 1 : 0);
    if (ambiguous != 0) continue;
    const int inside = sturm.count(-l, l) + (q.sign_at(-l) == 0 ? 1 : 0);
    return total - inside;
  }
}

ValidationReport validate(const AlgebraicCoefficient& a) {
  ValidationReport report;
  const SturmSequence sturm(a.charpoly());
  if (sturm.real_roots() != sturm.base().degree()) {
    report.ok = false;
    report.violation = "not totally real: charpoly " + a.charpoly().to_string() + " has non-real roots";
    return report;
  }
  if (int outside = roots_outside_hasse_interval(a.charpoly(), a.p()); outside > 0) {
    report.ok = false;
    report.violation = "Hasse bound violated: " + std::to_string(outside) +
                       " root(s) outside [-2 sqrt(p), 2 sqrt(p)] for p = " + std::to_string(a.p());
  }
  return report;
}

}  // namespace levelraiser::coeff
