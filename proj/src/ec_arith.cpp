#include "levelraiser/ec_arith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <thread>

#include "levelraiser/error.hpp"

namespace levelraiser::ec {

EllipticCurve::EllipticCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const auto& [A1, A2, A3, A4, A6] = a_;
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw Error(ErrorKind::SingularCurve, "singular model [" + to_string() + "]");
  if (1728 * disc_ != c4_ * c4_ * c4_ - c6_ * c6_) {
    throw Error(ErrorKind::InvalidInput, "invariant identity 1728*disc = c4^3 - c6^2 failed");
  }
}

EllipticCurve EllipticCurve::parse(const std::string& text) {
  std::array<Integer, 5> a;
  std::stringstream ss(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 5) throw Error(ErrorKind::InvalidInput, "curve needs exactly 5 coefficients: " + text);
    a[n++] = parse_integer(item);
  }
  if (n != 5) throw Error(ErrorKind::InvalidInput, "curve needs exactly 5 coefficients: " + text);
  return EllipticCurve(a);
}

Rational EllipticCurve::j_invariant() const {
  Rational j(c4_ * c4_ * c4_, disc_);
  j.canonicalize();
  return j;
}

EllipticCurve EllipticCurve::change_coordinates(const Rational& u, const Integer& r, const Integer& s,
                                                const Integer& t) const {
  if (u == 0) throw Error(ErrorKind::InvalidInput, "u must be nonzero");
  const auto& [A1, A2, A3, A4, A6] = a_;
  std::array<Rational, 5> out{
      Rational(A1 + 2 * s),
      Rational(A2 - s * A1 + 3 * r - s * s),
      Rational(A3 + r * A1 + 2 * t),
      Rational(A4 - s * A3 + 2 * r * A2 - (t + r * s) * A1 + 3 * r * r - 2 * s * t),
      Rational(A6 + r * A4 + r * r * A2 + r * r * r - t * A3 - t * t - r * t * A1),
  };
  const int weights[5] = {1, 2, 3, 4, 6};
  std::array<Integer, 5> ints;
  for (int i = 0; i < 5; ++i) {
    Rational upow = 1;
    for (int k = 0; k < weights[i]; ++k) upow *= u;
    Rational v = out[i] / upow;
    v.canonicalize();
    if (v.get_den() != 1) throw Error(ErrorKind::InvalidInput, "coordinate change leaves integral models");
    ints[i] = v.get_num();
  }
  return EllipticCurve(ints);
}

std::string EllipticCurve::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ",";
    out += a_[i].get_str();
  }
  return out;
}

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Good: return "Good";
    case ReductionKind::Multiplicative: return "Multiplicative";
    case ReductionKind::Additive: return "Additive";
  }
  return "?";
}

std::string_view to_string(CubicGalois g) {
  switch (g) {
    case CubicGalois::S3: return "S3";
    case CubicGalois::C3: return "C3";
    case CubicGalois::Partial: return "partial";
    case CubicGalois::Split: return "split";
  }
  return "?";
}

namespace {

// Kraus's local conditions for (c4, c6) to come from an integral model.
bool kraus_at_2(const Integer& c4, const Integer& c6) {
  if (mod(c6, 4) == 3) return true;
  if (c4 != 0 && valuation(c4, 2) < 4) return false;
  std::int64_t r = mod(c6, 32);
  return r == 0 || r == 8;
}

bool kraus_at_3(const Integer& c6) { return c6 == 0 || valuation(c6, 3) != 2; }

int capped_valuation(const Integer& n, const Integer& p, int divisor) {
  if (n == 0) return std::numeric_limits<int>::max();
  return valuation(n, p) / divisor;
}

Integer exact_div(const Integer& a, long d) {
  if (!mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(d))) {
    throw Error(ErrorKind::InvalidInput, "minimal model reconstruction not integral");
  }
  return a / d;
}

}  // namespace

EllipticCurve minimal_model(const EllipticCurve& curve) {
  const Integer& c4 = curve.c4();
  const Integer& c6 = curve.c6();
  const Integer& disc = curve.discriminant();
  Integer g = gcd(c4, c6);
  Integer u = 1;
  if (g != 1) {
    for (const auto& p : prime_divisors(g)) {
      int e = std::min({capped_valuation(c4, p, 4), capped_valuation(c6, p, 6), valuation(disc, p) / 12});
      auto scaled = [&](int k) {
        Integer p4 = pow_int(p, 4ul * k), p6 = pow_int(p, 6ul * k);
        return std::pair<Integer, Integer>(c4 / p4, c6 / p6);
      };
      if (p == 2) {
        while (e > 0) {
          auto [s4, s6] = scaled(e);
          if (kraus_at_2(s4, s6)) break;
          --e;
        }
      } else if (p == 3) {
        while (e > 0 && !kraus_at_3(scaled(e).second)) --e;
      }
      u *= pow_int(p, static_cast<unsigned long>(e));
    }
  }
  Integer C4 = c4 / pow_int(u, 4), C6 = c6 / pow_int(u, 6);
  Integer b2 = mod(-C6, 12);
  if (b2 > 6) b2 -= 12;
  Integer b4 = exact_div(b2 * b2 - C4, 24);
  Integer b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - C6, 216);
  Integer a1 = mod(b2, 2), a3 = mod(b6, 2);
  Integer a2 = exact_div(b2 - a1, 4);
  Integer a4 = exact_div(b4 - a1 * a3, 2);
  Integer a6 = exact_div(b6 - a3, 4);
  EllipticCurve minimal(a1, a2, a3, a4, a6);
  if (minimal.c4() != C4 || minimal.c6() != C6) {
    throw Error(ErrorKind::InvalidInput, "minimal model reconstruction changed c4/c6");
  }
  return minimal;
}

ReductionType reduction_type(const EllipticCurve& curve, std::int64_t p) {
  ReductionType out;
  out.p = p;
  if (mod(curve.discriminant(), p) != 0) {
    out.kind = ReductionKind::Good;
    out.ap = ap(curve, p);
  } else if (mod(curve.c4(), p) != 0) {
    out.kind = ReductionKind::Multiplicative;
  } else {
    out.kind = ReductionKind::Additive;
  }
  return out;
}

std::int64_t count_points_naive(const EllipticCurve& curve, std::int64_t p) {
  const std::int64_t a1 = mod(curve.a1(), p), a2 = mod(curve.a2(), p), a3 = mod(curve.a3(), p),
                     a4 = mod(curve.a4(), p), a6 = mod(curve.a6(), p);
  std::int64_t count = 1;  // point at infinity
  if (p == 2) {
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y)
        if (mod(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6, 2) == 0) ++count;
    return count;
  }
  // roots[v] = #{y : y^2 = v}; y -> 2y + a1 x + a3 is a bijection for odd p
  std::vector<std::int64_t> roots(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(mulmod(y, y, p))];
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(mulmod(mulmod(x, x, p), x, p) + mulmod(a2, mulmod(x, x, p), p) +
                                     mulmod(a4, x, p) + a6,
                                 p);
    const std::int64_t lin = mod(mulmod(a1, x, p) + a3, p);
    count += roots[static_cast<std::size_t>(mod(mulmod(4, rhs, p) + mulmod(lin, lin, p), p))];
  }
  return count;
}

namespace {

std::int64_t trace_good(const EllipticCurve& curve, std::int64_t p) {
  std::int64_t result = 0;
  if (p <= 3) {
    result = p + 1 - count_points_naive(curve, p);
  } else {
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(mulmod(y, y, p))] = 1;
    const std::int64_t c3 = 4 % p, c2 = mod(curve.b2(), p), c1 = mod(2 * curve.b4(), p), c0 = mod(curve.b6(), p);
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      std::int64_t v = mulmod(c3, x, p);
      v = mulmod(mod(v + c2, p), x, p);
      v = mulmod(mod(v + c1, p), x, p);
      v = mod(v + c0, p);
      sum += chi[static_cast<std::size_t>(v)];
    }
    result = -sum;
  }
  if (result * result > 4 * p) {
    throw Error(ErrorKind::InvalidInput, "Hasse bound violated at p = " + std::to_string(p));
  }
  return result;
}

}  // namespace

std::int64_t ap(const EllipticCurve& curve, std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  if (mod(curve.discriminant(), p) != 0) return trace_good(curve, p);
  EllipticCurve minimal = minimal_model(curve);
  if (mod(minimal.discriminant(), p) == 0) {
    throw Error(ErrorKind::BadReduction, "bad reduction at p = " + std::to_string(p));
  }
  return trace_good(minimal, p);
}

ApTable ap_range(const EllipticCurve& curve, std::int64_t bound, unsigned jobs) {
  ApTable table;
  const auto primes = primes_up_to(bound);
  if (primes.empty()) return table;
  const EllipticCurve minimal = minimal_model(curve);
  std::vector<std::int64_t> traces(primes.size(), 0);
  std::vector<bool> good(primes.size(), false);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < primes.size(); i += step) {
      if (mod(minimal.discriminant(), primes[i]) == 0) continue;
      good[i] = true;
      traces[i] = trace_good(minimal, primes[i]);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    // Each worker writes disjoint indices; vector<bool> is packed, so
    // goodness is recomputed afterwards instead of shared.
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) {
      threads.emplace_back([&, j] {
        for (std::size_t i = j; i < primes.size(); i += jobs) {
          if (mod(minimal.discriminant(), primes[i]) != 0) traces[i] = trace_good(minimal, primes[i]);
        }
      });
    }
    for (auto& t : threads) t.join();
    for (std::size_t i = 0; i < primes.size(); ++i) good[i] = mod(minimal.discriminant(), primes[i]) != 0;
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (good[i]) {
      table.good.emplace_back(primes[i], traces[i]);
    } else {
      table.bad.push_back(primes[i]);
    }
  }
  return table;
}

TwoDivisionData two_division_data(const EllipticCurve& curve) {
  TwoDivisionData out;
  out.integral_cubic = IntPoly(std::vector<Integer>{curve.b6(), 2 * curve.b4(), curve.b2(), 4});
  out.cubic = IntPoly(std::vector<Integer>{16 * curve.b6(), 8 * curve.b4(), curve.b2(), 1});
  out.discriminant = discriminant_cubic(out.cubic.coeff(2), out.cubic.coeff(1), out.cubic.coeff(0));
  const auto roots = integer_roots(out.cubic);
  if (roots.empty()) {
    const bool square = is_square(out.discriminant);
    out.galois = square ? CubicGalois::C3 : CubicGalois::S3;
    out.degree = square ? 3 : 6;
  } else {
    IntPoly quadratic = deflate(out.cubic, roots.front());
    Integer d = quadratic.coeff(1) * quadratic.coeff(1) - 4 * quadratic.coeff(0);
    const bool split = is_square(d);
    out.galois = split ? CubicGalois::Split : CubicGalois::Partial;
    out.degree = split ? 1 : 2;
  }
  return out;
}

FrobeniusOrder frob_order_in_S3(const EllipticCurve& curve, std::int64_t q) {
  const EllipticCurve minimal = minimal_model(curve);
  if (q == 2 || mod(minimal.discriminant(), q) == 0) return FrobeniusOrder::Ramified;
  const IntPoly cubic(std::vector<Integer>{16 * minimal.b6(), 8 * minimal.b4(), minimal.b2(), 1});
  switch (count_roots_mod(cubic, q)) {
    case 3: return FrobeniusOrder::One;
    case 1: return FrobeniusOrder::Two;
    case 0: return FrobeniusOrder::Three;
    default: throw Error(ErrorKind::InvalidInput, "2-division cubic is inseparable mod q");
  }
}

}  // namespace levelraiser::ec
