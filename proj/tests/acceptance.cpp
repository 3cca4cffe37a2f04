// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance        run all criteria
//   acceptance N      run criterion N only

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "levelraiser/coeff_arith.hpp"
#include "levelraiser/error.hpp"
#include "levelraiser/family.hpp"
#include "levelraiser/levelraise.hpp"
#include "levelraiser/lmfdb_client.hpp"
#include "levelraiser/modsym.hpp"

using namespace levelraiser;

namespace {

// Pinned limits, seconds.
constexpr double kLimit1 = 1.0;
constexpr double kLimit3 = 1.0;
constexpr double kLimit4 = 10.0;
constexpr double kLimit5 = 60.0;
constexpr double kLimit6 = 300.0;
constexpr double kLimit8 = 30.0;
// All comparisons below are exact (tolerance 0).

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail.str("");
    if (!ok) detail << "; ";
    ok = false;
    detail << why;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit;  // <= 0: no runtime bound
  std::function<void(Outcome&)> run;
};

using i128 = __int128;

// sign of x + y sqrt(p)
int sign_surd(i128 x, i128 y, std::int64_t p) {
  const int sx = (x > 0) - (x < 0), sy = (y > 0) - (y < 0);
  if (sx == sy || sy == 0) return sx;
  if (sx == 0) return sy;
  const i128 lhs = x * x, rhs = y * y * p;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sx : sy;
}

std::int64_t hasse_floor(std::int64_t p) {
  std::int64_t t = 0;
  while ((t + 1) * (t + 1) <= 4 * p) ++t;
  return t;
}

// #E(F_q) by direct summation over x, completing the square for odd q.
std::int64_t count_points(const ec::EllipticCurve& e, std::int64_t q) {
  const std::int64_t a1 = mod(e.a1(), q), a2 = mod(e.a2(), q), a3 = mod(e.a3(), q), a4 = mod(e.a4(), q),
                     a6 = mod(e.a6(), q);
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < q; ++x) {
    const std::int64_t rhs = mod(((x + a2) * x % q + a4) % q * x + a6, q);
    const std::int64_t lin = mod(a1 * x + a3, q);
    if (q == 2) {
      for (std::int64_t y = 0; y < 2; ++y)
        if (mod(y * y + lin * y - rhs, 2) == 0) ++n;
      continue;
    }
    n += 1 + legendre(mod(4 * rhs + lin * lin, q), q);
  }
  return n;
}

std::int64_t ap_by_count(const ec::EllipticCurve& e, std::int64_t q) { return q + 1 - count_points(e, q); }

bool quadratic_irreducible_by_search(std::int64_t a, std::int64_t q, std::int64_t ell) {
  for (std::int64_t x = 0; x < ell; ++x)
    if (mod(x * x - a * x + q, ell) == 0) return false;
  return true;
}

bool has_prime_factor_other_than(Integer n, std::int64_t p) {
  n = abs(n);
  if (n == 0) return true;
  while (n % p == 0) n /= p;
  return n > 1;
}

struct Genus {
  std::int64_t cusps = 0, genus = 0;
};

Genus genus_oracle(std::int64_t n) {
  std::int64_t index = 0, units = 0, nu2 = 0, nu3 = 0, cusps = 0;
  for (std::int64_t c = 0; c < n; ++c)
    for (std::int64_t d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++index;
  for (std::int64_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) ++units;
  index /= units;
  for (std::int64_t x = 0; x < n; ++x) {
    if ((x * x + 1) % n == 0) ++nu2;
    if ((x * x + x + 1) % n == 0) ++nu3;
  }
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    const std::int64_t m = std::gcd(d, n / d);
    for (std::int64_t k = 1; k <= m; ++k)
      if (std::gcd(k, m) == 1) ++cusps;
  }
  return {cusps, (12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12};
}

const ec::EllipticCurve e11 = ec::EllipticCurve::parse("0,-1,1,-10,-20");
const ec::EllipticCurve e43 = ec::EllipticCurve::parse("0,1,1,0,0");

void criterion_1(Outcome& out) {
  const auto c = family::compute_1427();
  const auto e = family::family_curve(-11);
  if (c.count != 1424) out.fail("count " + std::to_string(c.count));
  if (count_points(e, 1427) != 1424) out.fail("oracle count " + std::to_string(count_points(e, 1427)));
  if (c.trace != 4) out.fail("trace " + std::to_string(c.trace));
  if (c.frobpoly != std::vector<Integer>{1427, -4, 1}) out.fail("frobenius polynomial");
  for (std::int64_t ell : raise::mazur_T()) {
    const bool oracle = quadratic_irreducible_by_search(4, 1427, ell);
    if (c.irreducible_mod.at(ell) != oracle) out.fail("library and root search disagree at " + std::to_string(ell));
    if (!oracle) out.fail("x^2 - 4x + 1427 has a root mod " + std::to_string(ell));
  }
  try {
    family::verify_1427();
  } catch (const Error& err) {
    out.fail(std::string("verify-1427: ") + err.what());
  }
}

void criterion_2(Outcome& out) {
  std::int64_t swept = 0, empty = 0;
  for (std::int64_t p : primes_up_to(50)) {
    const std::int64_t r = hasse_floor(p);
    for (std::int64_t a = -r; a <= r; ++a) {
      ++swept;
      if (coeff::congruence_characteristics(coeff::AlgebraicCoefficient::rational(p, a)).empty()) {
        ++empty;
        out.fail("empty at p=" + std::to_string(p) + " a=" + std::to_string(a));
      }
    }
    // x^2 + b x + c, roots real in [-2 sqrt p, 2 sqrt p]: |b| <= 2r, |c| <= 4p
    for (std::int64_t b = -2 * r; b <= 2 * r; ++b) {
      for (std::int64_t c = -4 * p; c <= 4 * p; ++c) {
        if (b * b - 4 * c < 0 || b * b > 16 * p) continue;
        // f(+-2 sqrt p) = 4p + c +- 2b sqrt p
        if (sign_surd(4 * p + c, 2 * b, p) < 0 || sign_surd(4 * p + c, -2 * b, p) < 0) continue;
        ++swept;
        const coeff::AlgebraicCoefficient ac(p, IntPoly(std::vector<Integer>{c, b, 1}));
        if (!coeff::validate(ac).ok) out.fail("validate rejects admissible p=" + std::to_string(p));
        const std::int64_t t = p + 1;
        const Integer prod = Integer(t * t + b * t + c) * Integer(t * t - b * t + c);
        const bool oracle_empty = abs(prod) == 1;
        const bool got_empty = coeff::congruence_characteristics(ac).empty();
        if (got_empty != oracle_empty) out.fail("disagreement at p=" + std::to_string(p));
        if (got_empty) {
          ++empty;
          if (!(p == 2 && b == 0 && c == -8))
            out.fail("empty at p=" + std::to_string(p) + " b=" + std::to_string(b) + " c=" + std::to_string(c));
        }
      }
    }
  }
  if (empty != 1) out.fail("empty cases " + std::to_string(empty));
  if (out.ok) out.detail << "swept " << swept << ", unique empty case p=2 x^2-8";
}

void criterion_3(Outcome& out) {
  std::int64_t swept = 0;
  for (std::int64_t p : primes_up_to(500)) {
    const std::int64_t r = hasse_floor(p);
    for (std::int64_t a = -r; a <= r; ++a) {
      ++swept;
      const bool empty = coeff::avoiding_p_characteristics(coeff::AlgebraicCoefficient::rational(p, a)).empty();
      const bool oracle_empty = !has_prime_factor_other_than(Integer((p + 1) * (p + 1) - a * a), p);
      if (empty != oracle_empty) out.fail("oracle disagreement p=" + std::to_string(p) + " a=" + std::to_string(a));
      const bool expected_empty = p == 2 && (a == 1 || a == -1);
      if (empty != expected_empty) out.fail("p=" + std::to_string(p) + " a=" + std::to_string(a));
    }
  }
  if (out.ok) out.detail << swept << " pairs";
}

void criterion_4(Outcome& out) {
  const auto s11 = modsym::space(11);
  for (std::int64_t q : primes_up_to(20)) {
    if (q == 11) continue;
    const std::int64_t a = ap_by_count(e11, q);
    const IntPoly cp(modsym::integral_charpoly(s11->hecke_on(s11->cuspidal_basis(), q)));
    const IntPoly expected(std::vector<Integer>{a * a, -2 * a, 1});
    if (!(cp == expected)) out.fail("level 11, q=" + std::to_string(q));
  }
  const auto s43 = modsym::space(43);
  for (std::int64_t q : primes_up_to(20)) {
    const std::int64_t a = ap_by_count(e43, q);
    const IntPoly cp(modsym::integral_charpoly(s43->hecke_on(s43->cuspidal_basis(), q)));
    if (cp(Integer(a)) != 0 || cp.derivative()(Integer(a)) != 0)
      out.fail("level 43, (x - a_q)^2 does not divide at q=" + std::to_string(q));
  }
}

void criterion_5(Outcome& out) {
  if (!raise::irreducibility_certificate(e11, 3, 200)) out.fail("no mod 3 irreducibility certificate");
  raise::VerifyOptions opts;
  opts.B = 30;
  const auto minus = raise::verify(e11, 7, 3, -1, opts);
  if (minus.status != raise::CertificateStatus::Witnessed) out.fail("eps=-1 status " + std::string(to_string(minus.status)));
  if (minus.level != 77) out.fail("eps=-1 level " + std::to_string(minus.level));
  if (!raise::reverify(minus)) out.fail("eps=-1 certificate does not re-verify");
  const auto plus = raise::verify(e11, 7, 3, 1, opts);
  if (plus.status != raise::CertificateStatus::NotFound) out.fail("eps=+1 status " + std::string(to_string(plus.status)));
}

void criterion_6(Outcome& out) {
  const auto dim_new = modsym::new_subspace(*modsym::space(215)).rows();
  if (dim_new != 30) out.fail("dim new " + std::to_string(dim_new));
  const auto c = raise::verify(e43, 5, 2, 1);
  if (c.status != raise::CertificateStatus::WitnessedWithL2Caveat)
    out.fail("status " + std::string(to_string(c.status)));
  if (c.level != 215) out.fail("level " + std::to_string(c.level));
  if (!raise::reverify(c)) out.fail("certificate does not re-verify");
  if (out.ok) out.detail << "dim new " << dim_new << ", " << to_string(c.status);
}

void criterion_7(Outcome& out) {
  lmfdb::ClientOptions lo = lmfdb::default_options();
  lo.offline = true;
  const auto rec = lmfdb::fetch_curve("43.a1", lo);
  raise::HypothesisOptions ho;
  ho.q_bound = 200;
  ho.isogeny_class_size = rec.isogeny_class_size;
  const auto r = raise::check_hypotheses(e43, ho);
  if (r.trivial_isogeny_graph != true) out.fail("(i)");
  if (!r.degree_six) out.fail("(ii)");
  if (!r.semistable_good_at_2) out.fail("(iii)");
  if (!r.squarefree_discriminant) out.fail("(iv)");
  for (std::int64_t ell : raise::mazur_T()) {
    const auto it = r.certificates.find(ell);
    if (it == r.certificates.end() || !it->second) {
      out.fail("no certificate for ell=" + std::to_string(ell));
      continue;
    }
    const std::int64_t q = *it->second;
    if (q > 200) out.fail("certificate beyond bound for ell=" + std::to_string(ell));
    const std::int64_t a = ap_by_count(e43, q);
    const bool oracle = ell == 2 ? mod(a, 2) == 1 && q != 2 : q != ell && quadratic_irreducible_by_search(a, q, ell);
    if (!oracle || e43.discriminant() % q == 0) out.fail("certificate q=" + std::to_string(q) + " fails for ell=" + std::to_string(ell));
  }
}

void criterion_8(Outcome& out) {
  std::mt19937_64 rng(1427);
  std::uniform_int_distribution<long> t(-1000000 / 1427, 1000000 / 1427);
  int members = 0;
  while (members < 100) {
    const Integer k = Integer(t(rng)) * 1427 - 11;
    if (abs(k) > 1000000) continue;
    ++members;
    const auto m = family::family_member(k);
    if (!m.absolutely_irreducible_all_T()) out.fail("not certified k=" + to_string(k));
    if (m.odd_certificate_prime != 1427) out.fail("certificate prime k=" + to_string(k));
    if (family::cubic_galois(k - 1).galois != family::CubicGalois::S3) out.fail("cubic not S3 k=" + to_string(k));
    // a_1427 is the same for every member; check irreducibility mod odd ell by search
    const std::int64_t a = ap_by_count(m.curve, 1427);
    for (std::int64_t ell : raise::mazur_T()) {
      if (ell == 2) continue;
      if (!quadratic_irreducible_by_search(a, 1427, ell)) out.fail("reducible mod " + std::to_string(ell) + " k=" + to_string(k));
    }
  }
  if (out.ok) out.detail << members << " members";
}

bool cubic_has_root_mod(const ec::EllipticCurve& e, std::int64_t q) {
  for (std::int64_t x = 0; x < q; ++x) {
    const Integer v = ((4 * Integer(x) + e.b2()) * x + 2 * e.b4()) * x + e.b6();
    if (mod(v, q) == 0) return true;
  }
  return false;
}

void criterion_9(Outcome& out) {
  const auto r = raise::aux_primes(e43, 5, 200);
  if (r.primes.empty()) out.fail("empty");
  if (std::find(r.primes.begin(), r.primes.end(), 11) == r.primes.end()) out.fail("11 missing");
  const Integer disc = e43.discriminant();
  for (std::int64_t q : r.primes) {
    const bool ok = q % 4 == 3 && (2 * 5 * disc) % q != 0 && !cubic_has_root_mod(e43, q) && legendre(5, q) == 1;
    if (!ok) out.fail("q=" + std::to_string(q) + " fails re-verification");
  }
  if (out.ok) {
    out.detail << "primes";
    for (std::int64_t q : r.primes) out.detail << ' ' << q;
  }
}

void criterion_10(Outcome& out) {
  for (std::int64_t level : {11, 43, 77, 215}) {
    const auto sp = modsym::space(level);
    const Genus g = genus_oracle(level);
    const auto full = static_cast<std::int64_t>(sp->dimension());
    const auto cusp = static_cast<std::int64_t>(sp->cuspidal_dimension());
    if (full != 2 * g.genus + g.cusps - 1) out.fail("full dim at " + std::to_string(level));
    if (cusp != 2 * g.genus) out.fail("cuspidal dim at " + std::to_string(level));
    const auto& t2 = sp->hecke_matrix(2);
    const auto& t3 = sp->hecke_matrix(3);
    if (!(t2 * t3 == t3 * t2)) out.fail("T2 T3 != T3 T2 at " + std::to_string(level));
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "F_1427 certificate", kLimit1, criterion_1},
      {2, "unit-obstruction boundary", 0, criterion_2},
      {3, "C1 sharpness", kLimit3, criterion_3},
      {4, "Eichler-Shimura at 11 and 43", kLimit4, criterion_4},
      {5, "level raising 11a p=7 ell=3", kLimit5, criterion_5},
      {6, "strong level raising 43a p=5 ell=2", kLimit6, criterion_6},
      {7, "hypothesis checker on 43a", 0, criterion_7},
      {8, "family at scale", kLimit8, criterion_8},
      {9, "auxiliary primes 43a p=5", 0, criterion_9},
      {10, "dimension identities", 0, criterion_10},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs >= c.limit) out.fail("runtime " + std::to_string(secs) + " s over limit");
    failures += !out.ok;
    std::printf("%s %2d %-38s %8.3f s", out.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs);
    if (c.limit > 0) std::printf(" (limit %.0f s)", c.limit);
    const std::string detail = out.detail.str();
    if (!detail.empty()) std::printf("  %s", detail.c_str());
    std::printf("\n");
  }
  return failures ? 1 : 0;
}
