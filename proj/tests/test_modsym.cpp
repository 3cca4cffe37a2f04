#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "levelraiser/ec_arith.hpp"
#include "levelraiser/error.hpp"
#include "levelraiser/modsym.hpp"
#include "levelraiser/poly.hpp"

using namespace levelraiser;
using namespace levelraiser::modsym;

namespace {

struct GenusOracle {
  std::int64_t index = 0, nu2 = 0, nu3 = 0, cusps = 0, genus = 0;
};

// Brute force: index by counting P^1(Z/N), elliptic points by counting roots,
// cusps by sum over d | N of phi(gcd(d, N/d)).
GenusOracle genus_oracle(std::int64_t n) {
  GenusOracle g;
  for (std::int64_t c = 0; c < n; ++c)
    for (std::int64_t d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++g.index;
  std::int64_t units = 0;
  for (std::int64_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) ++units;
  if (n == 1) g.index = 1, units = 1;
  else g.index /= units;
  for (std::int64_t x = 0; x < n; ++x) {
    if ((x * x + 1) % n == 0) ++g.nu2;
    if ((x * x + x + 1) % n == 0) ++g.nu3;
  }
  if (n == 1) g.nu2 = g.nu3 = 1;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    std::int64_t m = std::gcd(d, n / d), phi = 0;
    for (std::int64_t k = 1; k <= m; ++k)
      if (std::gcd(k, m) == 1) ++phi;
    g.cusps += phi;
  }
  // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
  g.genus = (12 + g.index - 3 * g.nu2 - 4 * g.nu3 - 6 * g.cusps) / 12;
  return g;
}

IntPoly int_charpoly(const QMatrix& op) { return IntPoly(integral_charpoly(op)); }

bool double_root(const IntPoly& p, std::int64_t a) {
  return p(Integer(a)) == 0 && p.derivative()(Integer(a)) == 0;
}

std::vector<Rational> add(std::vector<Rational> a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<Rational> manin_vector(const ModularSymbolSpace& sp, std::int64_t c, std::int64_t d) {
  auto i = sp.p1().index(c, d);
  REQUIRE(i.has_value());
  return sp.coordinates({{*i, 1}});
}

std::vector<HeckeTarget> targets_from_curve(const ec::EllipticCurve& e, const std::vector<std::int64_t>& qs) {
  std::vector<HeckeTarget> out;
  for (std::int64_t q : qs) out.push_back({q, ec::ap(e, q)});
  return out;
}

QMatrix times(const QMatrix& a, const QMatrix& b) { return a * b; }

}  // namespace

TEST_CASE("P1 list sizes") {
  CHECK(p1_list(11).size() == 12);
  CHECK(p1_list(215).size() == 264);
  CHECK(p1_list(1).size() == 1);
  for (std::int64_t n : {2, 12, 35, 77, 100}) CHECK(static_cast<std::int64_t>(p1_list(n).size()) == genus_oracle(n).index);
}

TEST_CASE("P1 index maps every pair to a unit multiple of its representative") {
  for (std::int64_t n : {11, 12, 35, 49}) {
    P1List p1(n);
    for (std::int64_t c = 0; c < n; ++c) {
      for (std::int64_t d = 0; d < n; ++d) {
        auto i = p1.index(c, d);
        if (std::gcd(std::gcd(c, d), n) != 1) {
          CHECK_FALSE(i.has_value());
          continue;
        }
        REQUIRE(i.has_value());
        const P1Element& rep = p1[*i];
        bool found = false;
        for (std::int64_t u = 1; u < n && !found; ++u)
          found = std::gcd(u, n) == 1 && (u * c) % n == rep.c && (u * d) % n == rep.d;
        CHECK(found);
        CHECK(p1.index(c - n, d + 2 * n) == i);
      }
    }
  }
}

TEST_CASE("genus data and dimensions agree with the brute-force oracle") {
  for (std::int64_t n = 1; n <= 120; ++n) {
    const GenusOracle g = genus_oracle(n);
    const GenusData gd = genus_data(n);
    CHECK(gd.index == g.index);
    CHECK(gd.nu2 == g.nu2);
    CHECK(gd.nu3 == g.nu3);
    CHECK(gd.cusps == g.cusps);
    CHECK(gd.genus == g.genus);
    auto sp = space(n);
    CHECK(static_cast<std::int64_t>(sp->dimension()) == 2 * g.genus + g.cusps - 1);
    CHECK(static_cast<std::int64_t>(sp->cuspidal_dimension()) == 2 * g.genus);
    CHECK(static_cast<std::int64_t>(sp->cusp_classes().size()) == g.cusps);
  }
}

TEST_CASE("space dimensions at the worked levels") {
  CHECK(space(11)->dimension() == 3);
  CHECK(space(11)->cuspidal_dimension() == 2);
  // 2g + cusps - 1 with g = 3 and two cusps
  CHECK(space(43)->dimension() == 7);
  CHECK(space(43)->cuspidal_dimension() == 6);
  CHECK(space(215)->dimension() == 45);
  CHECK(space(215)->cuspidal_dimension() == 42);
  CHECK(space(389)->dimension() == 65);
  CHECK(space(389)->cuspidal_dimension() == 64);
}

TEST_CASE("Manin relations hold for every symbol") {
  for (std::int64_t n : {11, 43, 77, 60}) {
    auto sp = space(n);
    const std::size_t dim = sp->dimension();
    for (const auto& e : sp->p1().elements()) {
      auto x = manin_vector(*sp, e.c, e.d);
      auto xs = manin_vector(*sp, e.d, -e.c);
      CHECK(add(x, xs) == std::vector<Rational>(dim, 0));
      auto xt = manin_vector(*sp, e.d, -e.c - e.d);
      auto xtt = manin_vector(*sp, -e.c - e.d, e.c);
      CHECK(add(add(x, xt), xtt) == std::vector<Rational>(dim, 0));
    }
  }
}

TEST_CASE("modular symbols to Manin symbols") {
  auto sp = space(11);
  const auto& p1 = sp->p1();
  auto id = modular_to_manin(Cusp::make(0, 1), Cusp::infinity(), p1);
  CHECK(id == ManinCombination{{*p1.index(0, 1), 1}});
  auto same = modular_to_manin(Cusp::make(2, 7), Cusp::make(2, 7), p1);
  CHECK(sp->coordinates(same) == std::vector<Rational>(sp->dimension(), 0));
  // {0, 1/3} + {1/3, oo} = {0, oo}
  auto lhs = add(sp->coordinates(modular_to_manin(Cusp::make(0, 1), Cusp::make(1, 3), p1)),
                 sp->coordinates(modular_to_manin(Cusp::make(1, 3), Cusp::infinity(), p1)));
  CHECK(lhs == sp->coordinates(id));
  // additivity along random paths at a composite level
  auto sp77 = space(77);
  const std::vector<Cusp> cusps{Cusp::make(0, 1), Cusp::make(3, 7), Cusp::make(-5, 11), Cusp::make(13, 29),
                                Cusp::infinity()};
  for (const auto& a : cusps)
    for (const auto& b : cusps)
      for (const auto& c : cusps) {
        auto ab = sp77->coordinates(modular_to_manin(a, b, sp77->p1()));
        auto bc = sp77->coordinates(modular_to_manin(b, c, sp77->p1()));
        auto ac = sp77->coordinates(modular_to_manin(a, c, sp77->p1()));
        CHECK(add(ab, bc) == ac);
      }
}

TEST_CASE("lifts to SL2(Z)") {
  for (std::int64_t n : {11, 215, 1}) {
    for (const auto& e : p1_list(n)) {
      auto g = lift_to_sl2z(e.c, e.d, n);
      CHECK(g.a * g.d - g.b * g.c == 1);
      CHECK(mod(g.c - e.c, n) == 0);
      CHECK(mod(g.d - e.d, n) == 0);
    }
  }
}

TEST_CASE("cusp classes") {
  CHECK(space(11)->cusp_classes().size() == 2);
  CHECK(space(77)->cusp_classes().size() == 4);
  CHECK(space(77)->cuspidal_dimension() == 14);
  CHECK(space(1)->cusp_classes().size() == 1);
  CHECK(space(1)->cuspidal_dimension() == 0);
  CHECK(cusps_equivalent(Cusp::make(0, 1), Cusp::make(1, 2), 11));
  CHECK(cusps_equivalent(Cusp::infinity(), Cusp::make(1, 11), 11));
  CHECK_FALSE(cusps_equivalent(Cusp::make(0, 1), Cusp::infinity(), 11));
  CHECK_FALSE(cusps_equivalent(Cusp::make(1, 7), Cusp::make(1, 11), 77));
  auto sp = space(77);
  CHECK(sp->cusp_class(Cusp::make(2, 7)) == sp->cusp_class(Cusp::make(1, 7)));
  auto bd = boundary_and_cuspidal(*sp);
  CHECK(bd.cusp_classes.size() == 4);
  CHECK(bd.cuspidal.rows() == 14);
  CHECK(times(bd.cuspidal, bd.boundary) == QMatrix(14, 4));
}

TEST_CASE("Hecke operators at level 11") {
  auto sp = space(11);
  CHECK(int_charpoly(sp->hecke_on(sp->cuspidal_basis(), 2)) == IntPoly({4, 4, 1}));
  CHECK(int_charpoly(sp->hecke_on(sp->cuspidal_basis(), 3)) == IntPoly({1, 2, 1}));
  // U_11 acts on the newform by a_11 = 1
  CHECK(int_charpoly(sp->hecke_on(sp->cuspidal_basis(), 11)) == IntPoly({1, -2, 1}));
  // Eisenstein part: T_2 on the full space has eigenvalue 1 + 2
  CHECK(int_charpoly(sp->hecke_matrix(2)) == IntPoly({4, 4, 1}) * IntPoly({-3, 1}));
}

TEST_CASE("Hecke operators at level 43") {
  auto sp = space(43);
  IntPoly t2 = int_charpoly(sp->hecke_on(sp->cuspidal_basis(), 2));
  CHECK(double_root(t2, -2));
  // (x + 2)^2 for 43a times (x^2 - 2)^2 for the two-dimensional factor
  CHECK(t2 == IntPoly({4, 4, 1}) * IntPoly({-2, 0, 1}) * IntPoly({-2, 0, 1}));
}

TEST_CASE("Eichler-Shimura: T_q char polys carry (x - a_q(E))^2") {
  const std::vector<std::pair<std::int64_t, ec::EllipticCurve>> cases{
      {11, ec::EllipticCurve::parse("0,-1,1,-10,-20")}, {43, ec::EllipticCurve::parse("0,1,1,0,0")}};
  for (const auto& [level, curve] : cases) {
    auto sp = space(level);
    for (std::int64_t q : primes_up_to(20)) {
      if (q == level) continue;
      IntPoly cp = int_charpoly(sp->hecke_on(sp->cuspidal_basis(), q));
      CHECK(double_root(cp, ec::ap(curve, q)));
    }
  }
}

TEST_CASE("Hecke operators commute") {
  for (std::int64_t level : {43, 77}) {
    auto sp = space(level);
    const std::vector<std::int64_t> qs{2, 3, 5, 13};
    for (std::int64_t q : qs)
      for (std::int64_t r : qs) {
        if (level % q == 0 || level % r == 0 || q >= r) continue;
        CHECK(times(sp->hecke_matrix(q), sp->hecke_matrix(r)) == times(sp->hecke_matrix(r), sp->hecke_matrix(q)));
      }
    if (level == 77) CHECK(times(sp->hecke_matrix(7), sp->hecke_matrix(2)) == times(sp->hecke_matrix(2), sp->hecke_matrix(7)));
  }
}

TEST_CASE("Heilbronn matrices") {
  for (std::int64_t n : {2, 3, 5, 7, 11, 13, 29}) {
    auto hs = heilbronn_merel(n);
    CHECK_FALSE(hs.empty());
    for (const auto& h : hs) {
      CHECK(h.a * h.d - h.b * h.c == n);
      CHECK(h.a > h.b);
      CHECK(h.b >= 0);
      CHECK(h.d > h.c);
      CHECK(h.c >= 0);
    }
    auto key = [](const SL2Matrix& h) { return std::tuple(h.a, h.b, h.c, h.d); };
    CHECK(std::is_sorted(hs.begin(), hs.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); }));
    CHECK(std::adjacent_find(hs.begin(), hs.end(), [&](const auto& x, const auto& y) { return key(x) == key(y); }) ==
          hs.end());
    auto again = heilbronn_merel(n);
    CHECK(std::equal(hs.begin(), hs.end(), again.begin(), again.end(),
                     [&](const auto& x, const auto& y) { return key(x) == key(y); }));
  }
}

TEST_CASE("degeneracy maps") {
  auto s77 = space(77), s11 = space(11), s7 = space(7);
  for (std::int64_t t : {1, 7}) {
    QMatrix d = degeneracy_matrix(*s77, *s11, t);
    CHECK(d.rows() == s77->dimension());
    CHECK(d.cols() == s11->dimension());
    for (std::int64_t q : {2, 3, 5}) CHECK(times(s77->hecke_matrix(q), d) == times(d, s11->hecke_matrix(q)));
  }
  QMatrix to7 = degeneracy_matrix(*s77, *s7, 1);
  CHECK(rank(times(s77->cuspidal_basis(), to7)) == 0);
  CHECK_THROWS_AS(degeneracy_matrix(*s77, *space(5), 1), Error);
  CHECK_THROWS_AS(degeneracy_matrix(*s77, *s11, 2), Error);
  // the two maps to 11 are independent on the cuspidal part
  QMatrix both(s77->cuspidal_dimension(), 2 * s11->dimension());
  QMatrix d1 = times(s77->cuspidal_basis(), degeneracy_matrix(*s77, *s11, 1));
  QMatrix d7 = times(s77->cuspidal_basis(), degeneracy_matrix(*s77, *s11, 7));
  for (std::size_t i = 0; i < both.rows(); ++i)
    for (std::size_t j = 0; j < s11->dimension(); ++j) {
      both(i, j) = d1(i, j);
      both(i, j + s11->dimension()) = d7(i, j);
    }
  CHECK(s77->cuspidal_dimension() - rank(both) == 10);
}

TEST_CASE("new subspaces") {
  CHECK(new_subspace(*space(11)).rows() == 2);
  CHECK(new_subspace(*space(77)).rows() == 10);
  CHECK(new_subspace(*space(215)).rows() == 30);
  CHECK(new_subspace(*space(43)).rows() == 6);
  // new subspace is Hecke stable
  auto sp = space(215);
  QMatrix nw = new_subspace(*sp);
  for (std::int64_t q : {2, 3, 5, 43}) {
    QMatrix image = times(nw, sp->hecke_matrix(q));
    QMatrix stacked(2 * nw.rows(), nw.cols());
    for (std::size_t i = 0; i < nw.rows(); ++i)
      for (std::size_t j = 0; j < nw.cols(); ++j) {
        stacked(i, j) = nw(i, j);
        stacked(i + nw.rows(), j) = image(i, j);
      }
    CHECK(rank(stacked) == nw.rows());
  }
}

TEST_CASE("integrality of char polys") {
  for (std::int64_t level : {11, 43, 77, 215}) {
    auto sp = space(level);
    QMatrix nw = new_subspace(*sp);
    for (std::int64_t q : primes_up_to(13)) {
      CHECK_NOTHROW(integral_charpoly(sp->hecke_on(sp->cuspidal_basis(), q)));
      CHECK_NOTHROW(integral_charpoly(sp->hecke_on(nw, q)));
    }
  }
}

TEST_CASE("integral reduction") {
  for (std::int64_t level : {11, 43, 77}) {
    auto sp = space(level);
    auto red = integral_reduction(*sp, sp->cuspidal_basis(), 3, {2, 5});
    CHECK(red.dimension() == sp->cuspidal_dimension());
    CHECK(red.operators.at(2).rows() == sp->cuspidal_dimension());
    CHECK(integral_lattice(*sp, sp->cuspidal_basis()).rows() == sp->cuspidal_dimension());
  }
  auto sp = space(11);
  auto r5 = integral_reduction(*sp, sp->cuspidal_basis(), 5, {2});
  CHECK(charpoly_mod(r5.operators.at(2), 5) == std::vector<std::int64_t>{4, 4, 1});
  auto r2 = integral_reduction(*sp, sp->cuspidal_basis(), 2, {3});
  CHECK(charpoly_mod(r2.operators.at(3), 2) == std::vector<std::int64_t>{1, 0, 1});
  // the integral matrix reduces to the stored operator
  QMatrix lat = integral_lattice(*sp, sp->cuspidal_basis());
  CHECK(reduce_mod(integral_hecke(*sp, lat, 3), 2) == r2.operators.at(3));
}

TEST_CASE("congruence witness at level 77 picks exactly one sign") {
  const auto e11 = ec::EllipticCurve::parse("0,-1,1,-10,-20");
  const auto targets = targets_from_curve(e11, {2, 3, 5, 13, 17, 19, 23, 29});
  auto minus = congruence_witness(77, 3, targets, HeckeTarget{7, -1});
  REQUIRE(minus.has_value());
  CHECK(minus->kernel_dimension > 0);
  CHECK(minus->new_dimension == 10);
  CHECK(minus->verify());
  auto plus = congruence_witness(77, 3, targets, HeckeTarget{7, 1});
  CHECK_FALSE(plus.has_value());
  // a_7(11a) = -2 = -(7 + 1) mod 3
  CHECK(mod(ec::ap(e11, 7) + 8, 3) == 0);
}

TEST_CASE("congruence witness at level 215 for 43a mod 2") {
  const auto e43 = ec::EllipticCurve::parse("0,1,1,0,0");
  const auto targets = targets_from_curve(e43, {2, 3, 7, 11, 13, 17, 19, 23, 29});
  auto w = congruence_witness(215, 2, targets, std::nullopt);
  REQUIRE(w.has_value());
  CHECK(w->kernel_dimension > 0);
  CHECK(w->new_dimension == 30);
  CHECK(w->verify());
  for (const auto& t : w->targets) CHECK((t.residue >= 0 && t.residue < 2));
}

TEST_CASE("witness verification rejects a tampered eigenvalue") {
  const auto e11 = ec::EllipticCurve::parse("0,-1,1,-10,-20");
  auto w = congruence_witness(77, 3, targets_from_curve(e11, {2, 5, 13}), HeckeTarget{7, -1});
  REQUIRE(w.has_value());
  auto bad = *w;
  bad.targets[0].residue = mod(bad.targets[0].residue + 1, 3);
  CHECK_FALSE(bad.verify());
  auto bad_up = *w;
  bad_up.up_target = HeckeTarget{7, 1};
  CHECK_FALSE(bad_up.verify());
}

TEST_CASE("quadratic twists of eigensystems") {
  CHECK(twist_eigensystem({{3, 1}}, 11) == std::vector<HeckeTarget>{{3, 1}});
  CHECK(twist_eigensystem({{2, 1}}, 11) == std::vector<HeckeTarget>{{2, -1}});
  const std::vector<HeckeTarget> t{{2, -2}, {3, -1}, {5, 1}, {7, -2}, {11, 1}, {13, 4}};
  for (std::int64_t q0 : {3, 5, 7, 13, 1427}) CHECK(twist_eigensystem(twist_eigensystem(t, q0), q0) == t);
  CHECK(twist_eigensystem(t, 11)[4] == HeckeTarget{11, 1});
  CHECK_THROWS_AS(twist_eigensystem(t, 2), Error);
  CHECK_THROWS_AS(twist_eigensystem(t, 9), Error);
}

TEST_CASE("invalid levels") {
  CHECK_THROWS_AS(ModularSymbolSpace(0), Error);
  CHECK_THROWS_AS(ModularSymbolSpace(-5), Error);
  CHECK_THROWS_AS(ModularSymbolSpace(50000), Error);
}
