#include "levelraiser/modsym.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "levelraiser/error.hpp"

namespace levelraiser::modsym {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_level(std::int64_t level) {
  if (level < 1) throw Error(ErrorKind::InvalidInput, "level must be positive");
  if (level > 46340) throw Error(ErrorKind::InvalidInput, "level too large");
}

void add_to(ManinCombination& acc, const ManinCombination& terms, std::int64_t sign) {
  for (const auto& [i, c] : terms) {
    auto& slot = acc[i];
    slot += sign * c;
    if (slot == 0) acc.erase(i);
  }
}

// {0, u/v} via continued-fraction convergents.
ManinCombination zero_to(const Cusp& cusp, const P1List& p1) {
  ManinCombination out;
  if (cusp.num == 0) return out;
  auto add = [&](std::int64_t c, std::int64_t d) {
    auto idx = p1.index(c, d);
    if (!idx) throw Error(ErrorKind::InvalidInput, "convergent outside P1");
    auto& slot = out[*idx];
    slot += 1;
    if (slot == 0) out.erase(*idx);
  };
  add(0, 1);
  if (cusp.den == 0) return out;
  std::int64_t q_prev2 = 1, q_prev1 = 0;  // q_{-2}, q_{-1}
  std::int64_t u = cusp.num, v = cusp.den;
  int j = 0;
  while (v != 0) {
    std::int64_t a = floor_div(u, v);
    std::int64_t r = u - a * v;
    std::int64_t q = a * q_prev1 + q_prev2;
    std::int64_t sign = (j % 2 == 0) ? -1 : 1;  // (-1)^(j-1)
    add(sign * q, q_prev1);
    q_prev2 = q_prev1;
    q_prev1 = q;
    u = v;
    v = r;
    ++j;
  }
  return out;
}

}  // namespace

P1List::P1List(std::int64_t level) : level_(level) {
  check_level(level);
  const std::int64_t n = level;
  lookup_.assign(static_cast<std::size_t>(n * n), -1);
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u <= std::max<std::int64_t>(n - 1, 1); ++u)
    if (std::gcd(u, n) == 1) units.push_back(u % n);
  for (std::int64_t c = 0; c < n; ++c) {
    for (std::int64_t d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1) continue;
      if (lookup_[c * n + d] >= 0) continue;
      auto idx = static_cast<std::int32_t>(elements_.size());
      elements_.push_back({c, d});
      for (std::int64_t u : units) lookup_[(u * c % n) * n + (u * d % n)] = idx;
    }
  }
}

std::optional<std::size_t> P1List::index(std::int64_t c, std::int64_t d) const {
  std::int64_t cc = mod(c, level_), dd = mod(d, level_);
  std::int32_t idx = lookup_[cc * level_ + dd];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

std::vector<P1Element> p1_list(std::int64_t level) { return P1List(level).elements(); }

Cusp Cusp::make(std::int64_t num, std::int64_t den) {
  if (num == 0 && den == 0) throw Error(ErrorKind::InvalidInput, "0/0 is not a cusp");
  if (den == 0) return infinity();
  std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

bool cusps_equivalent(const Cusp& a, const Cusp& b, std::int64_t level) {
  if (level == 1) return true;
  const std::int64_t g = std::gcd(a.den, level);
  if (g != std::gcd(b.den, level)) return false;
  for (std::int64_t s = 1; s < level; ++s) {
    if (std::gcd(s, level) != 1) continue;
    if (mod(b.den - s * mod(a.den, level), level) != 0) continue;
    std::int64_t s_inv = invmod(s, level);
    if (mod(mod(b.num, g) - mulmod(s_inv, mod(a.num, g), g), g) == 0) return true;
  }
  return false;
}

SL2Matrix lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level) {
  c = mod(c, level);
  d = mod(d, level);
  if (level == 1) return {1, 0, 0, 1};
  if (std::gcd(std::gcd(c, d), level) != 1) throw Error(ErrorKind::InvalidInput, "(c : d) not in P1");
  std::int64_t cc = c == 0 ? level : c;
  std::int64_t dd = d;
  while (std::gcd(cc, dd) != 1) dd += level;
  std::int64_t x = 0, y = 0;
  ext_gcd(cc, dd, x, y);  // x cc + y dd = 1
  return {y, -x, cc, dd};
}

ManinCombination modular_to_manin(const Cusp& alpha, const Cusp& beta, const P1List& p1) {
  if (alpha == beta) return {};
  ManinCombination out = zero_to(beta, p1);
  add_to(out, zero_to(alpha, p1), -1);
  return out;
}

std::vector<SL2Matrix> heilbronn_merel(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Heilbronn matrices need n >= 1");
  std::vector<SL2Matrix> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    for (std::int64_t d = 1; a + d <= n + 1; ++d) {
      std::int64_t bc = a * d - n;
      if (bc < 0) continue;
      if (bc == 0) {
        for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (std::int64_t b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      for (std::int64_t b = 1; b < a; ++b) {
        if (bc % b != 0) continue;
        std::int64_t c = bc / b;
        if (c < d) out.push_back({a, b, c, d});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SL2Matrix& x, const SL2Matrix& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  });
  return out;
}

GenusData genus_data(std::int64_t level) {
  check_level(level);
  GenusData g;
  auto primes = prime_factors(level);
  g.index = level;
  for (std::int64_t p : primes) g.index = g.index / p * (p + 1);
  if (level % 4 == 0) {
    g.nu2 = 0;
  } else {
    g.nu2 = 1;
    for (std::int64_t p : primes) {
      if (p == 2) continue;
      g.nu2 *= (p % 4 == 1) ? 2 : 0;
    }
  }
  if (level % 9 == 0) {
    g.nu3 = 0;
  } else {
    g.nu3 = 1;
    for (std::int64_t p : primes) {
      if (p == 3) continue;
      g.nu3 *= (p % 3 == 1) ? 2 : 0;
    }
  }
  g.cusps = 0;
  for (std::int64_t d : divisors(level)) g.cusps += euler_phi(std::gcd(d, level / d));
  // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
  std::int64_t twelve_g = 12 + g.index - 3 * g.nu2 - 4 * g.nu3 - 6 * g.cusps;
  if (twelve_g % 12 != 0) throw Error(ErrorKind::DimensionMismatch, "non-integral genus");
  g.genus = twelve_g / 12;
  return g;
}

ModularSymbolSpace::ModularSymbolSpace(std::int64_t level)
    : level_(level), p1_(level), genus_(genus_data(level)) {
  solve_relations();
  const auto expected = static_cast<std::size_t>(2 * genus_.genus + genus_.cusps - 1);
  if (dimension() != expected) {
    throw Error(ErrorKind::DimensionMismatch, "level " + std::to_string(level) + ": dimension " +
                                                  std::to_string(dimension()) + ", expected " +
                                                  std::to_string(expected));
  }
  compute_boundary();
  if (cusps_.size() != static_cast<std::size_t>(genus_.cusps) ||
      cuspidal_dimension() != static_cast<std::size_t>(2 * genus_.genus)) {
    throw Error(ErrorKind::DimensionMismatch, "level " + std::to_string(level) + ": cuspidal dimension " +
                                                  std::to_string(cuspidal_dimension()));
  }
  compute_integral_structure();
}

void ModularSymbolSpace::solve_relations() {
  const std::size_t n = p1_.size();
  std::vector<std::size_t> s_image(n);
  for (std::size_t i = 0; i < n; ++i) s_image[i] = *p1_.index(p1_[i].d, -p1_[i].c);

  // Two-term relations x + xS = 0: every symbol is +-(a representative) or 0.
  std::vector<bool> zero(n, false);
  std::vector<std::size_t> rep(n);
  std::vector<int> sign(n, 1);
  std::vector<std::ptrdiff_t> var_of(n, -1);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (s_image[i] == i) {
      zero[i] = true;
      continue;
    }
    rep[i] = std::min(i, s_image[i]);
    sign[i] = rep[i] == i ? 1 : -1;
    if (rep[i] == i) {
      var_of[i] = static_cast<std::ptrdiff_t>(reps.size());
      reps.push_back(i);
    }
  }

  // Three-term relations x + xT + xT^2 = 0.
  QMatrix relations;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    const auto& e = p1_[i];
    std::size_t j = *p1_.index(e.d, -e.c - e.d);
    std::size_t k = *p1_.index(-e.c - e.d, e.c);
    seen[i] = seen[j] = seen[k] = true;
    std::vector<Rational> row(reps.size(), 0);
    bool nonzero = false;
    for (std::size_t x : {i, j, k}) {
      if (zero[x]) continue;
      row[var_of[rep[x]]] += sign[x];
      nonzero = true;
    }
    if (nonzero) relations.append_row(row);
  }

  std::vector<std::size_t> pivots;
  if (relations.rows() > 0) relations = rref(relations, &pivots);
  std::vector<std::ptrdiff_t> pivot_row(reps.size(), -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<std::ptrdiff_t>(r);
  std::vector<std::ptrdiff_t> free_pos(reps.size(), -1);
  for (std::size_t v = 0; v < reps.size(); ++v) {
    if (pivot_row[v] >= 0) continue;
    free_pos[v] = static_cast<std::ptrdiff_t>(basis_.size());
    basis_.push_back(reps[v]);
  }

  manin_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (zero[i]) continue;
    auto v = static_cast<std::size_t>(var_of[rep[i]]);
    if (free_pos[v] >= 0) {
      manin_[i].emplace_back(static_cast<std::size_t>(free_pos[v]), Rational(sign[i]));
      continue;
    }
    auto r = static_cast<std::size_t>(pivot_row[v]);
    for (std::size_t f = 0; f < reps.size(); ++f) {
      if (free_pos[f] < 0 || relations(r, f) == 0) continue;
      manin_[i].emplace_back(static_cast<std::size_t>(free_pos[f]), -relations(r, f) * sign[i]);
    }
  }
}

std::vector<Rational> ModularSymbolSpace::coordinates(const ManinCombination& symbols) const {
  std::vector<Rational> out(dimension(), 0);
  for (const auto& [i, c] : symbols)
    for (const auto& [j, x] : manin_[i]) out[j] += x * c;
  return out;
}

std::size_t ModularSymbolSpace::cusp_class(const Cusp& cusp) const {
  for (std::size_t i = 0; i < cusps_.size(); ++i)
    if (cusps_equivalent(cusps_[i], cusp, level_)) return i;
  throw Error(ErrorKind::InvalidInput, "cusp not in class list");
}

void ModularSymbolSpace::compute_boundary() {
  auto class_of = [&](const Cusp& c) {
    for (std::size_t i = 0; i < cusps_.size(); ++i)
      if (cusps_equivalent(cusps_[i], c, level_)) return i;
    cusps_.push_back(c);
    return cusps_.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ends(p1_.size());
  for (std::size_t i = 0; i < p1_.size(); ++i) {
    SL2Matrix g = lift_to_sl2z(p1_[i].c, p1_[i].d, level_);
    ends[i] = {class_of(Cusp::make(g.a, g.c)), class_of(Cusp::make(g.b, g.d))};
  }
  boundary_ = QMatrix(dimension(), cusps_.size());
  for (std::size_t r = 0; r < dimension(); ++r) {
    const auto& [plus, minus] = ends[basis_[r]];
    boundary_(r, plus) += 1;
    boundary_(r, minus) -= 1;
  }
  if (dimension() == 0) {
    cuspidal_ = QMatrix(0, 0);
  } else if (cusps_.empty()) {
    cuspidal_ = QMatrix::identity(dimension());
  } else {
    cuspidal_ = left_kernel(boundary_);
  }
}

void ModularSymbolSpace::compute_integral_structure() {
  const std::size_t d = dimension();
  if (d == 0) {
    integral_ = QMatrix(0, 0);
    return;
  }
  std::vector<std::vector<Rational>> rows;
  Integer den = 1;
  for (const auto& sparse : manin_) {
    if (sparse.empty()) continue;
    std::vector<Rational> row(d, 0);
    for (const auto& [j, x] : sparse) {
      row[j] = x;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    // Normalize sign so that duplicates collapse.
    for (const auto& x : row) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : row) y = -y;
      break;
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  ZMatrix z(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Rational scaled = rows[i][j] * den;
      z(i, j) = scaled.get_num();
    }
  }
  ZMatrix h = hnf(z);
  if (h.rows() != d) throw Error(ErrorKind::DimensionMismatch, "Manin symbols do not span");
  integral_ = to_rational(h);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) integral_(i, j) /= den;
}

const QMatrix& ModularSymbolSpace::hecke_matrix(std::int64_t q) const {
  if (q < 1) throw Error(ErrorKind::InvalidInput, "Hecke index must be positive");
  std::lock_guard<std::mutex> lock(hecke_mutex_);
  auto it = hecke_cache_.find(q);
  if (it != hecke_cache_.end()) return it->second;
  const auto heilbronn = heilbronn_merel(q);
  QMatrix t(dimension(), dimension());
  for (std::size_t r = 0; r < dimension(); ++r) {
    const P1Element& e = p1_[basis_[r]];
    ManinCombination image;
    for (const auto& g : heilbronn) {
      auto idx = p1_.index(e.c * g.a + e.d * g.c, e.c * g.b + e.d * g.d);
      if (idx) image[*idx] += 1;
    }
    t.set_row(r, coordinates(image));
  }
  return hecke_cache_.emplace(q, std::move(t)).first->second;
}

QMatrix ModularSymbolSpace::hecke_on(const QMatrix& subspace, std::int64_t q) const {
  if (subspace.rows() == 0) return QMatrix(0, 0);
  return restrict_to(subspace, hecke_matrix(q));
}

SpacePtr space(std::int64_t level) {
  static std::mutex mutex;
  static std::map<std::int64_t, SpacePtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(level);
  if (it != cache.end()) return it->second;
  auto made = std::make_shared<const ModularSymbolSpace>(level);
  cache.emplace(level, made);
  return made;
}

BoundaryData boundary_and_cuspidal(const ModularSymbolSpace& space) {
  return {space.cusp_classes(), space.boundary_matrix(), space.cuspidal_basis()};
}

QMatrix degeneracy_matrix(const ModularSymbolSpace& source, const ModularSymbolSpace& target,
                          std::int64_t t) {
  const std::int64_t m = source.level(), n = target.level();
  if (t < 1 || m % n != 0 || (m / n) % t != 0) {
    throw Error(ErrorKind::LevelMismatch, "degeneracy map needs t * N | M");
  }
  QMatrix out(source.dimension(), target.dimension());
  for (std::size_t r = 0; r < source.dimension(); ++r) {
    const P1Element& e = source.p1()[source.basis_indices()[r]];
    SL2Matrix g = lift_to_sl2z(e.c, e.d, m);
    Cusp alpha = Cusp::make(t * g.b, g.d);
    Cusp beta = Cusp::make(t * g.a, g.c);
    out.set_row(r, target.coordinates(modular_to_manin(alpha, beta, target.p1())));
  }
  return out;
}

QMatrix new_subspace(const ModularSymbolSpace& sp) {
  const QMatrix& cusp = sp.cuspidal_basis();
  if (cusp.rows() == 0) return QMatrix(0, sp.dimension());
  QMatrix maps(sp.dimension(), 0);
  std::vector<QMatrix> blocks;
  std::size_t total = 0;
  for (std::int64_t q : prime_factors(sp.level())) {
    SpacePtr lower = space(sp.level() / q);
    if (lower->cuspidal_dimension() == 0) continue;
    for (std::int64_t t : {std::int64_t{1}, q}) {
      blocks.push_back(degeneracy_matrix(sp, *lower, t));
      total += lower->dimension();
    }
  }
  if (total == 0) return cusp;
  QMatrix stacked(sp.dimension(), total);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) stacked(i, offset + j) = b(i, j);
    offset += b.cols();
  }
  QMatrix kernel = left_kernel(cusp * stacked);
  if (kernel.rows() == 0) return QMatrix(0, sp.dimension());
  return rref(kernel * cusp);
}

QMatrix integral_lattice(const ModularSymbolSpace& sp, const QMatrix& subspace) {
  if (subspace.rows() == 0) return QMatrix(0, sp.dimension());
  const QMatrix& lattice = sp.integral_basis();
  QMatrix coords = subspace * inverse(lattice);
  ZMatrix sat = saturate(coords);
  return to_rational(sat) * lattice;
}

ZMatrix integral_hecke(const ModularSymbolSpace& sp, const QMatrix& lattice, std::int64_t q) {
  if (lattice.rows() == 0) return ZMatrix(0, 0);
  QMatrix op = restrict_to(lattice, sp.hecke_matrix(q));
  try {
    return to_integer(op);
  } catch (const Error&) {
    throw Error(ErrorKind::DimensionMismatch, "T_" + std::to_string(q) + " not integral on lattice");
  }
}

ReducedSubspace integral_reduction(const ModularSymbolSpace& sp, const QMatrix& subspace,
                                   std::int64_t ell, const std::vector<std::int64_t>& primes) {
  if (!is_prime(ell)) throw Error(ErrorKind::InvalidInput, "ell must be prime");
  ReducedSubspace out;
  out.ell = ell;
  out.lattice = integral_lattice(sp, subspace);
  for (std::int64_t q : primes) out.operators[q] = reduce_mod(integral_hecke(sp, out.lattice, q), ell);
  return out;
}

namespace {

const QMatrix& cached_new_subspace(std::int64_t level) {
  static std::mutex mutex;
  static std::map<std::int64_t, QMatrix> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
  }
  QMatrix computed = new_subspace(*space(level));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(level, std::move(computed)).first->second;
}

}  // namespace

bool EigensystemWitness::verify() const {
  if (!is_prime(ell) || kernel_basis.rows() != kernel_dimension || kernel_dimension == 0) return false;
  std::vector<HeckeTarget> all = targets;
  if (up_target) all.push_back(*up_target);
  for (const auto& target : all) {
    auto it = operators.find(target.q);
    if (it == operators.end()) return false;
    const ModMatrix& op = it->second;
    if (op.rows() != kernel_basis.cols() || op.cols() != kernel_basis.cols()) return false;
    ModMatrix image = multiply_mod(kernel_basis, op, ell);
    const std::int64_t t = mod(target.residue, ell);
    for (std::size_t i = 0; i < kernel_basis.rows(); ++i)
      for (std::size_t j = 0; j < kernel_basis.cols(); ++j)
        if (image(i, j) != mulmod(t, kernel_basis(i, j), ell)) return false;
  }
  std::vector<std::size_t> pivots;
  rref_mod(kernel_basis, ell, &pivots);
  return pivots.size() == kernel_dimension;
}

std::optional<EigensystemWitness> congruence_witness(std::int64_t level, std::int64_t ell,
                                                     const std::vector<HeckeTarget>& targets,
                                                     const std::optional<HeckeTarget>& up_target) {
  if (!is_prime(ell)) throw Error(ErrorKind::InvalidInput, "ell must be prime");
  SpacePtr sp = space(level);
  const QMatrix& v_new = cached_new_subspace(level);
  EigensystemWitness w;
  w.level = level;
  w.ell = ell;
  for (const auto& t : targets) w.targets.push_back({t.q, mod(t.residue, ell)});
  if (up_target) {
    if (level % up_target->q != 0) throw Error(ErrorKind::LevelMismatch, "U_p target needs p | level");
    w.up_target = HeckeTarget{up_target->q, mod(up_target->residue, ell)};
  }
  w.new_dimension = v_new.rows();
  if (w.new_dimension == 0) return std::nullopt;

  std::vector<HeckeTarget> all = w.targets;
  if (w.up_target) all.push_back(*w.up_target);
  std::vector<std::int64_t> primes;
  for (const auto& t : all) primes.push_back(t.q);
  ReducedSubspace reduced = integral_reduction(*sp, v_new, ell, primes);
  const std::size_t k = reduced.dimension();

  ModMatrix stacked(k, k * all.size());
  for (std::size_t b = 0; b < all.size(); ++b) {
    const ModMatrix& op = reduced.operators.at(all[b].q);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        std::int64_t x = op(i, j);
        if (i == j) x = mod(x - all[b].residue, ell);
        stacked(i, b * k + j) = x;
      }
    }
  }
  ModMatrix kernel = all.empty() ? ModMatrix::identity(k) : left_kernel_mod(stacked, ell);
  if (kernel.rows() == 0) return std::nullopt;
  w.kernel_dimension = kernel.rows();
  w.kernel_basis = std::move(kernel);
  w.operators = std::move(reduced.operators);
  return w;
}

std::vector<HeckeTarget> twist_eigensystem(const std::vector<HeckeTarget>& targets, std::int64_t q0) {
  if (q0 < 3 || !is_prime(q0)) throw Error(ErrorKind::InvalidInput, "twist needs an odd prime");
  std::vector<HeckeTarget> out;
  for (const auto& t : targets) {
    if (t.q == q0) {
      out.push_back(t);
    } else {
      out.push_back({t.q, legendre(t.q, q0) * t.residue});
    }
  }
  return out;
}

std::vector<Integer> integral_charpoly(const QMatrix& op) {
  std::vector<Integer> out;
  for (const auto& c : charpoly(op)) {
    if (c.get_den() != 1) throw Error(ErrorKind::InvalidInput, "characteristic polynomial not integral");
    out.push_back(c.get_num());
  }
  return out;
}

}  // namespace levelraiser::modsym
