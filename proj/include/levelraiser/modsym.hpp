#pragma once

// Weight-2 modular symbols for Gamma_0(M) via Manin symbols.
//
// Conventions: a Manin symbol (c : d) in P^1(Z/M) stands for g{0, oo} where
// g = [[a, b], [c, d]] is any lift to SL_2(Z). Matrices act on symbols from
// the right, (c, d) * [[x, y], [z, w]] = (cx + dz, cy + dw), and vectors in
// the quotient space are rows.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "levelraiser/linalg.hpp"
#include "levelraiser/numtheory.hpp"

namespace levelraiser::modsym {

struct P1Element {
  std::int64_t c = 0;
  std::int64_t d = 0;
  friend bool operator==(const P1Element&, const P1Element&) = default;
};

/// P^1(Z/M): one canonical representative per orbit under scaling by units,
/// namely the lexicographically least (c, d) with 0 <= c, d < M.
class P1List {
 public:
  explicit P1List(std::int64_t level);

  std::int64_t level() const { return level_; }
  std::size_t size() const { return elements_.size(); }
  const P1Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<P1Element>& elements() const { return elements_; }

  /// Index of the class of (c : d), or nullopt when gcd(c, d, M) != 1.
  std::optional<std::size_t> index(std::int64_t c, std::int64_t d) const;

 private:
  std::int64_t level_;
  std::vector<P1Element> elements_;
  std::vector<std::int32_t> lookup_;  // level^2 entries, -1 when invalid
};

std::vector<P1Element> p1_list(std::int64_t level);

/// A cusp u/v in lowest terms with v >= 0; infinity is 1/0.
struct Cusp {
  std::int64_t num = 1;
  std::int64_t den = 0;
  static Cusp make(std::int64_t num, std::int64_t den);
  static Cusp infinity() { return {1, 0}; }
  friend bool operator==(const Cusp&, const Cusp&) = default;
};

/// Gamma_0(M)-equivalence of cusps.
bool cusps_equivalent(const Cusp& a, const Cusp& b, std::int64_t level);

struct SL2Matrix {
  std::int64_t a, b, c, d;
};

/// Integral matrix of determinant 1 whose bottom row reduces to (c, d) mod M.
SL2Matrix lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level);

/// Integer combination of Manin symbols, keyed by P1 index.
using ManinCombination = std::map<std::size_t, std::int64_t>;

/// {alpha, beta} as a combination of Manin symbols (continued fractions).
ManinCombination modular_to_manin(const Cusp& alpha, const Cusp& beta, const P1List& p1);

/// Merel's Heilbronn matrices of determinant n in canonical order:
/// [[a, b], [c, d]] with a > b >= 0, d > c >= 0, ad - bc = n.
std::vector<SL2Matrix> heilbronn_merel(std::int64_t n);

struct GenusData {
  std::int64_t index = 1;  // [SL_2(Z) : Gamma_0(M)]
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 1;
  std::int64_t genus = 0;
};

/// Standard genus formula for X_0(M).
GenusData genus_data(std::int64_t level);

/// The full space of weight-2 modular symbols for Gamma_0(M) (no star
/// involution), with its cuspidal subspace and integral structure.
/// Construction checks the dimension against the genus formula.
class ModularSymbolSpace {
 public:
  explicit ModularSymbolSpace(std::int64_t level);
  ModularSymbolSpace(const ModularSymbolSpace&) = delete;
  ModularSymbolSpace& operator=(const ModularSymbolSpace&) = delete;

  std::int64_t level() const { return level_; }
  const P1List& p1() const { return p1_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t cuspidal_dimension() const { return cuspidal_.rows(); }
  const GenusData& genus() const { return genus_; }

  /// P1 indices of the free generators forming the basis.
  const std::vector<std::size_t>& basis_indices() const { return basis_; }
  /// Coordinates of the i-th Manin symbol (sparse row).
  const std::vector<std::pair<std::size_t, Rational>>& manin_row(std::size_t i) const { return manin_[i]; }
  std::vector<Rational> coordinates(const ManinCombination& symbols) const;

  const std::vector<Cusp>& cusp_classes() const { return cusps_; }
  std::size_t cusp_class(const Cusp& cusp) const;
  /// dimension() x #cusps; row i is the boundary of basis element i.
  const QMatrix& boundary_matrix() const { return boundary_; }
  /// Rows (RREF) spanning the kernel of the boundary map.
  const QMatrix& cuspidal_basis() const { return cuspidal_; }
  /// Rows spanning the Z-module generated by all Manin symbols.
  const QMatrix& integral_basis() const { return integral_; }

  /// T_q (U_q when q | M) on the full space; cached.
  const QMatrix& hecke_matrix(std::int64_t q) const;
  /// Hecke operator restricted to an invariant subspace given by row basis.
  QMatrix hecke_on(const QMatrix& subspace, std::int64_t q) const;

 private:
  void solve_relations();
  void compute_boundary();
  void compute_integral_structure();

  std::int64_t level_;
  P1List p1_;
  GenusData genus_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> manin_;
  std::vector<Cusp> cusps_;
  QMatrix boundary_;
  QMatrix cuspidal_;
  QMatrix integral_;

  mutable std::mutex hecke_mutex_;
  mutable std::map<std::int64_t, QMatrix> hecke_cache_;
};

using SpacePtr = std::shared_ptr<const ModularSymbolSpace>;

/// Process-wide cache of constructed spaces, keyed by level.
SpacePtr space(std::int64_t level);

struct BoundaryData {
  std::vector<Cusp> cusp_classes;
  QMatrix boundary;
  QMatrix cuspidal;
};
BoundaryData boundary_and_cuspidal(const ModularSymbolSpace& space);

/// Degeneracy map from level M to level N (N | M) induced by z -> t z,
/// t | M / N; rows are images of the source basis.
QMatrix degeneracy_matrix(const ModularSymbolSpace& source, const ModularSymbolSpace& target,
                          std::int64_t t);

/// Intersection, inside the cuspidal subspace, of the kernels of both
/// degeneracy maps to M / q for every prime q | M. Rows in RREF.
QMatrix new_subspace(const ModularSymbolSpace& space);

/// Z-basis (rows, space coordinates) of the integral lattice intersected
/// with a rational subspace.
QMatrix integral_lattice(const ModularSymbolSpace& space, const QMatrix& subspace);

/// Matrix of T_q on a Hecke-stable lattice basis; integral by construction.
ZMatrix integral_hecke(const ModularSymbolSpace& space, const QMatrix& lattice, std::int64_t q);

struct ReducedSubspace {
  std::int64_t ell = 0;
  QMatrix lattice;                             // Z-basis, space coordinates
  std::map<std::int64_t, ModMatrix> operators;  // q -> T_q mod ell on the lattice
  std::size_t dimension() const { return lattice.rows(); }
};

ReducedSubspace integral_reduction(const ModularSymbolSpace& space, const QMatrix& subspace,
                                   std::int64_t ell, const std::vector<std::int64_t>& primes);

struct HeckeTarget {
  std::int64_t q = 0;
  std::int64_t residue = 0;
  friend bool operator==(const HeckeTarget&, const HeckeTarget&) = default;
};

struct EigensystemWitness {
  std::int64_t level = 0;
  std::int64_t ell = 0;
  std::vector<HeckeTarget> targets;
  std::optional<HeckeTarget> up_target;  // U_p at the raised prime
  std::size_t new_dimension = 0;
  std::size_t kernel_dimension = 0;
  ModMatrix kernel_basis;                       // rows, lattice coordinates mod ell
  std::map<std::int64_t, ModMatrix> operators;  // operators the kernel was cut out by

  /// Re-checks v * T_q = t_q v mod ell for every kernel row and operator.
  bool verify() const;
};

/// Computes the new subspace at `level`, reduces mod ell and intersects
/// ker(T_q - t_q) over the targets (and ker(U_p - up) when given). Returns
/// nullopt when the common kernel is zero.
std::optional<EigensystemWitness> congruence_witness(std::int64_t level, std::int64_t ell,
                                                     const std::vector<HeckeTarget>& targets,
                                                     const std::optional<HeckeTarget>& up_target);

/// Eigenvalues of the twist by the quadratic character mod q0:
/// t_q -> (q | q0) t_q for q != q0.
std::vector<HeckeTarget> twist_eigensystem(const std::vector<HeckeTarget>& targets, std::int64_t q0);

/// Integer polynomial from a rational characteristic polynomial; throws if
/// a coefficient is not integral.
std::vector<Integer> integral_charpoly(const QMatrix& op);

}  // namespace levelraiser::modsym
