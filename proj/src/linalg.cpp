#include "levelraiser/linalg.hpp"

#include <algorithm>
#include <utility>

#include "levelraiser/error.hpp"
#include "levelraiser/numtheory.hpp"

namespace levelraiser {

namespace {

struct RationalField {
  using T = Rational;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T div(const T& a, const T& b) const { return a / b; }
  bool is_zero(const T& a) const { return a == 0; }
};

struct PrimeField {
  using T = std::int64_t;
  std::int64_t ell;
  T zero() const { return 0; }
  T one() const { return 1 % ell; }
  // inputs are reduced
  T add(T a, T b) const { a += b; return a >= ell ? a - ell : a; }
  T sub(T a, T b) const { a -= b; return a < 0 ? a + ell : a; }
  T mul(T a, T b) const { return mulmod(a, b, ell); }
  T div(T a, T b) const { return mulmod(a, invmod(b, ell), ell); }
  bool is_zero(T a) const { return a == 0; }
};

template <class Field>
Matrix<typename Field::T> rref_impl(Matrix<typename Field::T> a, const Field& f,
                                    std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && f.is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    auto inv = f.div(f.one(), a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      auto factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!f.is_zero(a(r, j))) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
      }
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

template <class Field>
Matrix<typename Field::T> right_kernel_impl(const Matrix<typename Field::T>& a, const Field& f) {
  using T = typename Field::T;
  std::vector<std::size_t> pivots;
  auto r = rref_impl(a, f, &pivots);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<T> kernel(a.cols() - pivots.size(), a.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    kernel(k, free) = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) kernel(k, pivots[i]) = f.sub(f.zero(), r(i, free));
    ++k;
  }
  return kernel;
}

// Reduction to upper Hessenberg form followed by the standard recurrence.
template <class Field>
std::vector<typename Field::T> charpoly_impl(Matrix<typename Field::T> h, const Field& f) {
  using T = typename Field::T;
  const std::size_t n = h.rows();
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && f.is_zero(h(piv, j))) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      h.swap_rows(piv, j + 1);
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, j + 1));
    }
    for (std::size_t i = j + 2; i < n; ++i) {
      if (f.is_zero(h(i, j))) continue;
      T u = f.div(h(i, j), h(j + 1, j));
      for (std::size_t k = 0; k < n; ++k) h(i, k) = f.sub(h(i, k), f.mul(u, h(j + 1, k)));
      for (std::size_t k = 0; k < n; ++k) h(k, j + 1) = f.add(h(k, j + 1), f.mul(u, h(k, i)));
    }
  }
  // p[m] is the charpoly of the leading m x m block.
  std::vector<std::vector<T>> p(n + 1);
  p[0] = {f.one()};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<T> next(m + 1, f.zero());
    const auto& prev = p[m - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = f.add(next[k + 1], prev[k]);
      next[k] = f.sub(next[k], f.mul(h(m - 1, m - 1), prev[k]));
    }
    T product = f.one();
    for (std::size_t i = m - 1; i-- > 0;) {
      product = f.mul(product, h(i + 1, i));
      T coeff = f.mul(h(i, m - 1), product);
      if (f.is_zero(coeff)) continue;
      for (std::size_t k = 0; k < p[i].size(); ++k) next[k] = f.sub(next[k], f.mul(coeff, p[i][k]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

}  // namespace

QMatrix rref(QMatrix a, std::vector<std::size_t>* pivots) {
  return rref_impl(std::move(a), RationalField{}, pivots);
}

std::size_t rank(const QMatrix& a) {
  std::vector<std::size_t> pivots;
  rref(a, &pivots);
  return pivots.size();
}

QMatrix right_kernel(const QMatrix& a) { return right_kernel_impl(a, RationalField{}); }

QMatrix left_kernel(const QMatrix& a) {
  QMatrix k = right_kernel(a.transpose());
  if (k.rows() == 0) return QMatrix(0, a.rows());
  return rref(k);
}

QMatrix inverse(const QMatrix& a) {
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots;
  aug = rref(aug, &pivots);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) {
    throw Error(ErrorKind::InvalidInput, "matrix is singular");
  }
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

QMatrix coordinates(const QMatrix& basis, const QMatrix& vectors) {
  const std::size_t k = basis.rows();
  std::vector<std::size_t> pivots;
  rref(basis, &pivots);
  if (pivots.size() != k) throw Error(ErrorKind::InvalidInput, "basis rows are dependent");
  QMatrix square(k, k), picked(vectors.rows(), k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) square(i, j) = basis(i, pivots[j]);
  for (std::size_t i = 0; i < vectors.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) picked(i, j) = vectors(i, pivots[j]);
  QMatrix coords = picked * inverse(square);
  // Confirm membership: coords * basis must reproduce the vectors.
  if (!(coords * basis == vectors)) throw Error(ErrorKind::InvalidInput, "vector outside span");
  return coords;
}

QMatrix restrict_to(const QMatrix& basis, const QMatrix& op) {
  return coordinates(basis, basis * op);
}

// Multimodular: clear denominators, work modulo 61-bit primes and lift by
// CRT. Every eigenvalue of the integer matrix m is bounded by its largest
// absolute row sum r, so each coefficient is at most (r + 1)^n in size.
std::vector<Rational> charpoly(const QMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return {Rational(1)};
  Integer d = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a(i, j).get_den_mpz_t());
  ZMatrix m(n, n);
  Integer r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j).get_num() * (d / a(i, j).get_den());
      row += abs(m(i, j));
    }
    r = std::max(r, row);
  }
  const Integer bound = 2 * pow_int(r + 1, n);

  std::vector<Integer> residue(n + 1, Integer(0));
  Integer modulus = 1;
  std::int64_t ell = (std::int64_t(1) << 61) - 1;
  while (modulus <= bound) {
    while (!is_prime(ell)) --ell;
    ModMatrix mm(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mm(i, j) = mod(m(i, j), ell);
    const auto cp = charpoly_impl(mm, PrimeField{ell});
    const std::int64_t inv = invmod(mod(modulus, ell), ell);
    for (std::size_t k = 0; k <= n; ++k) {
      const std::int64_t t = mulmod(mod(cp[k] - mod(residue[k], ell), ell), inv, ell);
      residue[k] += modulus * t;
    }
    modulus *= ell;
    --ell;
  }
  std::vector<Rational> out(n + 1);
  Integer scale = 1;  // d^(n - k)
  for (std::size_t k = n + 1; k-- > 0;) {
    Integer c = residue[k];
    if (2 * c > modulus) c -= modulus;
    out[k] = Rational(c, scale);
    out[k].canonicalize();
    scale *= d;
  }
  return out;
}

QMatrix to_rational(const ZMatrix& a) {
  QMatrix q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = Rational(a(i, j));
  return q;
}

ZMatrix to_integer(const QMatrix& a) {
  ZMatrix z(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1) throw Error(ErrorKind::InvalidInput, "non-integral matrix entry");
      z(i, j) = a(i, j).get_num();
    }
  }
  return z;
}

ModMatrix reduce_mod(const ZMatrix& a, std::int64_t ell) {
  ModMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = mod(a(i, j), ell);
  return m;
}

std::size_t bareiss_echelon(ZMatrix& a, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

Integer bareiss_determinant(ZMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Row-style HNF on the first `active_cols` columns; remaining columns ride
// along (used to track the unimodular transform).
std::size_t hnf_in_place(ZMatrix& a, std::size_t active_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < active_cols && r < a.rows(); ++c) {
    while (true) {
      std::size_t best = a.rows();
      for (std::size_t i = r; i < a.rows(); ++i) {
        if (a(i, c) != 0 && (best == a.rows() || abs(a(i, c)) < abs(a(best, c)))) best = i;
      }
      if (best == a.rows()) break;
      a.swap_rows(best, r);
      bool done = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= q * a(r, j);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= a.rows() || a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = -a(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

ZMatrix hnf(ZMatrix a) {
  std::size_t r = hnf_in_place(a, a.cols());
  ZMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

ZMatrix integer_left_kernel(const ZMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ZMatrix aug(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::size_t r = hnf_in_place(aug, n);
  ZMatrix kernel(m - r, m);
  for (std::size_t i = r; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) kernel(i - r, j) = aug(i, n + j);
  if (kernel.rows() == 0) return kernel;
  return hnf(kernel);
}

ZMatrix saturate(const QMatrix& rows) {
  const std::size_t n = rows.cols();
  QMatrix complement = right_kernel(rows);
  if (complement.rows() == 0) return ZMatrix::identity(n);
  // Clear denominators row by row.
  ZMatrix c(complement.rows(), n);
  for (std::size_t i = 0; i < complement.rows(); ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), complement(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = complement(i, j) * den;
      c(i, j) = scaled.get_num();
    }
  }
  return integer_left_kernel(c.transpose());
}

namespace {

ModMatrix reduced(ModMatrix a, std::int64_t ell) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = mod(a(i, j), ell);
  return a;
}

}  // namespace

ModMatrix rref_mod(ModMatrix a, std::int64_t ell, std::vector<std::size_t>* pivots) {
  return rref_impl(reduced(std::move(a), ell), PrimeField{ell}, pivots);
}

ModMatrix left_kernel_mod(const ModMatrix& a, std::int64_t ell) {
  ModMatrix k = right_kernel_impl(reduced(a.transpose(), ell), PrimeField{ell});
  if (k.rows() == 0) return ModMatrix(0, a.rows());
  return rref_mod(k, ell);
}

ModMatrix multiply_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t ell) {
  ModMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = mod(c(i, j) + mulmod(a(i, k), b(k, j), ell), ell);
    }
  return c;
}

std::vector<std::int64_t> charpoly_mod(const ModMatrix& a, std::int64_t ell) {
  return charpoly_impl(reduced(a, ell), PrimeField{ell});
}

}  // namespace levelraiser
