#include "levelraiser/poly.hpp"

#include <algorithm>
#include <sstream>

#include "levelraiser/error.hpp"
#include "levelraiser/linalg.hpp"

namespace levelraiser {

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::parse(const std::string& text) {
  std::string body;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') body += ch;
  }
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw Error(ErrorKind::InvalidInput, "polynomial must look like [c0,c1,...]: " + text);
  }
  body = body.substr(1, body.size() - 2);
  std::vector<Integer> coeffs;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(parse_integer(item));
  return IntPoly(std::move(coeffs));
}

IntPoly IntPoly::monomial(int degree) {
  std::vector<Integer> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Integer IntPoly::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int IntPoly::sign_at(const Rational& x) const {
  // den^deg * P(num/den), den > 0.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = 0, den_power = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * num + *it * den_power;
    den_power *= den;
  }
  return sgn(acc);
}

std::int64_t IntPoly::eval_mod(std::int64_t x, std::int64_t m) const {
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = mod(mulmod(acc, x, m) + mod(*it, m), m);
  return acc;
}

IntPoly IntPoly::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return IntPoly(std::move(d));
}

IntPoly IntPoly::reflected() const {
  std::vector<Integer> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPoly(std::move(c));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].get_str();
  }
  return out + "]";
}

namespace {

using RatPoly = std::vector<Rational>;  // constant term first

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPoly& p) {
  RatPoly r;
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

RatPoly remainder(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

RatPoly quotient(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) return {};
  RatPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Positive multiple of p with coprime integer coefficients.
IntPoly primitive_same_sign(const RatPoly& p) {
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> coeffs;
  Integer content = 0;
  for (const auto& c : p) {
    Rational scaled = c * den;
    coeffs.push_back(scaled.get_num());
    content = gcd(content, coeffs.back());
  }
  if (content != 0)
    for (auto& c : coeffs) c /= content;
  return IntPoly(std::move(coeffs));
}

IntPoly primitive(const RatPoly& p) {
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> coeffs;
  Integer content = 0;
  for (const auto& c : p) {
    Rational scaled = c * den;
    coeffs.push_back(scaled.get_num());
    content = gcd(content, coeffs.back());
  }
  if (content != 0) {
    if (coeffs.back() < 0) content = -content;
    for (auto& c : coeffs) c /= content;
  }
  return IntPoly(std::move(coeffs));
}

int sign_at(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) { return primitive(gcd(to_rat(a), to_rat(b))); }

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (!remainder(to_rat(a), to_rat(b)).empty()) throw Error(ErrorKind::InvalidInput, "exact_quotient: remainder");
  return primitive(quotient(to_rat(a), to_rat(b)));
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p;
  RatPoly g = gcd(to_rat(p), to_rat(p.derivative()));
  return primitive(quotient(to_rat(p), g));
}

SturmSequence::SturmSequence(const IntPoly& p) {
  IntPoly sf = squarefree_part(p);
  if (sf.degree() <= 0) return;
  chain_.push_back(sf);
  chain_.push_back(sf.derivative());
  RatPoly a = to_rat(chain_[0]), b = to_rat(chain_[1]);
  for (;;) {
    RatPoly r = remainder(a, b);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain_.push_back(primitive_same_sign(r));
    a = std::move(b);
    b = to_rat(chain_.back());
  }
}

int SturmSequence::variations(const Rational& x) const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q.sign_at(x));
  return sign_changes(signs);
}

int SturmSequence::variations_at_infinity(int direction) const {
  std::vector<int> signs;
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    signs.push_back(direction < 0 && q.degree() % 2 == 1 ? -s : s);
  }
  return sign_changes(signs);
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (chain_.empty()) return 0;
  return variations(a) - variations(b);
}

int SturmSequence::real_roots() const {
  if (chain_.empty()) return 0;
  return variations_at_infinity(-1) - variations_at_infinity(1);
}

int sturm_count(const IntPoly& p, const Rational& a, const Rational& b) { return SturmSequence(p).count(a, b); }

Integer root_bound(const IntPoly& p) {
  // 1 + max |c_i / c_n|, rounded up.
  Integer bound = 1;
  for (int i = 0; i < p.degree(); ++i) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), Integer(abs(p.coeffs()[i])).get_mpz_t(), Integer(abs(p.leading())).get_mpz_t());
    bound = std::max(bound, q);
  }
  return bound + 1;
}

int real_root_count(const IntPoly& p) { return SturmSequence(p).real_roots(); }

Integer resultant(const IntPoly& a, const IntPoly& b) {
  const int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0) return pow_int(a.leading(), static_cast<unsigned long>(n));
  if (n == 0) return pow_int(b.leading(), static_cast<unsigned long>(m));
  const std::size_t size = static_cast<std::size_t>(m + n);
  ZMatrix s(size, size);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(i, i + j) = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(n + i, i + j) = b.coeff(n - j);
  return bareiss_determinant(std::move(s));
}

Integer discriminant_cubic(const Integer& a2, const Integer& a1, const Integer& a0) {
  // x^3 + a2 x^2 + a1 x + a0
  return a2 * a2 * a1 * a1 - 4 * a1 * a1 * a1 - 4 * a2 * a2 * a2 * a0 - 27 * a0 * a0 + 18 * a2 * a1 * a0;
}

std::vector<Integer> integer_roots(const IntPoly& p_in) {
  if (!p_in.is_monic()) throw Error(ErrorKind::InvalidInput, "integer_roots needs a monic polynomial");
  std::vector<Integer> roots;
  IntPoly p = p_in;
  if (p.degree() >= 1 && p.coeff(0) == 0) {
    roots.push_back(0);
    while (p.degree() >= 1 && p.coeff(0) == 0) p = deflate(p, 0);
  }
  if (p.degree() < 1) return roots;
  Factorization f = factor(p.coeff(0));
  std::vector<Integer> divs{1};
  for (const auto& [prime, e] : f) {
    std::size_t count = divs.size();
    Integer power = 1;
    for (int k = 1; k <= e; ++k) {
      power *= prime;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
    }
  }
  for (const auto& d : divs) {
    if (p(d) == 0) roots.push_back(d);
    if (p(-d) == 0) roots.push_back(-d);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int count_roots_mod(const IntPoly& p, std::int64_t m) {
  int count = 0;
  for (std::int64_t x = 0; x < m; ++x) {
    if (p.eval_mod(x, m) == 0) ++count;
  }
  return count;
}

IntPoly deflate(const IntPoly& p, const Integer& r) {
  // Synthetic division by (x - r).
  const int n = p.degree();
  std::vector<Integer> q(static_cast<std::size_t>(n), 0);
  Integer carry = 0;
  for (int i = n; i >= 1; --i) {
    carry = carry * r + p.coeff(i);
    q[static_cast<std::size_t>(i - 1)] = carry;
  }
  if (carry * r + p.coeff(0) != 0) throw Error(ErrorKind::InvalidInput, "deflate: not a root");
  return IntPoly(std::move(q));
}

}  // namespace levelraiser
