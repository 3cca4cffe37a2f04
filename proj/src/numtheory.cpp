#include "levelraiser/numtheory.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <tuple>

#include "levelraiser/error.hpp"

namespace levelraiser {

std::int64_t mod(const Integer& a, std::int64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  auto r = static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
  return r < 0 ? r + m : r;
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t x = 0, y = 0;
  std::int64_t g = ext_gcd(mod(a, m), m, x, y);
  if (g != 1) throw Error(ErrorKind::InvalidInput, "invmod: not invertible");
  return mod(x, m);
}

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (p == 2) return 1;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const Integer& a, std::int64_t p) { return legendre(mod(a, p), p); }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

std::int64_t prime_pi(std::int64_t bound) {
  return static_cast<std::int64_t>(primes_up_to(bound).size());
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  n = std::llabs(n);
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x1f2e3d4c);
  while (true) {
    Integer y = rng.get_z_range(n - 1) + 1;
    Integer c = rng.get_z_range(n - 1) + 1;
    const unsigned long m = 128;
    Integer g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long steps = std::min<unsigned long>(m, r.get_ui() - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

Factorization factor(const Integer& n_in) {
  if (n_in == 0) throw Error(ErrorKind::InvalidInput, "cannot factor 0");
  Integer n = abs(n_in);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

int valuation(const Integer& n, const Integer& p) {
  if (n == 0) return std::numeric_limits<int>::max();
  Integer m = n;
  int e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++e;
  }
  return e;
}

Integer pow_int(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

bool is_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1) return false;
  }
  return true;
}

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw Error(ErrorKind::InvalidInput, "integer exceeds 64 bits");
  return n.get_si();
}

Integer parse_integer(const std::string& text) {
  Integer out;
  std::string trimmed;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t' && ch != '\n') trimmed += ch;
  }
  if (!trimmed.empty() && trimmed[0] == '+') trimmed.erase(0, 1);
  if (trimmed.empty() || out.set_str(trimmed, 10) != 0) {
    throw Error(ErrorKind::InvalidInput, "not an integer: '" + text + "'");
  }
  return out;
}

std::string to_string(const Integer& n) { return n.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace levelraiser
