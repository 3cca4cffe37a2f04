#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace levelraiser {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime factorization as (prime, exponent) pairs in increasing order.
using Factorization = std::vector<std::pair<Integer, int>>;

// Small-integer helpers. Moduli fit comfortably in 31 bits everywhere they
// are used, but products go through __int128 anyway.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
std::int64_t mod(const Integer& a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::int64_t invmod(std::int64_t a, std::int64_t m);
/// Returns g = gcd(a, b) and sets x, y with a*x + b*y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);

/// Legendre symbol (a | p) for an odd prime p; 0 when p | a.
int legendre(std::int64_t a, std::int64_t p);
int legendre(const Integer& a, std::int64_t p);

bool is_prime(std::int64_t n);
bool is_prime(const Integer& n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::int64_t prime_pi(std::int64_t bound);
std::vector<std::int64_t> prime_factors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

/// Trial division followed by Pollard rho (Brent) on the cofactor. The
/// sign is dropped; factor(0) throws InvalidInput and factor(+-1) is empty.
Factorization factor(const Integer& n);
std::vector<Integer> prime_divisors(const Integer& n);

/// Largest e with p^e | n; n must be nonzero.
int valuation(const Integer& n, const Integer& p);
Integer pow_int(const Integer& base, unsigned long exp);
bool is_square(const Integer& n);
bool is_squarefree(const Integer& n);

std::int64_t to_int64(const Integer& n);
Integer parse_integer(const std::string& text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace levelraiser
