#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arithdyn {

// GMP rationals are kept canonical (lowest terms, positive denominator) by
// every mpq_class operation; constructors from raw parts must canonicalize.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p", "p/q" (optional surrounding whitespace). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& n, const Integer& p);
/// p-adic valuation of a nonzero rational.
long valuation(const Rational& q, const Integer& p);

/// Natural log of |n| for n != 0, accurate to double rounding even for
/// integers far beyond double range.
double log_abs(const Integer& n);

std::size_t bit_size(const Rational& q);

// ---------------------------------------------------------------------------
// Small number theory helpers

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime(const Integer& n);

/// Prime factorization with multiplicities, ascending. Trial division followed
/// by Pollard-Brent on the cofactor.
std::vector<std::pair<Integer, unsigned>> factor(Integer n);

/// Primes dividing n, ascending.
std::vector<Integer> prime_divisors(const Integer& n);

}  // namespace arithdyn
