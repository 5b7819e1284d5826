#pragma once

// Dense univariate polynomials over Q as bare coefficient vectors (index =
// degree). Internal support for cyclotomic reduction and inversion; the
// public Polynomial type lives in polynomial.hpp.

#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn::qpoly {

using QPoly = std::vector<Rational>;

void trim(QPoly& p);
int degree(const QPoly& p);  // -1 for the zero polynomial
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
/// Quotient and remainder; throws on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Reduces a modulo a monic polynomial in place.
void reduce_monic(QPoly& a, const QPoly& monic);
/// Inverse of a modulo m, assuming gcd(a, m) = 1; throws otherwise.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

/// N-th cyclotomic polynomial by exact division of z^N - 1 by the lower ones.
const QPoly& cyclotomic(std::uint64_t n);

}  // namespace arithdyn::qpoly
