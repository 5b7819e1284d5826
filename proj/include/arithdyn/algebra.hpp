#pragma once

#include <cstdint>
#include <optional>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

/// Monic minimal polynomial over Q, found as the first linear dependency among
/// 1, x, x^2, ... in the power basis.
Polynomial minimal_polynomial(const CycloNumber& x);

/// Multiplicative order of x if x is a root of unity. In Q(zeta_N) every
/// torsion unit has order dividing N (N even) or 2N (N odd), so only those
/// divisors are tried.
std::optional<std::uint64_t> root_of_unity_order(const CycloNumber& x);

/// Root-of-unity test for an algebraic number known only through its minimal
/// polynomial m over Q: m must be monic, integral and equal to Phi_n with
/// phi(n) = deg m. Returns n.
std::optional<std::uint64_t> root_of_unity_order_from_minpoly(const Polynomial& minpoly);

/// For a (not necessarily irreducible) polynomial over Q: if it is a product
/// of cyclotomic polynomials, the lcm of their indices; nullopt otherwise.
/// Every root is then a root of unity of order dividing the returned value.
std::optional<std::uint64_t> cyclotomic_product_exponent(const Polynomial& p);

}  // namespace arithdyn
