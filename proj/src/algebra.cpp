#include "arithdyn/algebra.hpp"

#include <numeric>

namespace arithdyn {

namespace {

// Solves M c = rhs over Q (M given by columns); nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<std::vector<Rational>>& cols,
                                                   const std::vector<Rational>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t ncols = cols.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(ncols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) m[r][c] = cols[c][r];
    m[r][ncols] = rhs[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= ncols; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (m[r][ncols] != 0) return std::nullopt;
  }
  std::vector<Rational> sol(ncols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = m[i][ncols];
  return sol;
}

bool is_monic_integral(const std::vector<Rational>& c) {
  if (c.empty() || c.back() != 1) return false;
  for (const auto& x : c) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

}  // namespace

Polynomial minimal_polynomial(const CycloNumber& x) {
  const std::uint64_t n = x.conductor();
  std::vector<std::vector<Rational>> powers{CycloNumber(n, 1L).coords()};
  CycloNumber p = x;
  for (std::size_t k = 1;; ++k) {
    if (auto sol = solve_columns(powers, p.coords())) {
      std::vector<Rational> coeffs(k + 1);
      for (std::size_t j = 0; j < k; ++j) coeffs[j] = -(*sol)[j];
      coeffs[k] = 1;
      return Polynomial::from_rationals(coeffs);
    }
    powers.push_back(p.coords());
    p *= x;
  }
}

std::optional<std::uint64_t> root_of_unity_order(const CycloNumber& x) {
  if (auto q = x.as_rational()) {
    if (*q == 1) return 1;
    if (*q == -1) return 2;
    return std::nullopt;
  }
  const std::uint64_t n = x.conductor();
  const std::uint64_t bound = n % 2 == 0 ? n : 2 * n;
  // Roots of unity are algebraic integers; cheap rejection first.
  if (!is_monic_integral(*minimal_polynomial(x).rational_coeffs())) return std::nullopt;
  CycloNumber p = x;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    if (p.is_one()) return k;
    p *= x;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> root_of_unity_order_from_minpoly(const Polynomial& minpoly) {
  const auto coeffs = minpoly.rational_coeffs();
  if (!coeffs || !is_monic_integral(*coeffs)) return std::nullopt;
  const auto k = static_cast<std::uint64_t>(minpoly.degree());
  if (k == 0) return std::nullopt;
  // phi(n) >= sqrt(n/2), so phi(n) = k forces n <= 2k^2.
  for (std::uint64_t n = 1; n <= 2 * k * k + 2; ++n) {
    if (euler_phi(n) != k) continue;
    if (qpoly::cyclotomic(n) == *coeffs) return n;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> cyclotomic_product_exponent(const Polynomial& p) {
  auto coeffs = p.rational_coeffs();
  if (!coeffs || coeffs->empty()) return std::nullopt;
  const Rational lead = coeffs->back();
  for (auto& c : *coeffs) c /= lead;
  if (!is_monic_integral(*coeffs)) return std::nullopt;
  qpoly::QPoly rest = *coeffs;
  std::uint64_t exponent = 1;
  const auto k = static_cast<std::uint64_t>(qpoly::degree(rest));
  for (std::uint64_t n = 1; n <= 2 * k * k + 2 && qpoly::degree(rest) > 0; ++n) {
    if (euler_phi(n) > static_cast<std::uint64_t>(qpoly::degree(rest))) continue;
    for (;;) {
      auto [q, r] = qpoly::divmod(rest, qpoly::cyclotomic(n));
      if (!r.empty()) break;
      rest = std::move(q);
      exponent = std::lcm(exponent, n);
    }
  }
  if (qpoly::degree(rest) != 0) return std::nullopt;
  return exponent;
}

}  // namespace arithdyn
