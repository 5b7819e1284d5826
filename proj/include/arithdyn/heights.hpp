#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithdyn/line.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

class HeightBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A place of Q: prime == 0 stands for the archimedean absolute value.
struct PlaceTag {
  Integer prime = 0;

  static PlaceTag archimedean() { return {}; }
  static PlaceTag at(const Integer& p) { return {p}; }
  bool is_archimedean() const { return prime == 0; }
  friend bool operator==(const PlaceTag& a, const PlaceTag& b) { return a.prime == b.prime; }
};

std::string to_string(const PlaceTag& place);

/// Finite sum of c_i * log(b_i) with rational c_i and integer b_i > 1. Bases
/// of moderate size are split into primes so equal values compare equal.
class LogCombination {
 public:
  LogCombination() = default;
  /// log|q|, q != 0.
  static LogCombination log_abs(const Rational& q);
  static LogCombination log_prime(const Integer& p, const Rational& coefficient = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Integer, Rational>& terms() const { return terms_; }

  LogCombination& operator+=(const LogCombination& o);
  LogCombination& operator-=(const LogCombination& o);
  LogCombination& operator*=(const Rational& c);
  friend LogCombination operator+(LogCombination a, const LogCombination& b) { return a += b; }
  friend LogCombination operator-(LogCombination a, const LogCombination& b) { return a -= b; }
  friend LogCombination operator*(LogCombination a, const Rational& c) { return a *= c; }
  friend bool operator==(const LogCombination& a, const LogCombination& b) { return a.terms_ == b.terms_; }

  /// Value and an upper bound on its floating-point error.
  std::pair<double, double> evaluate() const;
  /// e.g. "log(2)", "3/2*log(3) - log(5)", "0".
  std::string to_string() const;

 private:
  void add_term(const Integer& base, const Rational& c);

  std::map<Integer, Rational> terms_;
};

struct LocalHeight {
  PlaceTag place;
  double value = 0;
  double radius = 0;
  std::optional<LogCombination> exact;
  unsigned iterations = 0;
};

/// The true height lies in [value - error_radius, value + error_radius].
struct HeightResult {
  double value = 0;
  double error_radius = 0;
  std::vector<LocalHeight> locals;
  /// Present when every local term has a closed form.
  std::optional<LogCombination> exact;
};

/// log max(|p|, |q|) for x = p/q in lowest terms.
double weil_height(const Rational& x);
LogCombination weil_height_exact(const Rational& x);

/// Primes where a coefficient has negative valuation or the leading
/// coefficient is not a unit. Ascending.
std::vector<Integer> bad_primes(const Polynomial& f);

/// Upper bounds C_v >= sup_z |log+|f(z)|_v - d log+|z|_v| per place (zero at
/// good primes), and their sum. With these,
///   |lambda_v(x) - log+|f^n(x)|_v / d^n| <= C_v / (d^n (d - 1)).
struct HeightConstants {
  double archimedean = 0;
  std::vector<std::pair<Integer, double>> primes;
  double total = 0;
};
HeightConstants height_constants(const Polynomial& f);

/// min(B, fixed) with B = min_{j<d} (v_j - v_d)/(d - j) and
/// fixed = -v_d/(d - 1), valuations at p of the coefficients of f over Q.
/// Once v_p(z) < threshold, the leading term dominates forever and
/// v_p(f^k(z)) = fixed + d^k (v_p(z) - fixed) tends to -infinity.
/// At good primes this is 0.
Rational valuation_escape_threshold(const Polynomial& f, const Integer& p);

struct PAdicLocalHeight {
  /// lambda_p(x) = coefficient * log p when exact.
  bool exact = false;
  Rational coefficient;
  /// Otherwise lambda_p(x) lies in [max(0, partial - bound), partial + bound].
  double partial = 0;
  double bound = 0;
  unsigned iterations = 0;
};

/// Local canonical height at a finite prime for f over Q.
PAdicLocalHeight local_height_padic(const Polynomial& f, const Rational& x, const Integer& p,
                                    unsigned budget = 256);

struct ArchOptions {
  unsigned max_iterations = 4096;
  long max_precision = 8192;
};

/// Green function G_f(x) = lim log+|f^n(x)| / d^n at the embedding
/// zeta_N -> exp(2 pi i k / N), with |error| <= tol. Throws
/// HeightBudgetExceeded when tol cannot be reached.
LocalHeight local_height_arch(const Polynomial& f, std::uint64_t embedding, const CycloNumber& x, double tol,
                              const ArchOptions& options = {});
/// Same, treating the double-precision point as exact.
LocalHeight local_height_arch(const Polynomial& f, std::uint64_t embedding, std::complex<double> x, double tol,
                              const ArchOptions& options = {});

/// Canonical height of x in Q under f over Q, summed over the archimedean
/// place, bad primes and primes dividing the denominator of x.
HeightResult canonical_height(const Polynomial& f, const Rational& x, double tol);

/// Sum of coordinate heights; radii add.
HeightResult canonical_height_split(const SplitPolynomialMap& phi, const std::vector<Rational>& point, double tol);

/// h(f^n(x)) / d^n by exact iteration; throws HeightBudgetExceeded once an
/// iterate exceeds max_bits. Differs from the canonical height by at most
/// height_constants(f).total / (d^n (d - 1)).
double naive_limit_height(const Polynomial& f, const Rational& x, unsigned n, std::size_t max_bits = 1u << 24);

}  // namespace arithdyn
