#include "arithdyn/heights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "arithdyn/interval.hpp"
#include "arithdyn/padic.hpp"

namespace arithdyn {

namespace {

// Relative inflation applied to double-valued upper bounds.
constexpr double kUp = 1.0 + 0x1p-40;

std::vector<Rational> require_rational(const Polynomial& f, const char* what) {
  auto coeffs = f.rational_coeffs();
  if (!coeffs) throw std::invalid_argument(std::string(what) + " needs a polynomial over Q");
  return *coeffs;
}

void require_degree(const Polynomial& f) {
  if (f.degree() < 2) throw std::invalid_argument("height computations need degree >= 2");
}

Rational ceil_rational(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

double log_of(const Integer& p) { return log_abs(p); }

}  // namespace

std::string to_string(const PlaceTag& place) {
  return place.is_archimedean() ? "inf" : place.prime.get_str();
}

// ---------------------------------------------------------------------------
// LogCombination

void LogCombination::add_term(const Integer& base, const Rational& c) {
  if (base <= 1 || c == 0) return;
  auto bump = [&](const Integer& b, const Rational& coef) {
    auto [it, fresh] = terms_.try_emplace(b, 0);
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  };
  if (mpz_sizeinbase(base.get_mpz_t(), 2) <= 96) {
    for (const auto& [p, e] : factor(base)) bump(p, c * e);
  } else {
    bump(base, c);
  }
}

LogCombination LogCombination::log_abs(const Rational& q) {
  if (q == 0) throw std::domain_error("log of zero");
  LogCombination out;
  out.add_term(abs(q.get_num()), 1);
  out.add_term(q.get_den(), -1);
  return out;
}

LogCombination LogCombination::log_prime(const Integer& p, const Rational& coefficient) {
  LogCombination out;
  out.add_term(p, coefficient);
  return out;
}

LogCombination& LogCombination::operator+=(const LogCombination& o) {
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

LogCombination& LogCombination::operator-=(const LogCombination& o) {
  for (const auto& [b, c] : o.terms_) add_term(b, -c);
  return *this;
}

LogCombination& LogCombination::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, coef] : terms_) coef *= c;
  return *this;
}

std::pair<double, double> LogCombination::evaluate() const {
  long double sum = 0, mag = 0;
  for (const auto& [b, c] : terms_) {
    const long double term = static_cast<long double>(c.get_d()) * static_cast<long double>(arithdyn::log_abs(b));
    sum += term;
    mag += std::fabs(term);
  }
  return {static_cast<double>(sum), static_cast<double>(mag) * 0x1p-50};
}

std::string LogCombination::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += arithdyn::to_string(mag) + "*";
    out += "log(" + b.get_str() + ")";
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weil height, bad primes, constants

double weil_height(const Rational& x) {
  if (x == 0) return 0.0;
  const Integer num = abs(x.get_num());
  return log_abs(num > x.get_den() ? num : x.get_den());
}

LogCombination weil_height_exact(const Rational& x) {
  if (x == 0) return {};
  const Integer num = abs(x.get_num());
  return LogCombination::log_abs(Rational(num > x.get_den() ? num : x.get_den()));
}

std::vector<Integer> bad_primes(const Polynomial& f) {
  const auto coeffs = require_rational(f, "bad_primes");
  std::set<Integer> out;
  auto collect = [&](const Integer& n) {
    for (const auto& p : prime_divisors(abs(n))) out.insert(p);
  };
  for (const auto& c : coeffs) collect(c.get_den());
  if (!coeffs.empty()) collect(coeffs.back().get_num());
  return {out.begin(), out.end()};
}

namespace {

// Archimedean data for one embedding at a fixed precision.
struct ArchData {
  std::vector<ComplexInterval> coeffs;
  int degree = 0;
  Interval log_lead;
  double A = 0;          // upper bound on sum_{j<d} |a_j| / |a_d|
  double C = 0;          // upper bound on the archimedean constant
  double escape = 0;     // escape radius for the closed-form tail
};

ArchData arch_data(const Polynomial& f, std::uint64_t embedding, mpfr_prec_t prec) {
  ArchData data;
  data.degree = f.degree();
  const int d = data.degree;
  for (int j = 0; j <= d; ++j) data.coeffs.push_back(ComplexInterval::embed(f.coeff(j), embedding, prec));
  const Interval lead = data.coeffs[d].abs();
  const Interval inv_lead = lead.reciprocal();
  Interval sum(prec);
  for (int j = 0; j < d; ++j) sum = sum + data.coeffs[j].abs();
  const Interval A = sum * inv_lead;
  data.A = A.upper();
  data.log_lead = lead.log();
  const Interval zero(0.0, prec), one(1.0, prec), two(2.0, prec);
  const Interval U = Interval::max(zero, data.log_lead + (one + A).log());
  const Interval R = Interval::max(one, A.scaled(2.0));
  const Interval L = Interval::max(Interval::max(zero, two.log() - data.log_lead),
                                   R.log() * Interval(Rational(d), prec));
  data.C = Interval::max(U, L).upper() * kUp;
  const Interval growth = ((two * inv_lead).log() * Interval(Rational(1, d - 1), prec)).exp();
  data.escape = std::max({1.0, 2.0 * data.A, growth.upper()}) * kUp;
  return data;
}

struct PrimeData {
  std::vector<long> vals;  // LONG_MAX marks a zero coefficient
  int degree = 0;
  double C = 0;
};

constexpr long kInfVal = std::numeric_limits<long>::max();

PrimeData prime_data(const std::vector<Rational>& coeffs, const Integer& p) {
  PrimeData data;
  data.degree = static_cast<int>(coeffs.size()) - 1;
  const int d = data.degree;
  for (const auto& c : coeffs) data.vals.push_back(c == 0 ? kInfVal : valuation(c, p));
  const long vd = data.vals[d];
  long worst = 0;
  for (long v : data.vals) {
    if (v != kInfVal) worst = std::max(worst, -v);
  }
  Rational log_radius = 0;  // in units of log p
  for (int j = 0; j < d; ++j) {
    if (data.vals[j] == kInfVal) continue;
    log_radius = std::max(log_radius, Rational(Rational(vd - data.vals[j]) / (d - j)));
  }
  const Rational lower = std::max({Rational(0), Rational(vd), Rational(log_radius * d)});
  const Rational c = std::max(Rational(worst), lower);
  data.C = c.get_d() * log_of(p) * kUp;
  return data;
}

Rational escape_threshold(const std::vector<long>& v) {
  const int d = static_cast<int>(v.size()) - 1;
  Rational threshold = Rational(-v[d]) / (d - 1);
  for (int j = 0; j < d; ++j) {
    if (v[j] != kInfVal) threshold = std::min(threshold, Rational(Rational(v[j] - v[d]) / (d - j)));
  }
  return threshold;
}

}  // namespace

Rational valuation_escape_threshold(const Polynomial& f, const Integer& p) {
  require_degree(f);
  return escape_threshold(prime_data(require_rational(f, "valuation_escape_threshold"), p).vals);
}

HeightConstants height_constants(const Polynomial& f) {
  require_degree(f);
  const auto coeffs = require_rational(f, "height_constants");
  HeightConstants out;
  out.archimedean = arch_data(f, 1, 128).C;
  out.total = out.archimedean;
  for (const auto& p : bad_primes(f)) {
    const double c = prime_data(coeffs, p).C;
    out.primes.emplace_back(p, c);
    out.total += c;
  }
  out.total *= kUp;
  return out;
}

// ---------------------------------------------------------------------------
// p-adic local heights

PAdicLocalHeight local_height_padic(const Polynomial& f, const Rational& x, const Integer& p, unsigned budget) {
  require_degree(f);
  if (!is_prime(p)) throw std::invalid_argument("local_height_padic needs a prime, got " + p.get_str());
  const auto coeffs = require_rational(f, "local_height_padic");
  const PrimeData data = prime_data(coeffs, p);
  const int d = data.degree;
  const auto& v = data.vals;
  PAdicLocalHeight out;

  const bool good = v[d] == 0 && std::all_of(v.begin(), v.end(), [](long w) { return w >= 0; });
  if (good) {
    out.exact = true;
    out.coefficient = x == 0 ? 0 : std::max(0L, -valuation(x, p));
    return out;
  }

  const Rational fixed = Rational(-v[d]) / (d - 1);
  const Rational threshold = escape_threshold(v);
  // The disk v(z) >= k maps into itself when v_j + (j - 1) k >= 0 for all
  // j >= 1 and v_0 >= k; orbits reaching it are bounded.
  std::optional<long> disk;
  if (v[1] == kInfVal || v[1] >= 0) {
    Rational k = std::numeric_limits<long>::min() / 2;
    for (int j = 2; j <= d; ++j) {
      if (v[j] != kInfVal) k = std::max(k, ceil_rational(Rational(-v[j]) / (j - 1)));
    }
    if (v[0] == kInfVal || Rational(v[0]) >= k) disk = k.get_num().get_si();
  }

  const double logp = log_of(p);
  bool have_partial = false;
  for (long prec = 64; prec <= 4096; prec *= 2) {
    const CappedPAdicRing ring(p);
    long span = 0;
    for (long w : v) {
      if (w != kInfVal) span = std::max(span, std::abs(w));
    }
    std::vector<PAdicValue> pc;
    for (const auto& c : coeffs) {
      pc.push_back(ring.from_rational(c, (c == 0 ? 0 : valuation(c, p)) + 4 * prec + span));
    }
    PAdicValue z = ring.from_rational(x, (x == 0 ? 0 : valuation(x, p)) + prec);
    Integer dn = 1;
    bool lost = false;
    for (unsigned n = 0;; ++n) {
      if (!z.indistinct && Rational(z.val) < threshold) {
        out.exact = true;
        out.coefficient = (fixed - z.val) / dn;
        out.iterations = n;
        return out;
      }
      if (disk && z.min_valuation() >= *disk) {
        out.exact = true;
        out.coefficient = 0;
        out.iterations = n;
        return out;
      }
      if (z.indistinct && z.abs < 0) {
        lost = true;
        break;
      }
      const long lp = z.indistinct ? 0 : std::max(0L, -z.val);
      const double scale = 1.0 / dn.get_d();
      out.partial = static_cast<double>(lp) * logp * scale;
      out.bound = data.C * scale / (d - 1) * kUp;
      out.iterations = n;
      have_partial = true;
      if (n >= budget) return out;
      z = ring.evaluate(pc, z);
      dn *= d;
    }
    if (!lost) break;
  }
  if (!have_partial) throw HeightBudgetExceeded("p-adic precision budget exhausted at p = " + p.get_str());
  return out;
}

// ---------------------------------------------------------------------------
// Archimedean local heights

namespace {

// True when some box around z is mapped into its own interior by an iterate
// of f, which bounds the forward orbit of z.
bool trapped(const ArchData& data, const ComplexInterval& z) {
  const mpfr_prec_t prec = z.re.precision();
  const double cre = z.re.mid(), cim = z.im.mid();
  const double scale = std::max(1.0, std::hypot(cre, cim));
  for (double rho : {0.3, 0.1, 0.03, 0.01, 1e-3, 1e-5}) {
    const ComplexInterval box = ComplexInterval::box(cre, cim, rho * scale, prec);
    if (!z.strictly_inside(box)) continue;
    ComplexInterval y = box;
    for (int k = 1; k <= 16; ++k) {
      y = evaluate(data.coeffs, y);
      if (!y.re.is_finite() || !y.im.is_finite() || y.width() > 1e6 * scale) break;
      if (y.strictly_inside(box)) return true;
    }
  }
  return false;
}

LocalHeight arch_from_interval(const Interval& g, unsigned iterations) {
  LocalHeight out;
  out.place = PlaceTag::archimedean();
  out.value = g.mid();
  out.radius = (g.width() / 2 + std::fabs(out.value) * 0x1p-52) * kUp;
  out.iterations = iterations;
  return out;
}

using PointAt = std::function<ComplexInterval(mpfr_prec_t)>;

LocalHeight green(const Polynomial& f, std::uint64_t embedding, const PointAt& point, double tol,
                  const ArchOptions& options) {
  require_degree(f);
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const int d = f.degree();
  const Rational inv_d1 = Rational(1, d - 1);

  if (f.is_monomial()) {
    // f^n(z) = c^{(d^n - 1)/(d - 1)} z^{d^n}.
    const mpfr_prec_t prec = 256;
    const ComplexInterval z = point(prec);
    const Interval r = z.abs();
    LocalHeight out;
    if (r.upper() == 0) {
      out.exact = LogCombination();
      return out;
    }
    const Interval c = ComplexInterval::embed(f.leading(), embedding, prec).abs();
    // G is nondecreasing in |z|, so an enclosure of |z| straddling zero can
    // be replaced by its upper end for the upper bound.
    const Interval r_pos = r.contains_zero() ? Interval(r.upper(), prec) : r;
    Interval g = Interval::max(Interval(0.0, prec), r_pos.log() + c.log() * Interval(inv_d1, prec));
    if (r.contains_zero()) g = Interval::hull(0.0, g.upper(), prec);
    return arch_from_interval(g, 0);
  }

  for (long prec = 128; prec <= options.max_precision; prec *= 2) {
    const ArchData data = arch_data(f, embedding, prec);
    const Interval cshift = Interval(data.C, prec) * Interval(inv_d1, prec);
    ComplexInterval z = point(prec);
    Integer dn = 1;
    bool restart = false;
    for (unsigned n = 0; n <= options.max_iterations; ++n) {
      const Interval inv_dn(Rational(1) / Rational(dn), prec);
      const Interval modulus = z.abs();
      const double scale = std::max(1.0, modulus.upper());
      if (z.width() > 1e-3 * scale) {
        restart = true;
        break;
      }
      Interval g(prec);
      if (modulus.lower() >= data.escape) {
        // Escape regime: G = log|z| + log|a_d|/(d-1) + O(2A / (|z| (d-1))).
        const double err = 2.0 * data.A / (modulus.lower() * (d - 1)) * kUp;
        g = (modulus.log() + data.log_lead * Interval(inv_d1, prec)).widened(err);
      } else {
        if (n > 0 && n % 8 == 0 && trapped(data, z)) {
          LocalHeight out;
          out.exact = LogCombination();
          out.iterations = n;
          return out;
        }
        // Bounded regime: |G - log+|z|| <= C / (d-1).
        const Interval lp = modulus.log_plus();
        g = Interval::hull(std::max(0.0, (lp - cshift).lower()), (lp + cshift).upper(), prec);
      }
      g = Interval::max(Interval(0.0, prec), g) * inv_dn;
      if (g.width() / 2 <= tol / 2) return arch_from_interval(g, n);
      z = evaluate(data.coeffs, z);
      dn *= d;
    }
    if (!restart) break;
  }
  throw HeightBudgetExceeded("archimedean tolerance unreachable within iteration/precision budget");
}

}  // namespace

LocalHeight local_height_arch(const Polynomial& f, std::uint64_t embedding, const CycloNumber& x, double tol,
                              const ArchOptions& options) {
  if (x.conductor() != f.conductor()) throw ConductorMismatch(f.conductor(), x.conductor());
  if (std::gcd(embedding, f.conductor()) != 1) {
    throw std::invalid_argument("embedding index must be coprime to the conductor");
  }
  if (f.degree() >= 2 && f.is_monomial()) {
    const auto c = f.leading().as_rational();
    const auto q = x.as_rational();
    if (c && q) {
      // max(0, log|x| + log|c| / (d - 1)) decided exactly.
      LocalHeight out;
      if (*q == 0) {
        out.exact = LogCombination();
        return out;
      }
      const int d = f.degree();
      Rational mag = abs(*q);
      Rational t = 1;
      for (int i = 0; i < d - 1; ++i) t *= mag;
      t *= abs(*c);
      if (t <= 1) {
        out.exact = LogCombination();
        return out;
      }
      LogCombination g = LogCombination::log_abs(*q) + LogCombination::log_abs(*c) * Rational(1, d - 1);
      const auto [value, err] = g.evaluate();
      out.value = value;
      out.radius = err;
      out.exact = std::move(g);
      return out;
    }
  }
  return green(f, embedding, [&](mpfr_prec_t prec) { return ComplexInterval::embed(x, embedding, prec); }, tol,
               options);
}

LocalHeight local_height_arch(const Polynomial& f, std::uint64_t embedding, std::complex<double> x, double tol,
                              const ArchOptions& options) {
  if (std::gcd(embedding, f.conductor()) != 1) {
    throw std::invalid_argument("embedding index must be coprime to the conductor");
  }
  return green(f, embedding,
               [&](mpfr_prec_t prec) { return ComplexInterval{Interval(x.real(), prec), Interval(x.imag(), prec)}; },
               tol, options);
}

// ---------------------------------------------------------------------------
// Canonical heights

namespace {

// Exact orbit check for small inputs: preperiodic points have height 0 at
// every place.
bool small_preperiodic(const std::vector<Rational>& coeffs, const Rational& x) {
  std::set<Rational> seen;
  Rational y = x;
  for (int n = 0; n < 32; ++n) {
    if (!seen.insert(y).second) return true;
    if (bit_size(y) > 2048) return false;
    Rational acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * y + coeffs[j];
    y = acc;
  }
  return false;
}

unsigned steps_for(double C, int d, double tol) {
  if (C <= 0) return 0;
  const double need = std::log(C / ((d - 1) * tol)) / std::log(static_cast<double>(d));
  return need <= 0 ? 0 : static_cast<unsigned>(std::ceil(need)) + 1;
}

}  // namespace

HeightResult canonical_height(const Polynomial& f, const Rational& x, double tol) {
  require_degree(f);
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const auto coeffs = require_rational(f, "canonical_height");
  const int d = f.degree();

  std::set<Integer> primes;
  const auto bad = bad_primes(f);
  primes.insert(bad.begin(), bad.end());
  for (const auto& p : prime_divisors(x.get_den())) primes.insert(p);

  HeightResult out;
  if (small_preperiodic(coeffs, x)) {
    out.locals.push_back({PlaceTag::archimedean(), 0, 0, LogCombination(), 0});
    for (const auto& p : primes) out.locals.push_back({PlaceTag::at(p), 0, 0, LogCombination(), 0});
    out.exact = LogCombination();
    return out;
  }

  // Split the tolerance: a quarter to the archimedean place, a quarter shared
  // by bad primes whose orbit never settles.
  out.locals.push_back(local_height_arch(f, 1, CycloNumber(1, x), tol / 4));
  const double share = tol / (4.0 * static_cast<double>(std::max<std::size_t>(1, bad.size())));
  for (const auto& p : primes) {
    LocalHeight local;
    local.place = PlaceTag::at(p);
    if (!std::binary_search(bad.begin(), bad.end(), p)) {
      const Rational c = std::max(0L, -valuation(x, p));
      local.exact = LogCombination::log_prime(p, c);
    } else {
      const double C = prime_data(coeffs, p).C;
      const unsigned budget = std::max(256u, steps_for(C, d, share));
      const PAdicLocalHeight r = local_height_padic(f, x, p, budget);
      local.iterations = r.iterations;
      if (r.exact) {
        local.exact = LogCombination::log_prime(p, r.coefficient);
      } else {
        const double lo = std::max(0.0, r.partial - r.bound), hi = r.partial + r.bound;
        local.value = (lo + hi) / 2;
        local.radius = (hi - lo) / 2 * kUp;
        if (local.radius > share) {
          throw HeightBudgetExceeded("p-adic tolerance unreachable at p = " + p.get_str());
        }
      }
    }
    if (local.exact) {
      const auto [value, err] = local.exact->evaluate();
      local.value = value;
      local.radius = err;
    }
    out.locals.push_back(std::move(local));
  }

  bool all_exact = true;
  LogCombination exact;
  for (const auto& local : out.locals) {
    out.value += local.value;
    out.error_radius += local.radius;
    if (local.exact) {
      exact += *local.exact;
    } else {
      all_exact = false;
    }
  }
  out.error_radius = (out.error_radius + std::fabs(out.value) * 0x1p-50) * kUp;
  if (all_exact) out.exact = std::move(exact);
  return out;
}

HeightResult canonical_height_split(const SplitPolynomialMap& phi, const std::vector<Rational>& point, double tol) {
  if (point.size() != phi.dimension()) throw std::invalid_argument("point dimension mismatch");
  HeightResult out;
  LogCombination exact;
  bool all_exact = true;
  const double share = tol / static_cast<double>(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    HeightResult h = canonical_height(phi[i], point[i], share);
    out.value += h.value;
    out.error_radius += h.error_radius;
    if (h.exact) {
      exact += *h.exact;
    } else {
      all_exact = false;
    }
    for (auto& local : h.locals) out.locals.push_back(std::move(local));
  }
  out.error_radius *= kUp;
  if (all_exact) out.exact = std::move(exact);
  return out;
}

double naive_limit_height(const Polynomial& f, const Rational& x, unsigned n, std::size_t max_bits) {
  require_degree(f);
  const auto coeffs = require_rational(f, "naive_limit_height");
  Rational y = x;
  for (unsigned k = 0; k < n; ++k) {
    Rational acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * y + coeffs[j];
    y = acc;
    if (bit_size(y) > max_bits) {
      throw HeightBudgetExceeded("iterate " + std::to_string(k + 1) + " exceeds " + std::to_string(max_bits) +
                                 " bits");
    }
  }
  return weil_height(y) / std::pow(static_cast<double>(f.degree()), static_cast<double>(n));
}

}  // namespace arithdyn
