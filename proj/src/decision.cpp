#include "arithdyn/decision.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "arithdyn/algebra.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/serialize.hpp"

namespace arithdyn {

namespace {

constexpr mpfr_prec_t kPrec = 128;
// Iterates beyond this size are not worth carrying exactly.
constexpr std::size_t kMaxIterateBits = std::size_t{1} << 22;
constexpr std::uint64_t kMaxJointSteps = 1u << 22;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_degree(const Polynomial& f) {
  if (f.degree() < 2) throw std::invalid_argument("dynamics needs degree >= 2");
}

Interval escape_radius_interval(const Polynomial& f, std::uint64_t embedding) {
  const int d = f.degree();
  Interval sum(2.0, kPrec);
  for (int j = 0; j < d; ++j) sum = sum + ComplexInterval::embed(f.coeff(j), embedding, kPrec).abs();
  const Interval lead = ComplexInterval::embed(f.leading(), embedding, kPrec).abs();
  return Interval::max(Interval(1.0, kPrec), sum * lead.reciprocal());
}

struct PrimeWatch {
  Integer prime;
  Rational threshold;
};

std::optional<ValuationEscape> valuation_escape(const std::vector<PrimeWatch>& watch, const Rational& x,
                                                std::uint64_t iteration, std::uint64_t conductor) {
  if (x == 0) return std::nullopt;
  for (const auto& w : watch) {
    const long v = valuation(x, w.prime);
    if (Rational(v) < w.threshold) return ValuationEscape{w.prime, iteration, v, w.threshold, CycloNumber(conductor, x)};
  }
  return std::nullopt;
}

}  // namespace

std::string witness_name(const Witness& w) {
  return std::visit(overloaded{
                        [](const ArchimedeanEscape&) { return std::string("ArchimedeanEscape"); },
                        [](const ValuationEscape&) { return std::string("ValuationEscape"); },
                        [](const ConstantCoordinateEscapes&) { return std::string("ConstantCoordinateEscapes"); },
                        [](const NoLinearFactor&) { return std::string("NoLinearFactor"); },
                        [](const CommutationFails&) { return std::string("CommutationFails"); },
                        [](const NonTorsionTranslate&) { return std::string("NonTorsionTranslate"); },
                    },
                    w);
}

double escape_radius(const Polynomial& f, std::uint64_t embedding) {
  require_degree(f);
  return escape_radius_interval(f, embedding).upper();
}

Verdict orbit_point(const Polynomial& f, const CycloNumber& x, std::uint64_t budget) {
  require_degree(f);
  if (f.conductor() != x.conductor()) throw ConductorMismatch(f.conductor(), x.conductor());
  const std::uint64_t N = f.conductor();

  // Conjugate embeddings give equal moduli; one of each pair suffices.
  std::vector<std::pair<std::uint64_t, double>> radii;
  for (std::uint64_t k : embedding_indices(N)) {
    if (2 * k > N && N > 2) continue;
    radii.emplace_back(k, escape_radius(f, k));
  }

  std::vector<PrimeWatch> watch;
  const auto rational = f.rational_coeffs();
  const auto x0 = x.as_rational();
  if (rational && x0) {
    std::set<Integer> primes;
    for (const auto& p : bad_primes(f)) primes.insert(p);
    for (const auto& p : prime_divisors(x0->get_den())) primes.insert(p);
    for (const auto& p : primes) watch.push_back({p, valuation_escape_threshold(f, p)});
  }

  std::map<CycloNumber, std::uint64_t> seen;
  CycloNumber z = x;
  for (std::uint64_t n = 0;; ++n) {
    if (auto it = seen.find(z); it != seen.end()) return Preperiodic{it->second, n - it->second};
    seen.emplace(z, n);
    for (const auto& [k, R] : radii) {
      if (ComplexInterval::embed(z, k, kPrec).abs().lower() >= R) return NotPreperiodic{ArchimedeanEscape{n, R, k, z}};
    }
    if (!watch.empty()) {
      if (auto w = valuation_escape(watch, *z.as_rational(), n, N)) return NotPreperiodic{*w};
    }
    if (n >= budget) return Unknown{"orbit budget exhausted", budget};
    if (z.bit_size() > kMaxIterateBits) return Unknown{"iterate size limit reached", budget};
    z = f(z);
  }
}

bool verify_escape(const Polynomial& f, const EscapeWitness& w) {
  require_degree(f);
  return std::visit(overloaded{
                        [&](const ArchimedeanEscape& e) {
                          if (e.point.conductor() != f.conductor()) return false;
                          if (e.radius < escape_radius(f, e.embedding)) return false;
                          return ComplexInterval::embed(e.point, e.embedding, kPrec).abs().lower() >= e.radius;
                        },
                        [&](const ValuationEscape& e) {
                          const auto q = e.point.as_rational();
                          if (!q || *q == 0 || !f.rational_coeffs()) return false;
                          if (e.threshold != valuation_escape_threshold(f, e.prime)) return false;
                          return valuation(*q, e.prime) == e.valuation && Rational(e.valuation) < e.threshold;
                        },
                    },
                    w);
}

PairwiseRelation pairwise_relation(const Polynomial& f1, const Polynomial& fi, const AffineLinearMap& s) {
  const Polynomial g = affine_conjugate(fi, s);
  const auto tau = linear_factor(g, f1);
  if (!tau) return Unrelated{SameJuliaFailure::NoLinearFactor, std::nullopt};
  if (!symmetry_check(f1, *tau)) return Unrelated{SameJuliaFailure::CommutationFails, tau};
  return Related{*tau, affine_order(*tau)};
}

ExponentSequence exponent_sequence(std::uint64_t d, std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("exponent_sequence needs r >= 1");
  ExponentSequence out;
  std::map<std::uint64_t, std::uint64_t> first;
  std::uint64_t e = 1 % r;
  for (std::uint64_t k = 1;; ++k) {
    if (auto it = first.find(e); it != first.end()) {
      out.preperiod = it->second - 1;
      out.period = k - it->second;
      return out;
    }
    first.emplace(e, k);
    out.residues.push_back(e);
    e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(d) * e + 1) % r);
  }
}

MonomialBranch monomial_branch_check(const CycloNumber& gamma, const CycloNumber& delta) {
  if (!delta.is_zero()) return NotTorsion{};
  if (auto n = root_of_unity_order(gamma)) return TorsionTranslate{*n};
  return NotTorsion{};
}

MonomialBranch monomial_branch_check(const Polynomial& gamma_annihilator, const CycloNumber& delta,
                                     std::size_t degree_cap) {
  if (!delta.is_zero()) return NotTorsion{};
  if (gamma_annihilator.degree() < 1) throw std::invalid_argument("annihilator must be nonconstant");
  const auto degree = static_cast<std::size_t>(gamma_annihilator.degree());
  if (degree > degree_cap) return DegreeCapExceeded{degree};
  if (auto n = cyclotomic_product_exponent(gamma_annihilator)) return TorsionTranslate{*n};
  return NotTorsion{};
}

std::optional<Line> line_image(const SplitPolynomialMap& phi, const Line& line) {
  if (phi.dimension() != line.dimension()) throw std::invalid_argument("line and map dimensions differ");
  if (phi.conductor() != line.conductor()) throw ConductorMismatch(phi.conductor(), line.conductor());
  const std::uint64_t N = phi.conductor();
  const std::size_t m = phi.dimension();
  std::vector<Polynomial> g;
  for (std::size_t i = 0; i < m; ++i) {
    g.push_back(compose(phi[i], Polynomial(N, {line.base()[i], line.direction()[i]})));
  }
  std::size_t j = 0;
  while (j < m && line.direction()[j].is_zero()) ++j;
  if (j == m) throw std::invalid_argument("line direction is zero");

  std::vector<CycloNumber> base, direction;
  for (std::size_t i = 0; i < m; ++i) {
    if (g[i].degree() <= 0) {
      base.push_back(g[i].coeff(0));
      direction.emplace_back(N, 0);
      continue;
    }
    if (g[i].degree() != g[j].degree()) return std::nullopt;
    const CycloNumber alpha = g[i].leading() / g[j].leading();
    const Polynomial rest = g[i] - alpha * g[j];
    if (rest.degree() > 0) return std::nullopt;
    base.push_back(rest.coeff(0));
    direction.push_back(alpha);
  }
  return Line(std::move(base), std::move(direction));
}

namespace {

struct Component {
  bool multiplicative = false;
  std::uint64_t modulus = 1;
};

// All directions nonzero. Reduces coordinate i to the first by
// sigma_i(x) = (V_1/V_i)(x - P_i) + P_1, which maps the line onto the diagonal.
Verdict decide_moving(const std::vector<Polynomial>& maps, const std::vector<CycloNumber>& P,
                      const std::vector<CycloNumber>& V, const std::vector<std::size_t>& index) {
  const std::size_t m = maps.size();
  if (m == 1) return Preperiodic{0, 1};
  const Polynomial& f1 = maps[0];
  const auto d = static_cast<std::uint64_t>(f1.degree());
  std::vector<Component> comps;

  for (std::size_t i = 1; i < m; ++i) {
    const CycloNumber slope = V[0] / V[i];
    const AffineLinearMap sigma(slope, P[0] - slope * P[i]);
    const PairwiseRelation rel = pairwise_relation(f1, maps[i], sigma);
    if (const auto* u = std::get_if<Unrelated>(&rel)) {
      if (u->reason == SameJuliaFailure::CommutationFails) return NotPreperiodic{CommutationFails{index[i], *u->tau}};
      return NotPreperiodic{NoLinearFactor{index[i]}};
    }
    const Related& r = std::get<Related>(rel);
    if (r.order) {
      comps.push_back({false, *r.order});
      continue;
    }
    // Infinite rotation group: both maps are conjugate to power maps and the
    // line becomes v = gamma u + delta in centered coordinates.
    const auto pm1 = power_map_form(f1);
    const auto pmi = power_map_form(maps[i]);
    if (!pm1 || !pmi) return Unknown{"infinite symmetry group without power-map form", 0};
    const CycloNumber rho = V[i] / V[0];
    const CycloNumber a = rho.pow(d - 1) * pmi->coefficient / pm1->coefficient;
    const CycloNumber delta = sigma.inverse()(pm1->center) - pmi->center;
    const Polynomial annihilator =
        compose(minimal_polynomial(a), Polynomial::monomial(CycloNumber(1, 1), static_cast<unsigned>(d - 1)));
    const MonomialBranch branch = monomial_branch_check(annihilator, delta);
    if (std::holds_alternative<NotTorsion>(branch)) return NotPreperiodic{NonTorsionTranslate{index[i], a}};
    if (const auto* cap = std::get_if<DegreeCapExceeded>(&branch)) {
      return Unknown{"annihilator degree " + std::to_string(cap->degree) + " exceeds cap", 0};
    }
    comps.push_back({true, std::get<TorsionTranslate>(branch).order});
  }

  // Phi^k(L) is determined by the residues e_k = (d^k - 1)/(d - 1) mod r for
  // finite rotations and d^k mod n for torsion slopes, starting at k = 0.
  std::vector<std::uint64_t> state;
  for (const auto& c : comps) state.push_back((c.multiplicative ? 1 : 0) % c.modulus);
  std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
  for (std::uint64_t k = 0; k < kMaxJointSteps; ++k) {
    if (auto it = seen.find(state); it != seen.end()) return Preperiodic{it->second, k - it->second};
    seen.emplace(state, k);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const unsigned __int128 next =
          static_cast<unsigned __int128>(d) * state[c] + (comps[c].multiplicative ? 0 : 1);
      state[c] = static_cast<std::uint64_t>(next % comps[c].modulus);
    }
  }
  return Unknown{"residue cycle too long", kMaxJointSteps};
}

Verdict decide(const std::vector<Polynomial>& maps, const std::vector<CycloNumber>& P,
               const std::vector<CycloNumber>& V, const std::vector<std::size_t>& index, std::uint64_t budget) {
  std::vector<Polynomial> mmaps;
  std::vector<CycloNumber> mP, mV;
  std::vector<std::size_t> mindex;
  std::uint64_t N = 0, k = 1;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!V[i].is_zero()) {
      mmaps.push_back(maps[i]);
      mP.push_back(P[i]);
      mV.push_back(V[i]);
      mindex.push_back(index[i]);
      continue;
    }
    const Verdict v = orbit_point(maps[i], P[i], budget);
    if (const auto* np = std::get_if<NotPreperiodic>(&v)) {
      EscapeWitness escape = std::holds_alternative<ArchimedeanEscape>(np->witness)
                                 ? EscapeWitness{std::get<ArchimedeanEscape>(np->witness)}
                                 : EscapeWitness{std::get<ValuationEscape>(np->witness)};
      return NotPreperiodic{ConstantCoordinateEscapes{index[i], escape}};
    }
    if (const auto* u = std::get_if<Unknown>(&v)) {
      return Unknown{"coordinate " + std::to_string(index[i]) + ": " + u->reason, u->budget};
    }
    const auto& pre = std::get<Preperiodic>(v);
    N = std::max(N, pre.preperiod);
    k = std::lcm(k, pre.period);
  }
  if (mmaps.empty()) throw std::invalid_argument("line direction is zero");
  const Verdict sub = decide_moving(mmaps, mP, mV, mindex);
  if (const auto* pre = std::get_if<Preperiodic>(&sub)) return Preperiodic{std::max(N, pre->preperiod), std::lcm(k, pre->period)};
  return sub;
}

}  // namespace

Verdict line_preperiodic(const SplitPolynomialMap& phi, const Line& line, std::uint64_t budget) {
  if (phi.dimension() != line.dimension()) throw std::invalid_argument("line and map dimensions differ");
  if (phi.conductor() != line.conductor()) throw ConductorMismatch(phi.conductor(), line.conductor());
  require_degree(phi[0]);
  std::vector<std::size_t> index(phi.dimension());
  std::iota(index.begin(), index.end(), std::size_t{1});
  const Verdict v = decide(phi.maps(), line.base(), line.direction(), index, budget);
  if (const auto* pre = std::get_if<Preperiodic>(&v)) {
    if (!replay_certificate(phi, line, *pre)) return Unknown{"certificate replay failed", budget};
  }
  return v;
}

bool replay_certificate(const SplitPolynomialMap& phi, const Line& line, const Preperiodic& cert) {
  if (cert.period == 0) return false;
  Line cur = line;
  for (std::uint64_t i = 0; i < cert.preperiod; ++i) {
    auto next = line_image(phi, cur);
    if (!next) return false;
    cur = *next;
  }
  const Line start = cur;
  for (std::uint64_t i = 0; i < cert.period; ++i) {
    auto next = line_image(phi, cur);
    if (!next) return false;
    cur = *next;
  }
  return cur == start;
}

std::vector<Rational> scan_parameters(double height_bound) {
  if (!std::isfinite(height_bound) || height_bound < 0) throw std::invalid_argument("height bound must be >= 0");
  const double H = std::floor(std::exp(height_bound) * (1 + 1e-12));
  if (H > 1e5) throw std::invalid_argument("height bound too large for a scan");
  const long bound = static_cast<long>(H);
  std::vector<Rational> out;
  for (long q = 1; q <= bound; ++q) {
    for (long p = -bound; p <= bound; ++p) {
      if (std::gcd(p, q) == 1 || (p == 0 && q == 1)) out.push_back(make_rational(p, q));
    }
  }
  return out;
}

ScanReport bogomolov_scan(const SplitPolynomialMap& phi, const Line& line, double height_bound, double tol,
                          unsigned threads) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (phi.dimension() != line.dimension()) throw std::invalid_argument("line and map dimensions differ");
  std::vector<Rational> base, direction;
  for (std::size_t i = 0; i < line.dimension(); ++i) {
    const auto b = line.base()[i].as_rational();
    const auto v = line.direction()[i].as_rational();
    if (!b || !v) throw std::invalid_argument("scan needs a line over Q");
    base.push_back(*b);
    direction.push_back(*v);
  }
  for (const auto& f : phi.maps()) {
    if (!f.rational_coeffs()) throw std::invalid_argument("scan needs maps over Q");
  }

  const std::vector<Rational> params = scan_parameters(height_bound);
  ScanReport report;
  report.rows.resize(params.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < params.size();) {
      ScanRow& row = report.rows[i];
      row.t = params[i];
      for (std::size_t c = 0; c < base.size(); ++c) row.point.push_back(base[c] + params[i] * direction[c]);
      try {
        const HeightResult h = canonical_height_split(phi, row.point, tol);
        row.hhat = h.value;
        row.error = h.error_radius;
        row.flag = h.value <= 2 * tol ? "zero" : "positive";
      } catch (const std::exception& e) {
        row.hhat = std::nan("");
        row.error = std::nan("");
        row.flag = std::string("error: ") + e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, params.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ScanRow& row = report.rows[i];
    if (row.flag == "zero") {
      report.zero_candidates.push_back(i);
    } else if (row.flag == "positive" && (!report.gap || row.hhat < *report.gap)) {
      report.gap = row.hhat;
      report.gap_row = i;
    }
  }
  return report;
}

void write_scan_csv(std::ostream& out, const ScanReport& report) {
  out << "t,point,hhat,error,flag\n";
  for (const auto& row : report.rows) {
    std::string point = "(";
    for (std::size_t i = 0; i < row.point.size(); ++i) point += (i ? ", " : "") + to_string(row.point[i]);
    point += ")";
    out << to_string(row.t) << ",\"" << point << "\"," << format_double(row.hhat) << "," << format_double(row.error)
        << ",";
    if (row.flag.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : row.flag) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out << quoted << "\"\n";
    } else {
      out << row.flag << "\n";
    }
  }
}

}  // namespace arithdyn
