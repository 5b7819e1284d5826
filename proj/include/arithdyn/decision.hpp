#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arithdyn/heights.hpp"
#include "arithdyn/line.hpp"
#include "arithdyn/symmetry.hpp"

namespace arithdyn {

// ---------------------------------------------------------------------------
// Verdicts and witnesses. Coordinate indices in witnesses are 1-based.

/// |f^iteration(x)| >= radius >= R_f under the given embedding, so the orbit
/// moduli at least double from then on.
struct ArchimedeanEscape {
  std::uint64_t iteration = 0;
  double radius = 0;
  std::uint64_t embedding = 1;
  CycloNumber point;
};

/// v_p(f^iteration(x)) lies below the escape threshold at p, after which the
/// valuation decreases without bound.
struct ValuationEscape {
  Integer prime;
  std::uint64_t iteration = 0;
  long valuation = 0;
  Rational threshold;
  CycloNumber point;
};

using EscapeWitness = std::variant<ArchimedeanEscape, ValuationEscape>;

struct ConstantCoordinateEscapes {
  std::size_t index = 0;
  EscapeWitness escape;
};
struct NoLinearFactor {
  std::size_t index = 0;
};
struct CommutationFails {
  std::size_t index = 0;
  AffineLinearMap tau;
};
struct NonTorsionTranslate {
  std::size_t index = 0;
  /// gamma^(d-1) for the slope gamma of the reduced line v = gamma u.
  CycloNumber gamma_power;
};

using Witness =
    std::variant<ArchimedeanEscape, ValuationEscape, ConstantCoordinateEscapes, NoLinearFactor, CommutationFails,
                 NonTorsionTranslate>;

std::string witness_name(const Witness& w);

struct Preperiodic {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
  friend bool operator==(const Preperiodic& a, const Preperiodic& b) {
    return a.preperiod == b.preperiod && a.period == b.period;
  }
};
struct NotPreperiodic {
  Witness witness;
};
struct Unknown {
  std::string reason;
  std::uint64_t budget = 0;
};

using Verdict = std::variant<Preperiodic, NotPreperiodic, Unknown>;

// ---------------------------------------------------------------------------
// Points

/// max(1, (2 + sum_{j<d} |a_j|) / |a_d|) under the embedding, rounded up.
double escape_radius(const Polynomial& f, std::uint64_t embedding = 1);

/// Exact orbit of x under f with repeat detection, archimedean escape at every
/// embedding and, over Q, valuation escape at every relevant prime.
Verdict orbit_point(const Polynomial& f, const CycloNumber& x, std::uint64_t budget = 1000);

/// Rechecks an escape witness from its recorded point alone.
bool verify_escape(const Polynomial& f, const EscapeWitness& w);

// ---------------------------------------------------------------------------
// Lines

struct Related {
  AffineLinearMap tau;
  /// Order of tau; empty when infinite.
  std::optional<std::uint64_t> order;
};
struct Unrelated {
  SameJuliaFailure reason = SameJuliaFailure::NoLinearFactor;
  std::optional<AffineLinearMap> tau;
};
using PairwiseRelation = std::variant<Related, Unrelated>;

/// With g = s o fi o s^-1: Related iff g = tau o f1 and f1 o tau = tau^d o f1.
PairwiseRelation pairwise_relation(const Polynomial& f1, const Polynomial& fi, const AffineLinearMap& s);

struct ExponentSequence {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
  /// e_1, e_2, ... mod r through the end of the first cycle.
  std::vector<std::uint64_t> residues;
};

/// Eventual behaviour of e_k = (d^k - 1)/(d - 1) mod r for k >= 1, via
/// e_1 = 1, e_{k+1} = d e_k + 1.
ExponentSequence exponent_sequence(std::uint64_t d, std::uint64_t r);

struct TorsionTranslate {
  std::uint64_t order = 0;
};
struct NotTorsion {};
struct DegreeCapExceeded {
  std::size_t degree = 0;
};
using MonomialBranch = std::variant<TorsionTranslate, NotTorsion, DegreeCapExceeded>;

/// Line v = gamma u + delta in the multiplicative model: a torsion translate
/// iff delta = 0 and gamma is a root of unity.
MonomialBranch monomial_branch_check(const CycloNumber& gamma, const CycloNumber& delta);
/// Same, with gamma known through a polynomial over Q whose roots are
/// either all torsion or all not (e.g. m_a(z^(d-1)) for a = gamma^(d-1)).
/// The order returned is a multiple of the order of every root.
MonomialBranch monomial_branch_check(const Polynomial& gamma_annihilator, const CycloNumber& delta,
                                     std::size_t degree_cap = 64);

/// Zariski closure of Phi(L) when it is a line.
std::optional<Line> line_image(const SplitPolynomialMap& phi, const Line& line);

/// Decides whether L is preperiodic under Phi. Preperiodic certificates are
/// replayed with line_image before being returned.
Verdict line_preperiodic(const SplitPolynomialMap& phi, const Line& line, std::uint64_t budget = 1000);

/// Checks Phi^N(L) == Phi^{N+k}(L) by iterating line_image.
bool replay_certificate(const SplitPolynomialMap& phi, const Line& line, const Preperiodic& cert);

// ---------------------------------------------------------------------------
// Bogomolov gap scan

struct ScanRow {
  Rational t;
  std::vector<Rational> point;
  double hhat = 0;
  double error = 0;
  /// "zero", "positive", or "error: <message>".
  std::string flag;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::vector<std::size_t> zero_candidates;
  /// Smallest height among rows that are not zero candidates.
  std::optional<double> gap;
  std::optional<std::size_t> gap_row;
};

/// Parameters t = p/q in lowest terms with max(|p|, q) <= bound, ordered by
/// (q, p). bound is the largest integer with log(bound) <= height_bound.
std::vector<Rational> scan_parameters(double height_bound);

ScanReport bogomolov_scan(const SplitPolynomialMap& phi, const Line& line, double height_bound, double tol,
                          unsigned threads = 0);

/// CSV with header `t,point,hhat,error,flag`.
void write_scan_csv(std::ostream& out, const ScanReport& report);

}  // namespace arithdyn
