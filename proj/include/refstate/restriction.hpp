#ifndef REFSTATE_RESTRICTION_HPP
#define REFSTATE_RESTRICTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/layout.hpp"
#include "refstate/proof.hpp"

namespace refstate {

using Pair = std::pair<long long, long long>;  // (level i, column j)

// Parameters of the random-restriction distribution: p = t^-a with
// a = min{(2+eps/2)/(3+eps/2), 3/4} and w = t^{4/5}. The level_scaled
// variant trades a smaller grid for exponents tied to the level count:
// p = s^{-1/3} t^-a' with a' = min{(1+eps)/(3+eps), 1/2} and
// w = s^{1/3} t^{3/5}.
struct RhoParams {
  enum class Variant { standard, level_scaled };

  double epsilon = 1.0;
  Variant variant = Variant::standard;
  std::optional<double> p_override;
  std::optional<double> w_override;
  std::uint64_t seed = 0;

  double p(double s, double t) const;
  double w(double s, double t) const;
};

// A sampled restriction rho with its generating data: the membership sets,
// the per-level premise injections, the derived child sets and the clauses
// chosen for A_D pairs.
struct RandomRestriction {
  long long n = 0, r = 0, s = 0, t = 0;
  double p = 0, w = 0;
  PartialAssignment rho;
  std::set<Pair> a_d, a_i, a_v, a_rl;
  // level -> ((column j, side) -> target column), side 0 = L, 1 = R
  std::map<long long, std::map<std::pair<long long, int>, long long>> h;
  std::map<long long, std::set<long long>> children;  // level -> B_level columns
  std::map<Pair, Clause> cell_clauses;
  std::set<long long> guarded_levels;  // levels whose h_i was forced empty
};

// Coin-consumption order (fixed so samples reproduce across machines):
// step 1 row-major over (i,j) with the membership coin immediately followed
// by the n literal coins; step 2 per column, membership coin then the input
// draw for A_I \ A_D members; step 3 row-major, membership then pivot draw;
// step 4 per level in a sequential re-draw process (equivalent to drawing
// the injection at once):
// per column a membership coin, then two draws from the unused image pool.
// A level whose pool runs dry (2|A_i| > t) gets h_i = emptyset, same as the
// |A_i| > 2pt guard.
RandomRestriction sample_rho(const RhoParams &params, long long n, long long r,
                             long long s, long long t, const VarLayout &layout);

// G_rho / G_sigma: grid cells with left/right-child edges.
struct RestrictionGraph {
  std::set<Pair> vertices;
  std::map<Pair, std::vector<Pair>> edges_down;  // parent -> children

  std::vector<Pair> level_vertices(long long level) const;
};

RestrictionGraph graph_of_rho(const RandomRestriction &rho);
RestrictionGraph graph_of_sigma(const PartialAssignment &sigma,
                                const VarLayout &layout);

// Level-bound events: per-level membership cardinalities against 2pt.
struct LevelBoundsReport {
  bool item_i = true;    // |A_D on level| <= 2pt for every level
  bool item_ii = true;   // |A_i| <= 2pt and |A_V on level| <= 2pt, i >= 2
  bool item_iii = true;  // |A_I| <= 2pt
  bool all() const { return item_i && item_ii && item_iii; }
};

LevelBoundsReport check_level_bounds(const RandomRestriction &rho);

// Forbidden-pattern events: (s,t) untouched, and no connected triple with
// three distinct (pair, membership) incidences.
struct PatternsReport {
  bool item_i = true;
  bool item_ii = true;
  std::vector<Pair> witness;  // offending triple when item_ii is false
  bool all() const { return item_i && item_ii; }
};

PatternsReport check_patterns(const RandomRestriction &rho);

// Mention/importance measures of a clause over REF variables.
struct WidthProfile {
  std::set<Pair> d_mentioned;  // D-important = D-mentioned
  std::set<Pair> v_important, l_important, r_important, i_important;
  std::set<Pair> mentioned;
  std::map<long long, long long> i_positive_by_m;  // m -> |{j : I(j,m) in E}|
  std::map<std::pair<long long, long long>, long long>
      v_positive_by_il;  // (i,l) -> |{j : V(i,j,l) in E}|
};

WidthProfile width_profile(const Clause &e, const VarLayout &layout);

// Width items (i)-(vii) for every clause of a restricted proof.
struct WidthsReport {
  bool ok = true;
  std::size_t clause_index = 0;  // 1-based into the supplied sequence
  int item = 0;                  // 1..7
  std::string detail;
};

WidthsReport check_widths(const std::vector<Clause> &clauses, double w,
                          const VarLayout &layout);
WidthsReport check_widths(const ResolutionProof &pi_restricted,
                          const RandomRestriction &rho,
                          const VarLayout &layout);

// Admissibility (conditions C1-C9) of sigma extending rho.
struct AdmissibilityReport {
  bool ok = true;
  bool extends_rho = true;
  std::vector<std::string> violations;  // "C2: ..." etc.
};

AdmissibilityReport is_admissible(const PartialAssignment &sigma,
                                  const PartialAssignment &rho, const Cnf &f,
                                  const VarLayout &layout);

// Axiom preservation: evaluates every clause of REF^F_{s,t} under
// sigma without materializing the formula.
struct AxiomCheckResult {
  bool ok = true;
  std::optional<Clause> falsified;
};

AxiomCheckResult check_no_falsified_axiom(const PartialAssignment &sigma,
                                          const Cnf &f, long long s,
                                          long long t,
                                          const VarLayout &layout);

// Extension of rho to an admissible assignment, following the component
// case analysis of G_rho. Only D, V, I variables are added.
struct ExtensionResult {
  enum class Status { ok, precondition_failed, obstruction };
  Status status = Status::ok;
  PartialAssignment sigma;
  std::string message;
  int components_isolated = 0;
  int components_fork = 0;   // one premise vertex with its two children
  int components_chain = 0;  // two premise vertices, one a child of the other

  bool ok() const { return status == Status::ok; }
};

ExtensionResult extend_to_admissible(const RandomRestriction &rho,
                                     const Cnf &f, const VarLayout &layout);

// The adversary invariant: (i) every literal of E over dom(sigma) is
// falsified; (ii) every variable whose home pair is important in E is
// assigned.
struct AdversaryInvariant {
  bool i_ok = true;
  bool ii_ok = true;
  std::string detail;
  bool both() const { return i_ok && ii_ok; }
};

AdversaryInvariant check_adversary_invariant(const PartialAssignment &sigma,
                                          const Clause &e,
                                          const VarLayout &layout);

// The three-step cleanup to the minimal admissible sub-assignment that
// still satisfies the invariant for E. Variables of rho are never removed.
PartialAssignment adversary_cleanup(const PartialAssignment &sigma,
                                    const Clause &e,
                                    const RandomRestriction &rho,
                                    const VarLayout &layout);

// One step of the adversary argument: carries an admissible assignment from
// a resolvent E to one of its premises.
struct AdversaryResult {
  enum class Status { ok, avoid_set_exhausted, no_valid_premise, unsupported };
  Status status = Status::ok;
  PartialAssignment tau;
  int b = -1;  // which premise: 0 for e0, 1 for e1
  std::string case_taken;
  std::size_t u1 = 0, u2 = 0, u3 = 0;  // avoid-set sizes (case 3)
  std::string detail;

  bool ok() const { return status == Status::ok; }
};

AdversaryResult adversary_step(const PartialAssignment &sigma, const Clause &e,
                               const Clause &e0, const Clause &e1, Var q,
                               const RandomRestriction &rho, const Cnf &f,
                               const VarLayout &layout);

// Numeric evaluation of the three proof inequalities at given parameters.
struct RegimeReport {
  double p = 0, w = 0;
  bool shape_ok = true;
  std::vector<std::string> shape_warnings;
  double lhs3 = 0;            // must be < 1
  double lhs4 = 0, rhs4 = 0;  // 10pt + 4w < t/4
  double lhs5 = 0;            // must be < 2
  bool ineq3 = false, ineq4 = false, ineq5 = false;
  bool all() const { return ineq3 && ineq4 && ineq5; }
};

RegimeReport check_parameter_regime(double n, double r, double s, double t,
                                    double epsilon, double delta,
                                    const RhoParams *params = nullptr);

// Monte Carlo estimation of the event frequencies with Wilson
// intervals; analytic bounds <= 0 are flagged vacuous.
struct McEvent {
  std::string name;
  long long successes = 0;
  long long trials = 0;
  double frequency = 0;
  double wilson_low = 0, wilson_high = 0, wilson_se = 0;
  std::optional<double> bound;  // analytic lower bound, when one exists
  bool bound_vacuous = false;
};

struct McReport {
  long long n = 0, r = 0, s = 0, t = 0, trials = 0;
  double p = 0, w = 0;
  std::uint64_t seed = 0;
  std::vector<McEvent> events;
};

McReport monte_carlo(const RhoParams &params, long long n, long long r,
                     long long s, long long t, long long trials,
                     int threads = 1);

// Wilson score interval at z standard normal quantiles.
void wilson_interval(long long successes, long long trials, double z,
                     double *low, double *high);

}  // namespace refstate

#endif
