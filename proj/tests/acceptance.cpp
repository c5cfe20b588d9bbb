// Acceptance suite: runs every criterion end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "refstate/encoders.hpp"
#include "refstate/levelled.hpp"
#include "refstate/proof.hpp"
#include "refstate/res2.hpp"
#include "refstate/restriction.hpp"
#include "refstate/rng.hpp"
#include "support/cdcl.hpp"
#include "support/lab.hpp"
#include "support/oracles.hpp"

using namespace refstate;
using refstate::testing::brute_force_refutation;
using refstate::testing::brute_force_satisfiable;
using refstate::testing::enumerate_models;
using refstate::testing::find_levelled_refutation;
using refstate::testing::put_d_group;
using refstate::testing::put_i_group;
using refstate::testing::put_lr_group;
using refstate::testing::put_v_group;
using refstate::testing::random_cnf;
using refstate::testing::RhoBuilder;

namespace {

int failures = 0;

void report(int id, const char *name, bool pass, const std::string &detail) {
  std::printf("criterion %2d (%s): %s%s%s\n", id, name,
              pass ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// All unsatisfiable CNFs over `n` declared variables built from at most
// `max_clauses` distinct non-tautological clauses.
std::vector<Cnf> unsat_catalog(Var n, int max_clauses) {
  std::vector<Clause> universe;
  std::size_t total = 1;
  for (Var v = 0; v < n; ++v) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<Lit> lits;
    for (Var v = 1; v <= n; ++v) {
      if (c % 3 == 1) lits.push_back(pos(v));
      if (c % 3 == 2) lits.push_back(neg(v));
      c /= 3;
    }
    universe.push_back(Clause(std::move(lits)));
  }
  std::vector<Cnf> out;
  const std::size_t u = universe.size();
  for (std::uint64_t mask = 1; mask < (1ULL << u); ++mask) {
    if (__builtin_popcountll(mask) > max_clauses) continue;
    Cnf f;
    f.num_vars = n;
    for (std::size_t k = 0; k < u; ++k)
      if (mask >> k & 1) f.add(universe[k]);
    if (!brute_force_satisfiable(f)) out.push_back(std::move(f));
  }
  return out;
}

// ----------------------------------------------------------------------

void criterion1() {
  const std::size_t model_cap = 160;
  long long points = 0, sat_points = 0, models_checked = 0;
  long long capped_points = 0;
  for (Var n : {1, 2}) {
    std::vector<Cnf> catalog = unsat_catalog(n, 3);
    for (const Cnf &f : catalog)
      for (long long s : {2, 3})
        for (long long t : {1, 2, 3}) {
          ++points;
          VarLayout ly =
              VarLayout::ref_only(n, static_cast<long long>(f.size()), s, t);
          Cnf ref = encode_ref_F(f, s, t, ly);
          bool complete = true;
          auto models =
              refstate::testing::enumerate_models_cdcl(ref, model_cap, &complete);
          bool sat = !models.empty();
          auto grid = find_levelled_refutation(f, s, t);
          if (sat != grid.has_value()) {
            std::ostringstream ss;
            ss << "disagreement at n=" << n << " r=" << f.size() << " s=" << s
               << " t=" << t << ": encoder " << (sat ? "SAT" : "UNSAT")
               << ", grid search " << (grid ? "found" : "none");
            report(1, "witness equivalence", false, ss.str());
            return;
          }
          if (grid) {
            ++sat_points;
            if (!check_levelled(f, *grid).ok) {
              report(1, "witness equivalence", false,
                     "oracle grid fails check_levelled");
              return;
            }
            // the grid's witness is a model: the encoder agrees with the
            // grid semantics in both directions
            PartialAssignment alpha = encode_witness(*grid, ly);
            for (const Clause &c : ref.clauses)
              if (eval_clause(c, alpha) != ClauseStatus::satisfied) {
                report(1, "witness equivalence", false,
                       "encoded witness fails a REF clause");
                return;
              }
          }
          if (!complete) ++capped_points;
          for (const auto &alpha : models) {
            LevelledRefutation back = decode_witness(alpha, ly, f);
            if (!check_levelled(f, back).ok) {
              report(1, "witness equivalence", false,
                     "a model decoded to an invalid grid");
              return;
            }
            ++models_checked;
          }
        }
  }
  std::ostringstream ss;
  ss << points << " (f,s,t) points, " << sat_points << " satisfiable, "
     << models_checked << " models decoded (enumeration capped at "
     << model_cap << " on " << capped_points << " points)";
  report(1, "witness equivalence", true, ss.str());
}

void criterion2() {
  SplitMix64 rng(20260808);
  int done = 0, attempts = 0;
  while (done < 50 && attempts < 100000) {
    ++attempts;
    Var n = 2 + static_cast<Var>(rng.below(3));  // 2..4
    int clauses = static_cast<int>(n) + 1 + static_cast<int>(rng.below(2 * n));
    Cnf f = random_cnf(rng, n, clauses, static_cast<int>(n) - 1);
    if (brute_force_satisfiable(f)) continue;
    auto pi = brute_force_refutation(f);
    if (!pi) continue;
    bool fat = false;
    for (std::size_t k = 1; k <= pi->length(); ++k) {
      bool all = true;
      for (Var v = 1; v <= n; ++v)
        if (!pi->clause(k).contains_var(v)) all = false;
      fat |= all;
    }
    if (fat) continue;  // simulation needs a fresh variable per clause
    LevelledRefutation grid = simulate(f, *pi);
    const auto hs = step_heights(*pi);
    bool ok = grid.s() == static_cast<long long>(height(*pi)) &&
              grid.t() == 3 * static_cast<long long>(pi->length()) &&
              check_levelled(f, grid).ok;
    for (std::size_t j = 1; ok && j <= pi->length(); ++j)
      for (long long i = static_cast<long long>(hs[j - 1]); i <= grid.s(); ++i)
        if (!(grid.cell(i, 3 * static_cast<long long>(j)) == pi->clause(j)))
          ok = false;
    if (!ok) {
      report(2, "levelled simulation", false,
             "structural equality failed on a random refutation");
      return;
    }
    ++done;
  }
  report(2, "levelled simulation", done == 50,
         done == 50 ? "50 random refutations simulated exactly"
                    : "could not collect 50 instances");
}

void criterion3() {
  double min_ratio = 1e100, max_ratio = 0;
  for (long long n : {1, 2, 3})
    for (long long r : {1, 2, 3})
      for (long long s : {2, 3, 4})
        for (long long t : {1, 2, 3, 4, 5}) {
          VarLayout ly = VarLayout::reflection(n, r, s, t);
          Res2Proof pi = build_reflection_refutation(n, r, s, t, ly);
          Cnf refl = encode_reflection(n, r, s, t, ly);
          Res2CheckResult res = check_res2(refl, pi, true);
          if (!res.ok) {
            std::ostringstream ss;
            ss << "builder output rejected at n=" << n << " r=" << r
               << " s=" << s << " t=" << t << ": " << res.reason;
            report(3, "reflection refutations", false, ss.str());
            return;
          }
          double expr = static_cast<double>(t * r * n * n + t * r * r +
                                            s * t * t * n * n * n +
                                            s * t * t * t * n);
          double ratio = static_cast<double>(pi.size) / expr;
          min_ratio = std::min(min_ratio, ratio);
          max_ratio = std::max(max_ratio, ratio);
        }
  std::ostringstream ss;
  ss << "135 grid points checked; size/bound ratio in [" << min_ratio << ", "
     << max_ratio << "], spread " << max_ratio / min_ratio << " (<= 8)";
  report(3, "reflection refutations", max_ratio / min_ratio <= 8.0, ss.str());
}

void criterion4() {
  std::vector<Cnf> formulas;
  {
    // three pigeons, two holes: variable (p-1)*2 + h
    Cnf php;
    php.num_vars = 6;
    for (Var p = 0; p < 3; ++p)
      php.add(Clause{pos(p * 2 + 1), pos(p * 2 + 2)});
    for (Var h = 1; h <= 2; ++h)
      for (Var p1 = 0; p1 < 3; ++p1)
        for (Var p2 = p1 + 1; p2 < 3; ++p2)
          php.add(Clause{neg(p1 * 2 + h), neg(p2 * 2 + h)});
    formulas.push_back(std::move(php));
  }
  SplitMix64 rng(4242);
  while (formulas.size() < 11) {
    Var n = 2 + static_cast<Var>(rng.below(3));
    Cnf f = random_cnf(rng, n, static_cast<int>(n) * 2 + 2, 3);
    if (!brute_force_satisfiable(f)) formulas.push_back(std::move(f));
  }
  for (const Cnf &f : formulas) {
    const long long r = static_cast<long long>(f.size());
    VarLayout ly = VarLayout::sat_only(f.num_vars, r);
    Cnf sat = encode_sat(f.num_vars, r, ly);
    Cnf image = apply_substitution(tau_substitution(f, ly),
                                   restrict_cnf(sat, gamma_F(f, ly)),
                                   f.num_vars);
    if (!equal_as_clause_sets(drop_tautologies(image), f)) {
      report(4, "substitution collapse", false,
             "image differs from the source formula");
      return;
    }
  }
  report(4, "substitution collapse", true,
         "PHP-style instance and 10 random unsat 3-CNFs collapse exactly");
}

void criterion5() {
  long long checked = 0;
  for (Var n : {1, 2}) {
    std::vector<Cnf> catalog = unsat_catalog(n, 3);
    for (const Cnf &f : catalog)
      for (long long s : {2, 3})
        for (long long t : {1, 2, 3}) {
          const long long r = static_cast<long long>(f.size());
          VarLayout ly = VarLayout::reflection(n, r, s, t);
          Cnf nr = encode_ref_nr(n, r, s, t, ly);
          Cnf restricted = restrict_cnf(nr, gamma_F(f, ly));
          Cnf ref = encode_ref_F(f, s, t, ly);
          if (!equal_as_clause_sets(restricted, ref)) {
            report(5, "reflection restriction identity", false,
                   "clause sets differ");
            return;
          }
          ++checked;
        }
  }
  std::ostringstream ss;
  ss << checked << " (f,s,t) points match as clause sets";
  report(5, "reflection restriction identity", true, ss.str());
}

void criterion6() {
  Cnf f(1, {Clause{pos(1)}, Clause{neg(1)}});
  for (long long s_tilde : {3, 6, 7}) {
    const long long n = 1, r = 2;
    const long long t = s_tilde / (n + 1);
    AmVarLayout aml(n, r, s_tilde);
    VarLayout ref_ly = VarLayout::ref_only(n, r, n + 1, t);
    AmReduction red = am_reduction(f, s_tilde, aml, ref_ly);
    Cnf reduced = rename_vars(
        restrict_cnf(encode_ref_am(f, s_tilde, aml), red.assignment),
        red.renaming, ref_ly.num_vars());
    Cnf ref = encode_ref_F(f, n + 1, t, ref_ly);
    Cnf removed = encode_ref_F_removed_subfamily(n, n + 1, t, ref_ly);
    std::set<Clause> expected = clause_set(ref);
    for (const Clause &c : removed.clauses)
      if (expected.erase(c) != 1) {
        report(6, "legacy-encoding reduction", false,
               "removed subfamily is not part of the target formula");
        return;
      }
    if (clause_set(reduced) != expected) {
      report(6, "legacy-encoding reduction", false,
             "reduced formula differs from the target minus the subfamily");
      return;
    }
    // every removed clause is derivable from the kept families in a
    // two-inference resolution derivation (one cut, one weakening)
    std::map<Clause, std::size_t> index;
    for (std::size_t m = 1; m <= ref.clauses.size(); ++m)
      index[ref.clauses[m - 1]] = m;
    for (const Clause &k : removed.clauses) {
      VarInfo lr{}, dprem{};
      bool is_l = false;
      for (const Lit &lit : k.lits()) {
        VarInfo info = ref_ly.decode(lit.var);
        if (info.kind == VarKind::L && lit.pol == 0) {
          lr = info;
          is_l = true;
        }
        if (info.kind == VarKind::R && lit.pol == 0) lr = info;
        if (info.kind == VarKind::D && lit.pol == 0) dprem = info;
      }
      Var lr_var = is_l ? ref_ly.var_l(lr.i, lr.j, lr.jp)
                        : ref_ly.var_r(lr.i, lr.j, lr.jp);
      Var pivot_var = ref_ly.var_d(lr.i - 1, lr.jp, dprem.l, 1 - dprem.b);
      Clause cut{neg(lr_var), neg(ref_ly.var_v(lr.i, lr.j, dprem.l)),
                 pos(pivot_var)};
      Clause nontaut{neg(ref_ly.var_d(lr.i - 1, lr.jp, dprem.l, 1)),
                     neg(ref_ly.var_d(lr.i - 1, lr.jp, dprem.l, 0))};
      if (!index.count(cut) || !index.count(nontaut)) {
        report(6, "legacy-encoding reduction", false,
               "expected premise clauses missing from the target");
        return;
      }
      ResolutionProof impl;
      impl.steps.push_back(ResStep::input(cut, index[cut]));
      impl.steps.push_back(ResStep::input(nontaut, index[nontaut]));
      impl.steps.push_back(
          ResStep::res(resolve(cut, nontaut, pivot_var), 1, 2, pivot_var));
      impl.steps.push_back(ResStep::weaken(k, 3));
      if (!check_resolution(ref, impl, false).ok) {
        report(6, "legacy-encoding reduction", false,
               "implication derivation rejected");
        return;
      }
    }
  }
  report(6, "legacy-encoding reduction", true,
         "reductions match for all three lengths; every removed clause "
         "re-derived in two inferences");
}

void criterion7() {
  const long long n = 2, r = 2, s = 3, t = 30;
  Cnf f(2, {Clause{pos(1)}, Clause{neg(1)}});
  VarLayout ly = VarLayout::ref_only(n, r, s, t);
  const long long trials = 1000;
  long long faithful = 0, pattern_pass = 0, verified = 0, gap_events = 0,
            unexplained = 0;

  // Independent certificate for the admissibility gap: a premise pair whose
  // rho-fixed child cell has no literal of the required sign.
  auto gap_present = [&](const RandomRestriction &rho) {
    for (const auto &[level, hi] : rho.h)
      for (const auto &[key, target] : hi) {
        auto cell = rho.cell_clauses.find({level - 1, target});
        if (cell == rho.cell_clauses.end()) continue;
        bool has_needed = false;
        for (long long l = 1; l <= n; ++l)
          if (cell->second.contains(Lit{l, key.second == 0 ? 1 : 0}))
            has_needed = true;
        if (!has_needed) return true;
      }
    return false;
  };

  for (long long k = 0; k < trials; ++k) {
    RhoParams params;
    params.epsilon = 1.0;
    params.seed = SplitMix64::derive(2026, static_cast<std::uint64_t>(k));
    RandomRestriction rho = sample_rho(params, n, r, s, t, ly);

    // (a) sampler faithfulness
    bool ok_a = true;
    for (const Pair &pr : rho.a_d) {
      auto it = rho.cell_clauses.find(pr);
      ok_a &= it != rho.cell_clauses.end() &&
              static_cast<long long>(it->second.size()) == n &&
              !is_tautological(it->second);
    }
    RestrictionGraph g_rho = graph_of_rho(rho);
    RestrictionGraph g_sigma = graph_of_sigma(rho.rho, ly);
    ok_a &= g_rho.edges_down == g_sigma.edges_down;
    for (const auto &[level, hi] : rho.h) {
      std::set<long long> targets;
      for (const auto &[key, target] : hi)
        ok_a &= targets.insert(target).second;
    }
    if (ok_a) ++faithful;

    if (!check_patterns(rho).all()) continue;
    ++pattern_pass;
    ExtensionResult res = extend_to_admissible(rho, f, ly);
    if (res.ok()) {
      bool good = is_admissible(res.sigma, rho.rho, f, ly).ok &&
                  check_no_falsified_axiom(res.sigma, f, s, t, ly).ok;
      if (good)
        ++verified;
      else
        ++unexplained;
    } else if (res.status == ExtensionResult::Status::obstruction &&
               gap_present(rho)) {
      ++gap_events;
    } else {
      ++unexplained;
    }
  }

  {
    std::ostringstream ss;
    ss << faithful << "/" << trials << " samples faithful";
    report(7, "restriction lab (a) sampler", faithful == trials, ss.str());
  }
  {
    // As specified this demands zero failures; the certified sign-conflict
    // samples admit no admissible extension at all, so they are reported
    // as failures here and broken out explicitly.
    std::ostringstream ss;
    ss << pattern_pass << " pattern-passing samples: " << verified
       << " extended+verified, " << gap_events
       << " certified no-extension obstructions (sign-incompatible fixed "
          "child cell), "
       << unexplained << " unexplained";
    report(7, "restriction lab (b) extension", gap_events + unexplained == 0,
           ss.str());
  }

  // (c) vacuous flags at the lab point
  RhoParams mc_params;
  mc_params.epsilon = 1.0;
  mc_params.seed = 2026;
  McReport lab = monte_carlo(mc_params, n, r, s, t, trials, 4);
  bool ok_c = true;
  for (const McEvent &e : lab.events) {
    if (e.bound) ok_c &= e.bound_vacuous == (*e.bound <= 0.0);
    ok_c &= e.frequency >= 0.0 && e.frequency <= 1.0;
    ok_c &= e.wilson_low <= e.frequency && e.frequency <= e.wilson_high;
  }
  // both analytic bounds are indeed vacuous at this point
  ok_c &= lab.events[0].bound_vacuous && lab.events[4].bound_vacuous;
  {
    std::ostringstream ss;
    ss << "level-bounds frequency " << lab.events[0].frequency
       << " (bound vacuous), patterns frequency " << lab.events[4].frequency
       << " (bound vacuous)";
    report(7, "restriction lab (c) monte carlo", ok_c, ss.str());
  }

  // (d) a point with nonvacuous bounds: s = 2, t = 400
  McReport big = monte_carlo(mc_params, 2, 2, 2, 400, trials, 4);
  bool ok_d = true;
  std::ostringstream dss;
  for (std::size_t idx : {std::size_t{0}, std::size_t{4}}) {
    const McEvent &e = big.events[idx];
    if (!e.bound || e.bound_vacuous) {
      ok_d = false;
      dss << e.name << ": bound unexpectedly vacuous; ";
      continue;
    }
    double threshold = *e.bound - 3.0 * e.wilson_se;
    dss << e.name << ": freq " << e.frequency << " vs bound " << *e.bound
        << " - 3se = " << threshold << "; ";
    ok_d &= e.frequency >= threshold;
  }
  report(7, "restriction lab (d) tail bounds", ok_d, dss.str());
}

void criterion8() {
  Cnf f(2, {Clause{pos(1)}, Clause{neg(1)}});
  long long total = 0, verified = 0;
  std::map<std::string, long long> coverage;
  bool consistency_ok = true;
  std::ostringstream errs;

  auto run_instance = [&](const VarLayout &ly, const RandomRestriction &rho,
                          const Cnf &formula, const PartialAssignment &sigma,
                          const Clause &e, Var q, bool expect_exhaust,
                          bool ineq4_holds) {
    ++total;
    Clause e0 = e.with(pos(q)), e1 = e.with(neg(q));
    AdversaryResult res =
        adversary_step(sigma, e, e0, e1, q, rho, formula, ly);
    if (res.status == AdversaryResult::Status::avoid_set_exhausted) {
      coverage["exhausted"]++;
      if (ineq4_holds) {
        consistency_ok = false;
        errs << "exhaustion although inequality (4) holds; ";
      }
      if (!expect_exhaust) {
        consistency_ok = false;
        errs << "unexpected exhaustion; ";
      }
      return;
    }
    if (!res.ok()) {
      consistency_ok = false;
      errs << "step failed: " << res.detail << "; ";
      return;
    }
    coverage[res.case_taken]++;
    const Clause &eb = res.b == 0 ? e0 : e1;
    bool good = is_admissible(res.tau, rho.rho, formula, ly).ok &&
                check_adversary_invariant(res.tau, eb, ly).both();
    if (good)
      ++verified;
    else {
      consistency_ok = false;
      errs << "output failed verification (" << res.case_taken << "); ";
    }
  };

  // Bulk of the instances: s = 4, t = 6, n = r = 2 (inequality (4) fails
  // here, but the avoid sets stay small, so successes are expected and any
  // exhaustion would be legitimate).
  VarLayout ly = VarLayout::ref_only(2, 2, 4, 6);
  RandomRestriction empty_rho = RhoBuilder(ly, 0.05, 2.0).take();
  PartialAssignment none;

  for (long long j = 1; j <= 6; ++j)
    for (long long i = 2; i <= 4; ++i) {
      // preset pivots: Q already in dom(sigma1)
      PartialAssignment sigma;
      const bool last = i == 4 && j == 6;
      put_d_group(sigma, ly, i, j, last ? Clause{} : Clause{pos(1), pos(2)});
      put_v_group(sigma, ly, i, j, 1);
      Clause e = last ? Clause{pos(ly.var_d(i, j, 1, 1))}
                      : Clause{neg(ly.var_d(i, j, 1, 1))};
      run_instance(ly, empty_rho, f, sigma, e, ly.var_d(i, j, 2, 1), false,
                   false);
      run_instance(ly, empty_rho, f, sigma, e, ly.var_v(i, j, 2), false,
                   false);
    }
  for (long long j = 1; j <= 6; ++j)
    for (long long i = 2; i <= 4; ++i) {
      run_instance(ly, empty_rho, f, none, Clause{}, ly.var_v(i, j, 1), false,
                   false);
      run_instance(ly, empty_rho, f, none, Clause{}, ly.var_d(i, j, 1, 0),
                   false, false);
      // unimportant premise literal (1 + q stays below t/2 = 3)
      run_instance(ly, empty_rho, f, none, Clause{pos(ly.var_l(i, j, 5))},
                   ly.var_l(i, j, 4), false, false);
      // case 3 with i = 2 and i >= 3 branches
      Clause heavy{pos(i == 2 ? ly.var_r(i, j, 5) : ly.var_l(i, j, 5)),
                   pos(i == 2 ? ly.var_r(i, j, 6) : ly.var_l(i, j, 6))};
      run_instance(ly, empty_rho, f, none, heavy,
                   i == 2 ? ly.var_r(i, j, 4) : ly.var_l(i, j, 4), false,
                   false);
    }
  for (long long j = 1; j <= 6; ++j) {
    run_instance(ly, empty_rho, f, none, Clause{}, ly.var_i(j, 1), false,
                 false);
    run_instance(ly, empty_rho, f, none, Clause{}, ly.var_d(1, j, 1, 1), false,
                 false);
  }
  // short-cell branch at the (s,t) cell
  run_instance(ly, empty_rho, f, none,
               Clause{pos(ly.var_l(4, 6, 1)), pos(ly.var_l(4, 6, 2))},
               ly.var_l(4, 6, 3), false, false);

  // A wider layout for volume and n = 3 coverage.
  Cnf f3(3, {Clause{pos(1)}, Clause{neg(1), pos(2)}, Clause{neg(2)},
             Clause{neg(3), pos(1)}});
  VarLayout ly3 = VarLayout::ref_only(3, 4, 5, 8);
  RandomRestriction rho3 = RhoBuilder(ly3, 0.05, 2.0).take();
  for (long long j = 1; j <= 8; ++j)
    for (long long i = 2; i <= 5; ++i) {
      run_instance(ly3, rho3, f3, none, Clause{}, ly3.var_v(i, j, 2), false,
                   false);
      run_instance(ly3, rho3, f3, none, Clause{}, ly3.var_d(i, j, 2, 0), false,
                   false);
      Clause heavy{pos(ly3.var_r(i, j, 5)), pos(ly3.var_r(i, j, 6)),
                   pos(ly3.var_r(i, j, 7))};
      run_instance(ly3, rho3, f3, none, heavy, ly3.var_r(i, j, 4), false,
                   false);
    }
  // short-cell branches on the top level of the wider grid
  run_instance(ly3, rho3, f3, none,
               Clause{pos(ly3.var_l(5, 8, 1)), pos(ly3.var_l(5, 8, 2)),
                      pos(ly3.var_l(5, 8, 3))},
               ly3.var_l(5, 8, 4), false, false);

  // Exhaustion instances at t = 4 (inequality (4) fails there).
  VarLayout ly4 = VarLayout::ref_only(2, 2, 4, 4);
  RandomRestriction rho4 = RhoBuilder(ly4, 0.05, 2.0).take();
  bool ineq4_small =
      check_parameter_regime(2, 2, 4, 4, 1.0, 1e-3).ineq4;
  for (long long jj = 1; jj <= 3; ++jj) {
    PartialAssignment sigma;
    std::vector<Lit> lits;
    for (long long j2 = 1; j2 <= 3; ++j2) {
      put_d_group(sigma, ly4, 2, j2, Clause{pos(1), pos(2)});
      put_v_group(sigma, ly4, 2, j2, 1);
      lits.push_back(neg(ly4.var_d(2, j2, 1, 1)));
    }
    lits.push_back(pos(ly4.var_l(3, jj, 4)));
    run_instance(ly4, rho4, f, sigma, Clause(lits), ly4.var_l(3, jj, 2), true,
                 ineq4_small);
  }

  // Instances where inequality (4) holds (overridden p, w at t = 1000):
  // exhaustion must not occur.
  {
    RhoParams pw;
    pw.epsilon = 1.0;
    pw.p_override = 0.001;
    pw.w_override = 10.0;
    bool ineq4_big =
        check_parameter_regime(2, 2, 4, 1000, 1.0, 1e-3, &pw).ineq4;
    VarLayout lyb = VarLayout::ref_only(2, 2, 4, 1000);
    RandomRestriction rhob = RhoBuilder(lyb, 0.001, 10.0).take();
    for (long long base : {0, 200, 400}) {
      std::vector<Lit> lits;
      for (long long k = 1; k <= 499; ++k)
        lits.push_back(pos(lyb.var_l(3, 2, (base + k) % 1000 + 1)));
      Clause e(lits);
      Var q = lyb.var_l(3, 2, (base + 500) % 1000 + 1);
      run_instance(lyb, rhob, f, none, e, q, false, ineq4_big);
    }
  }

  std::ostringstream ss;
  ss << total << " instances, " << verified << " verified; coverage:";
  for (const auto &[name, count] : coverage) ss << " " << name << "=" << count;
  bool cover_ok = coverage["preset"] > 0 && coverage["case1-V"] > 0 &&
                  coverage["case1-I"] > 0 && coverage["case2-D"] > 0 &&
                  coverage["case3-level2"] > 0 && coverage["case3-full"] > 0 &&
                  coverage["case3-short"] > 0 && coverage["unimportant"] > 0 &&
                  coverage["exhausted"] > 0;
  if (!cover_ok) ss << "; missing coverage";
  if (!consistency_ok) ss << "; " << errs.str();
  report(8, "adversary step", total >= 200 && cover_ok && consistency_ok,
         ss.str());
}

void criterion9() {
  RegimeReport r1 = check_parameter_regime(2, 2, 1e6, 1e6, 1.0, 1e-3);
  RegimeReport r2 = check_parameter_regime(2, 2, 1e7, 1e7, 1.0, 1e-3);
  RegimeReport r3 = check_parameter_regime(2, 2, 1e14, 1e14, 1.0, 1e-3);
  // Recomputed independently: at eps = 1 the exponent is 5/7, so
  // t = 1e6: 4w = 4e4.8 ~ 2.524e5 exceeds t/4 = 2.5e5 while 10pt ~ 520;
  // t = 1e7: 10pt + 4w ~ 1.6e6 < 2.5e6 and the double exponential is ~1;
  // t = 1e14: all three hold, the third dominated by 67 p^3 s t ~ 0.67.
  bool ok = !r1.ineq4 && std::abs(r1.lhs4 - 2.529e5) / 2.529e5 < 0.01;
  ok &= r2.ineq4 && r2.ineq5;
  ok &= r3.ineq3 && r3.ineq4 && r3.ineq5;
  double third_term = 67.0 * std::pow(r3.p, 3) * 1e14 * 1e14;
  ok &= std::abs(third_term - 0.67) < 0.01;
  std::ostringstream ss;
  ss << "t=1e6: 10pt+4w = " << r1.lhs4 << " > " << r1.rhs4
     << "; t=1e7: (4),(5) hold; t=1e14: all hold, dominant term "
     << third_term;
  report(9, "parameter regime", ok, ss.str());
}

void criterion10() {
  int total = 0, caught = 0;
  std::ostringstream errs;
  auto expect_res = [&](const Cnf &formula, const ResolutionProof &pi,
                        std::size_t bad_step) {
    ++total;
    CheckResult r = check_resolution(formula, pi, true);
    if (!r.ok && r.step == bad_step)
      ++caught;
    else
      errs << "resolution mutation at step " << bad_step << " missed; ";
  };
  auto expect_lev = [&](const Cnf &formula, const LevelledRefutation &L,
                        long long bi, long long bj) {
    ++total;
    LevelledCheckResult r = check_levelled(formula, L);
    if (!r.ok && r.i == bi && r.j == bj)
      ++caught;
    else
      errs << "levelled mutation at (" << bi << "," << bj << ") missed; ";
  };
  auto expect_res2 = [&](const Cnf &formula, const Res2Proof &pi,
                         std::size_t bad_step) {
    ++total;
    Res2CheckResult r = check_res2(formula, pi, true);
    if (!r.ok && r.step == bad_step)
      ++caught;
    else
      errs << "res2 mutation at line " << bad_step << " missed; ";
  };

  // --- resolution checker ---------------------------------------------
  Cnf g(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}, Clause{neg(2)}});
  ResolutionProof base;
  base.steps.push_back(ResStep::input(Clause{pos(1), pos(2)}, 1));
  base.steps.push_back(ResStep::input(Clause{neg(1)}, 2));
  base.steps.push_back(ResStep::res(Clause{pos(2)}, 1, 2, 1));
  base.steps.push_back(ResStep::input(Clause{neg(2)}, 3));
  base.steps.push_back(ResStep::res(Clause{}, 3, 4, 2));
  if (!check_resolution(g, base, true).ok) {
    report(10, "mutation catalog", false, "baseline proof rejected");
    return;
  }
  {
    ResolutionProof m = base;  // flipped literal in an input step
    m.steps[0].clause = Clause{pos(1), neg(2)};
    expect_res(g, m, 1);
  }
  {
    ResolutionProof m = base;  // wrong input index
    m.steps[1].m = 3;
    expect_res(g, m, 2);
  }
  {
    ResolutionProof m = base;  // dangling input index
    m.steps[1].m = 99;
    expect_res(g, m, 2);
  }
  {
    ResolutionProof m = base;  // wrong pivot
    m.steps[2].pivot = 2;
    expect_res(g, m, 3);
  }
  {
    ResolutionProof m = base;  // dangling premise
    m.steps[2].v = 77;
    expect_res(g, m, 3);
  }
  {
    ResolutionProof m = base;  // self/forward reference
    m.steps[2].w = 3;
    expect_res(g, m, 3);
  }
  {
    ResolutionProof m = base;  // resolvent clause missing a literal
    m.steps[2].clause = Clause{};
    expect_res(g, m, 3);
  }
  {
    ResolutionProof m = base;  // literal outside the formula
    m.steps[2].clause = Clause{pos(2), pos(7)};
    expect_res(g, m, 3);
  }
  {
    ResolutionProof m = base;  // weakening that is not a superset
    m.steps.push_back(ResStep::weaken(Clause{pos(2)}, 5));
    ++total;
    CheckResult r = check_resolution(g, m, true);
    if (!r.ok && r.step == 6)
      ++caught;
    else
      errs << "weakening mutation missed; ";
  }
  {
    ResolutionProof m = base;  // refutation without the empty clause
    m.steps.pop_back();
    expect_res(g, m, 4);
  }

  // --- levelled checker -------------------------------------------------
  Cnf f2(2, {Clause{pos(1)}, Clause{neg(1)}});
  LevelledRefutation baseL(2, 2);
  baseL.cell(1, 1) = Clause{pos(1)};
  baseL.cell(1, 2) = Clause{neg(1)};
  baseL.level1_just(1) = 1;
  baseL.level1_just(2) = 2;
  baseL.cell(2, 1) = Clause{};
  baseL.cell(2, 2) = Clause{};
  baseL.upper_just(2, 1) = UpperJust{1, 2, 1};
  baseL.upper_just(2, 2) = UpperJust{1, 2, 1};
  if (!check_levelled(f2, baseL).ok) {
    report(10, "mutation catalog", false, "baseline grid rejected");
    return;
  }
  {
    LevelledRefutation m = baseL;  // level-1 cell loses its input literal
    m.cell(1, 1) = Clause{pos(2)};
    expect_lev(f2, m, 1, 1);
  }
  {
    LevelledRefutation m = baseL;  // dangling input index
    m.level1_just(2) = 9;
    expect_lev(f2, m, 1, 2);
  }
  {
    LevelledRefutation m = baseL;  // pivot absent from premises
    m.upper_just(2, 1) = UpperJust{1, 2, 2};
    expect_lev(f2, m, 2, 1);
  }
  {
    LevelledRefutation m = baseL;  // premise column out of range
    m.upper_just(2, 1) = UpperJust{1, 7, 1};
    expect_lev(f2, m, 2, 1);
  }
  {
    LevelledRefutation m = baseL;  // swapped premise polarity
    m.upper_just(2, 2) = UpperJust{2, 1, 1};
    expect_lev(f2, m, 2, 2);
  }
  {
    LevelledRefutation m = baseL;  // nonempty final cell
    m.cell(2, 2) = Clause{pos(2)};
    expect_lev(f2, m, 2, 2);
  }

  // --- Res(2) checker ----------------------------------------------------
  VarLayout ly = VarLayout::reflection(2, 2, 2, 2);
  Cnf refl = encode_reflection(2, 2, 2, 2, ly);
  Res2Proof baseR = build_reflection_refutation(2, 2, 2, 2, ly);
  if (!check_res2(refl, baseR, true).ok) {
    report(10, "mutation catalog", false, "baseline res2 proof rejected");
    return;
  }
  auto find_step = [&](Res2Step::Kind kind) {
    for (std::size_t k = 1; k <= baseR.length(); ++k)
      if (baseR.steps[k - 1].kind == kind) return k;
    return std::size_t{0};
  };
  {
    Res2Proof m = baseR;  // flipped literal inside an input line
    std::size_t k = find_step(Res2Step::Kind::input);
    const Term &t0 = m.steps[k - 1].line.terms()[0];
    Term flipped(negate(t0.lits()[0]));
    m.steps[k - 1].line = m.steps[k - 1].line.without(t0).with(flipped);
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // dangling input index
    std::size_t k = find_step(Res2Step::Kind::input);
    m.steps[k - 1].m = refl.clauses.size() + 5;
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // axiom over a foreign pair of literals
    std::size_t k = find_step(Res2Step::Kind::axiom);
    m.steps[k - 1].line = TwoDnf({Term(pos(1)), Term(neg(2))});
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // cut term absent from the first premise
    std::size_t k = find_step(Res2Step::Kind::cut);
    m.steps[k - 1].cut_term = Term(pos(ly.var_tl(1)), neg(ly.var_tl(2)));
    m.steps[k - 1].cut_negated = {pos(ly.var_tl(1))};
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // negated literal not matched in premise 2
    std::size_t k = find_step(Res2Step::Kind::cut);
    Res2Step &st = m.steps[k - 1];
    st.cut_negated = {negate(st.cut_term.lits()[0])};
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // and-intro literal missing from its premise
    std::size_t k = find_step(Res2Step::Kind::and_intro);
    m.steps[k - 1].l1 = pos(ly.var_tl(2));
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // weakening shrinks its source
    std::size_t k = find_step(Res2Step::Kind::weaken);
    m.steps[k - 1].line = TwoDnf();
    expect_res2(refl, m, k);
  }
  {
    Res2Proof m = baseR;  // derived line carries an extra term
    std::size_t k = find_step(Res2Step::Kind::cut);
    m.steps[k - 1].line = m.steps[k - 1].line.with(Term(pos(ly.var_tl(1))));
    expect_res2(refl, m, k);
  }
  {
    ++total;  // oversized term rejected at parse time with a line number
    try {
      parse_res2("1 1&2&3 J I 1\n");
      errs << "oversized term accepted; ";
    } catch (const ParseError &e) {
      if (e.line == 1)
        ++caught;
      else
        errs << "oversized term reported at the wrong line; ";
    }
  }

  std::ostringstream ss;
  ss << caught << "/" << total << " corruptions rejected at the right step";
  if (!errs.str().empty()) ss << "; " << errs.str();
  report(10, "mutation catalog", total >= 20 && caught == total, ss.str());
}

}  // namespace

int main(int argc, char **argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  auto want = [&](int id) { return only == 0 || only == id; };
  if (want(1)) criterion1();
  if (want(2)) criterion2();
  if (want(3)) criterion3();
  if (want(4)) criterion4();
  if (want(5)) criterion5();
  if (want(6)) criterion6();
  if (want(7)) criterion7();
  if (want(8)) criterion8();
  if (want(9)) criterion9();
  if (want(10)) criterion10();
  if (failures)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all criteria passed\n");
  return failures;
}
