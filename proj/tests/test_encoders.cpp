#include <map>

#include "doctest.h"
#include "refstate/encoders.hpp"
#include "refstate/proof.hpp"
#include "refstate/rng.hpp"
#include "support/oracles.hpp"

using namespace refstate;

namespace {

Cnf unit_conflict(Var declared_vars) {
  return Cnf(declared_vars, {Clause{pos(1)}, Clause{neg(1)}});
}

std::map<std::string, long long> manifest_map(const ClauseSink &sink) {
  std::map<std::string, long long> out;
  for (const FamilyCount &fc : sink.manifest()) out[fc.name] = fc.count;
  return out;
}

}  // namespace

TEST_CASE("REF family counts at (n=2, r=2, s=3, t=4)") {
  Cnf f(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}});
  VarLayout ly = VarLayout::ref_only(2, 2, 3, 4);
  CountingSink sink;
  encode_ref_F(f, 3, 4, ly, sink);
  auto m = manifest_map(sink);
  CHECK(m["axioms"] == 4 * (2 + 1));      // t * sum of clause sizes
  CHECK(m["nontaut"] == 3 * 4 * 2);       // stn = 24
  CHECK(m["res-L-cut"] == 2 * 16 * 2);    // (s-1) t^2 n
  CHECK(m["res-R-cut"] == 2 * 16 * 2);
  CHECK(m["res-L-transf"] == 2 * 16 * 2 * 3);  // (s-1) t^2 n (2n-1)
  CHECK(m["res-R-transf"] == 2 * 16 * 2 * 3);
  CHECK(m["empty-clause"] == 4);
  CHECK(m["V-dom"] == 2 * 4);
  CHECK(m["I-dom"] == 4);
  CHECK(m["L-dom"] == 2 * 4);
  CHECK(m["R-dom"] == 2 * 4);
  CHECK(m["V-func"] == 2 * 4 * 1);        // unordered pairs over n=2
  CHECK(m["I-func"] == 4 * 1);
  CHECK(m["L-func"] == 2 * 4 * 6);        // t(t-1)/2 = 6 pairs
  CHECK(m["R-func"] == 2 * 4 * 6);
}

TEST_CASE("emitted clauses are non-tautological and duplicate-free") {
  Cnf f(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}, Clause{neg(2)}});
  VarLayout ly = VarLayout::ref_only(2, 3, 3, 3);
  Cnf ref = encode_ref_F(f, 3, 3, ly);
  std::set<Clause> seen;
  for (const Clause &c : ref.clauses) {
    CHECK_FALSE(is_tautological(c));
    CHECK(seen.insert(c).second);
  }
}

TEST_CASE("SAT family counts and the tiny instance") {
  VarLayout ly = VarLayout::sat_only(1, 1);
  CountingSink sink;
  encode_sat(1, 1, ly, sink);
  auto m = manifest_map(sink);
  CHECK(m["sat-some-lit"] == 1);
  CHECK(m["sat-pos-lit"] == 1);
  CHECK(m["sat-neg-lit"] == 1);
  CHECK(m["sat-lit-in-clause"] == 2);
  CHECK(sink.total() == 5);
}

TEST_CASE("gamma_F pins the C variables") {
  Cnf f(1, {Clause{pos(1)}});
  VarLayout ly = VarLayout::sat_only(1, 1);
  PartialAssignment g = gamma_F(f, ly);
  CHECK(g.get(ly.var_c(1, 1, 1)) == 1);
  CHECK(g.get(ly.var_c(1, 1, 0)) == 0);
  CHECK(g.size() == 2);  // 2rn

  Cnf f2(3, {Clause{pos(1), neg(2)}, Clause{neg(3)}});
  VarLayout ly2 = VarLayout::sat_only(3, 2);
  CHECK(gamma_F(f2, ly2).size() == 2 * 2 * 3);
}

TEST_CASE("SAT restricted by gamma_F of an unsatisfiable formula is unsat") {
  Cnf f = unit_conflict(1);
  VarLayout ly = VarLayout::sat_only(1, 2);
  Cnf sat = encode_sat(1, 2, ly);
  Cnf restricted = restrict_cnf(sat, gamma_F(f, ly));
  CHECK_FALSE(refstate::testing::brute_force_satisfiable(restricted));
}

TEST_CASE("tau collapses SAT restricted by gamma_F onto F") {
  auto run = [&](const Cnf &f) {
    VarLayout ly = VarLayout::sat_only(f.num_vars,
                                       static_cast<long long>(f.size()));
    Cnf sat = encode_sat(f.num_vars, static_cast<long long>(f.size()), ly);
    Cnf restricted = restrict_cnf(sat, gamma_F(f, ly));
    Substitution tau = tau_substitution(f, ly);
    Cnf image = apply_substitution(tau, restricted, f.num_vars);
    CHECK(equal_as_clause_sets(drop_tautologies(image), f));
  };
  run(Cnf(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}}));
  run(Cnf(1, {Clause{pos(1)}}));  // unit clause: F plus tautologies

  // a unit clause really does leave tautologies behind
  Cnf f(2, {Clause{pos(1)}, Clause{neg(1), pos(2)}});
  VarLayout ly = VarLayout::sat_only(2, 2);
  Cnf image = apply_substitution(tau_substitution(f, ly),
                                 restrict_cnf(encode_sat(2, 2, ly),
                                              gamma_F(f, ly)),
                                 2);
  bool has_taut = false;
  for (const Clause &c : image.clauses) has_taut |= is_tautological(c);
  CHECK(has_taut);
}

TEST_CASE("tau maps T(l) only for occurring variables") {
  Cnf f(3, {Clause{pos(1)}, Clause{neg(1), neg(2)}});  // x3 occurs nowhere
  VarLayout ly = VarLayout::sat_only(3, 2);
  Substitution tau = tau_substitution(f, ly);
  auto t1 = tau.get(ly.var_tl(1));
  REQUIRE(t1);
  CHECK(std::get<Lit>(*t1) == pos(1));
  auto t3 = tau.get(ly.var_tl(3));
  REQUIRE(t3);
  CHECK(std::get<Substitution::Constant>(*t3).value == 0);
}

TEST_CASE("REF^{n,r} under gamma_F is REF^F, and the replacement count") {
  for (long long s = 2; s <= 3; ++s)
    for (long long t = 1; t <= 3; ++t) {
      Cnf f(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}, Clause{neg(2)}});
      VarLayout ly = VarLayout::reflection(2, 3, s, t);
      CountingSink counter;
      encode_ref_nr(2, 3, s, t, ly, counter);
      CHECK(manifest_map(counter)["axioms-nr"] == 2 * t * 3 * 2);  // 2trn
      Cnf nr = encode_ref_nr(2, 3, s, t, ly);
      Cnf restricted = restrict_cnf(nr, gamma_F(f, ly));
      Cnf ref = encode_ref_F(f, s, t, ly);
      CHECK(equal_as_clause_sets(restricted, ref));
      // emission order is aligned too
      CHECK(restricted.clauses == ref.clauses);
    }
}

TEST_CASE("reflection formula is the concatenation of its two halves") {
  VarLayout ly = VarLayout::reflection(2, 2, 2, 2);
  CountingSink sat_count, nr_count, refl_count;
  encode_sat(2, 2, ly, sat_count);
  encode_ref_nr(2, 2, 2, 2, ly, nr_count);
  encode_reflection(2, 2, 2, 2, ly, refl_count);
  CHECK(refl_count.total() == sat_count.total() + nr_count.total());
}

TEST_CASE("AM family counts") {
  Cnf f = unit_conflict(1);
  AmVarLayout ly(1, 2, 3);
  CountingSink sink;
  encode_ref_am(f, 3, ly, sink);
  auto m = manifest_map(sink);
  CHECK(m["am-L-order"] == 3 * 4 / 2);  // s~(s~+1)/2
  CHECK(m["am-R-order"] == 3 * 4 / 2);
  CHECK(m["am-switch-neg"] == 3);
  CHECK(m["am-switch-pos"] == 3);
  CHECK(m["am-V-dom"] == 3);
  CHECK(m["am-L-cut"] == 9);   // s~^2 n
  CHECK(m["am-L-transf"] == 0);  // n = 1 leaves no i' != i
  CHECK(m["am-axioms"] == 3 * 2);
}

TEST_CASE("AM formula is satisfiable exactly when a short refutation fits") {
  // s~ = 3 fits the refutation (x1, ~x1, empty); build its witness and
  // evaluate. s~ = 2 is too short: exhaustive search finds no model.
  Cnf f = unit_conflict(1);
  AmVarLayout ly(1, 2, 3);
  Cnf am = encode_ref_am(f, 3, ly);
  PartialAssignment alpha;
  // row clauses: {x1}, {~x1}, {}
  int dbits[3][2] = {{0, 1}, {1, 0}, {0, 0}};  // D[u,1,b] for b = 0,1
  for (long long u = 1; u <= 3; ++u)
    for (long long b = 0; b <= 1; ++b)
      alpha.set(ly.var_d(u, 1, b), dbits[u - 1][b]);
  auto one_hot = [&](auto var_of, long long lo, long long hi, long long hot) {
    for (long long k = lo; k <= hi; ++k) alpha.set(var_of(k), k == hot ? 1 : 0);
  };
  // rows 1, 2 are inputs 1, 2; row 3 resolves rows 1 and 2 on x1
  for (long long u = 1; u <= 2; ++u) {
    one_hot([&](long long j) { return ly.var_i(u, j); }, 0, 2, u);
    one_hot([&](long long i) { return ly.var_v(u, i); }, 0, 1, 0);
    one_hot([&](long long v) { return ly.var_l(u, v); }, 0, 3, 0);
    one_hot([&](long long v) { return ly.var_r(u, v); }, 0, 3, 0);
  }
  one_hot([&](long long j) { return ly.var_i(3, j); }, 0, 2, 0);
  one_hot([&](long long i) { return ly.var_v(3, i); }, 0, 1, 1);
  one_hot([&](long long v) { return ly.var_l(3, v); }, 0, 3, 1);
  one_hot([&](long long v) { return ly.var_r(3, v); }, 0, 3, 2);
  for (const Clause &c : am.clauses)
    CHECK(eval_clause(c, alpha) == ClauseStatus::satisfied);

  AmVarLayout ly2(1, 2, 2);
  CHECK_FALSE(
      refstate::testing::brute_force_satisfiable(encode_ref_am(f, 2, ly2)));
}

TEST_CASE("am_reduction yields REF^F minus the documented subfamily") {
  auto run = [&](const Cnf &f, long long s_tilde) {
    const long long n = f.num_vars;
    const long long r = static_cast<long long>(f.size());
    const long long t = s_tilde / (n + 1);
    AmVarLayout aml(n, r, s_tilde);
    VarLayout ref_ly = VarLayout::ref_only(n, r, n + 1, t);
    AmReduction red = am_reduction(f, s_tilde, aml, ref_ly);
    CHECK(red.padding_rows == s_tilde - t * (n + 1));

    Cnf am = encode_ref_am(f, s_tilde, aml);
    Cnf reduced_am = restrict_cnf(am, red.assignment);
    Cnf reduced = rename_vars(reduced_am, red.renaming, ref_ly.num_vars());

    Cnf ref = encode_ref_F(f, n + 1, t, ref_ly);
    Cnf removed = encode_ref_F_removed_subfamily(n, n + 1, t, ref_ly);
    std::set<Clause> expected = clause_set(ref);
    for (const Clause &c : removed.clauses) CHECK(expected.erase(c) == 1);
    CHECK(clause_set(reduced) == expected);
  };
  run(unit_conflict(1), 3);  // t = 1, one padding row
  run(unit_conflict(1), 6);  // t = 3, no padding
  run(unit_conflict(1), 7);  // t = 3, one padding row
  run(Cnf(2, {Clause{pos(1)}, Clause{neg(1)}}), 7);  // n = 2: t = 2
}

TEST_CASE("each removed clause follows from the kept families by one cut") {
  const long long n = 2, s = 3, t = 2;
  VarLayout ly = VarLayout::ref_only(n, 2, s, t);
  Cnf removed = encode_ref_F_removed_subfamily(n, s, t, ly);
  CHECK(removed.size() == 2 * (s - 1) * t * t * n);
  for (const Clause &k : removed.clauses) {
    // Identify the indices from the clause's own literals.
    VarInfo lr{}, dprem{};
    bool is_l = false;
    for (const Lit &lit : k.lits()) {
      VarInfo info = ly.decode(lit.var);
      if (info.kind == VarKind::L && lit.pol == 0) {
        lr = info;
        is_l = true;
      }
      if (info.kind == VarKind::R && lit.pol == 0) lr = info;
      if (info.kind == VarKind::D && lit.pol == 0) dprem = info;
    }
    Var lr_var = is_l ? ly.var_l(lr.i, lr.j, lr.jp) : ly.var_r(lr.i, lr.j, lr.jp);
    // The matching cut clause (premise side) and the non-tautology clause.
    Clause cut{neg(lr_var), neg(ly.var_v(lr.i, lr.j, dprem.l)),
               pos(ly.var_d(lr.i - 1, lr.jp, dprem.l, 1 - dprem.b))};
    Clause nontaut{neg(ly.var_d(lr.i - 1, lr.jp, dprem.l, 1)),
                   neg(ly.var_d(lr.i - 1, lr.jp, dprem.l, 0))};
    Clause resolvent =
        resolve(cut, nontaut, ly.var_d(lr.i - 1, lr.jp, dprem.l, 1 - dprem.b));
    CHECK(resolvent.subset_of(k));
  }
}

TEST_CASE("a refutation of restricted SAT maps onto one of F itself") {
  // Restricting SAT by gamma_F of an unsatisfiable F leaves an unsatisfiable
  // formula; pushing a refutation of it through tau yields a refutation of
  // F together with some tautologies, no longer than the original.
  for (const Cnf &f :
       {Cnf(1, {Clause{pos(1)}, Clause{neg(1)}}),
        Cnf(2, {Clause{pos(1), pos(2)}, Clause{neg(1)}, Clause{neg(2)}})}) {
    const long long r = static_cast<long long>(f.size());
    VarLayout ly = VarLayout::sat_only(f.num_vars, r);
    Cnf restricted =
        restrict_cnf(encode_sat(f.num_vars, r, ly), gamma_F(f, ly));
    auto pi = refstate::testing::brute_force_refutation(restricted);
    REQUIRE(pi);
    REQUIRE(check_resolution(restricted, *pi, true).ok);
    Substitution tau = tau_substitution(f, ly);
    ResolutionProof mapped = substitute_proof(restricted, *pi, tau);
    Cnf image = drop_tautologies(
        apply_substitution(tau, restricted, f.num_vars));
    CHECK(equal_as_clause_sets(image, f));
    CHECK(check_resolution(image, mapped, true).ok);
    CHECK(mapped.length() <= pi->length());
  }
}

TEST_CASE("proofs of the AM formula map to proofs of REF^F") {
  // s~ = 2 is refutable: REF(F,2) is unsatisfiable, and the reduction turns
  // its refutation into one of REF^F_{2,1} of no greater length.
  Cnf f = unit_conflict(1);
  AmVarLayout aml(1, 2, 2);
  Cnf am = encode_ref_am(f, 2, aml);
  auto pi = refstate::testing::brute_force_refutation(am);
  REQUIRE(pi);
  REQUIRE(check_resolution(am, *pi, true).ok);

  VarLayout ref_ly = VarLayout::ref_only(1, 2, 2, 1);
  AmReduction red = am_reduction(f, 2, aml, ref_ly);
  ResolutionProof reduced_pi = restrict_proof(am, *pi, red.assignment);
  Cnf reduced_am = restrict_cnf(am, red.assignment);
  CHECK(check_resolution(reduced_am, reduced_pi, true).ok);
  CHECK(reduced_pi.length() <= pi->length());

  // Rename onto the REF^F layout; inputs of the reduced formula are clauses
  // of REF^F, so re-justifying the input steps there suffices.
  Cnf ref = encode_ref_F(f, 2, 1, ref_ly);
  ResolutionProof renamed;
  std::map<Clause, std::size_t> ref_index;
  for (std::size_t m = 1; m <= ref.clauses.size(); ++m)
    ref_index[ref.clauses[m - 1]] = m;
  for (const ResStep &st : reduced_pi.steps) {
    Cnf one(0, {st.clause});
    Clause mapped = rename_vars(one, red.renaming, ref_ly.num_vars()).clauses[0];
    ResStep copy = st;
    copy.clause = mapped;
    if (st.kind == ResStep::Kind::input_weakening) {
      bool found = false;
      for (const auto &[clause, idx] : ref_index)
        if (clause.subset_of(mapped)) {
          copy.m = idx;
          found = true;
          break;
        }
      CHECK(found);
    }
    if (st.kind == ResStep::Kind::resolvent) {
      auto it = red.renaming.find(st.pivot);
      REQUIRE(it != red.renaming.end());
      copy.pivot = it->second;
    }
    renamed.steps.push_back(copy);
  }
  CHECK(check_resolution(ref, renamed, true).ok);
  CHECK(renamed.length() <= pi->length());
}
