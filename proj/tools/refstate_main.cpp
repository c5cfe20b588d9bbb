// Command-line front end: generators, checkers, the simulation, the witness
// codec and the restriction lab. Exit codes: 0 ok, 1 check violation,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "refstate/encoders.hpp"
#include "refstate/levelled.hpp"
#include "refstate/proof.hpp"
#include "refstate/res2.hpp"
#include "refstate/restriction.hpp"
#include "refstate/rng.hpp"

using json = nlohmann::json;
using namespace refstate;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file " + path);
  return out;
}

std::ifstream open_in(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file " + path);
  return in;
}

// Generation is two-pass: a counting pass for the header and per-family
// manifest, then a streaming pass; the clause list is never materialized.
void emit_generated(std::ostream &os, const std::string &kind,
                    const std::string &params, Var num_vars,
                    const std::function<void(ClauseSink &)> &generate) {
  CountingSink counter;
  generate(counter);
  os << "c refstate " << kind << " " << params << "\n";
  os << "c layout " << kLayoutVersion << "\n";
  for (const FamilyCount &fc : counter.manifest())
    os << "c family " << fc.name << " " << fc.count << "\n";
  os << "p cnf " << num_vars << " " << counter.total() << "\n";
  DimacsClauseWriter writer(os);
  generate(writer);
}

PartialAssignment parse_assignment(std::istream &in) {
  PartialAssignment out;
  std::string tok;
  while (in >> tok) {
    if (tok == "v" || tok == "s" || tok == "SATISFIABLE") continue;
    if (tok[0] == 'c') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    std::int64_t x;
    try {
      x = std::stoll(tok);
    } catch (const std::exception &) {
      throw UsageError("bad token in assignment file: " + tok);
    }
    if (x == 0) break;
    out.set(std::llabs(x), x > 0 ? 1 : 0);
  }
  return out;
}

void emit_assignment(const PartialAssignment &a, std::ostream &os) {
  os << "v";
  for (const auto &[var, val] : a.entries()) os << " " << (val ? var : -var);
  os << " 0\n";
}

json regime_json(const RegimeReport &rep) {
  return json{
      {"p", rep.p},
      {"w", rep.w},
      {"shape_ok", rep.shape_ok},
      {"shape_warnings", rep.shape_warnings},
      {"inequalities",
       json{{"sum_bound",
             json{{"lhs", rep.lhs3}, {"rhs", 1.0}, {"holds", rep.ineq3}}},
            {"avoid_sets", json{{"lhs", rep.lhs4},
                                {"rhs", rep.rhs4},
                                {"holds", rep.ineq4}}},
            {"double_exponential",
             json{{"lhs", rep.lhs5}, {"rhs", 2.0}, {"holds", rep.ineq5}}}}},
      {"all_hold", rep.all()}};
}

json mc_json(const McReport &rep) {
  json events = json::array();
  for (const McEvent &e : rep.events) {
    json row{{"event", e.name},
             {"successes", e.successes},
             {"trials", e.trials},
             {"frequency", e.frequency},
             {"wilson_low", e.wilson_low},
             {"wilson_high", e.wilson_high},
             {"wilson_se", e.wilson_se}};
    if (e.bound) {
      row["bound"] = *e.bound;
      row["vacuous"] = e.bound_vacuous;
    } else {
      row["bound"] = nullptr;
      row["vacuous"] = nullptr;
    }
    events.push_back(row);
  }
  return json{{"n", rep.n},         {"r", rep.r},
              {"s", rep.s},         {"t", rep.t},
              {"p", rep.p},         {"w", rep.w},
              {"seed", rep.seed},   {"trials", rep.trials},
              {"events", events}};
}

void dump_restriction(const RandomRestriction &rho, std::ostream &os) {
  auto dump_set = [&](const char *name, const std::set<Pair> &set) {
    os << name;
    for (const Pair &pr : set)
      os << " (" << pr.first << "," << pr.second << ")";
    os << "\n";
  };
  os << "restriction n=" << rho.n << " r=" << rho.r << " s=" << rho.s
     << " t=" << rho.t << " p=" << rho.p << " w=" << rho.w << "\n";
  dump_set("A_D", rho.a_d);
  dump_set("A_I", rho.a_i);
  dump_set("A_V", rho.a_v);
  dump_set("A_RL", rho.a_rl);
  for (const auto &[level, hi] : rho.h) {
    os << "h_" << level;
    for (const auto &[key, target] : hi)
      os << " " << (key.second == 0 ? "L" : "R") << "(" << level << ","
         << key.first << ")->" << target;
    os << "\n";
  }
  for (long long level : rho.guarded_levels) os << "guard " << level << "\n";
  for (const auto &[pr, cell] : rho.cell_clauses)
    os << "cell (" << pr.first << "," << pr.second << ") " << cell << "\n";
  emit_assignment(rho.rho, os);
}

int run(int argc, char **argv) {
  if (const char *pin = std::getenv("REFSTATE_LAYOUT_VERSION")) {
    if (std::string(pin) != kLayoutVersion)
      throw UsageError(std::string("REFSTATE_LAYOUT_VERSION pins ") + pin +
                       " but this build provides " + kLayoutVersion);
  }

  CLI::App app{"refstate: resolution refutation statements, their checkers "
               "and the random-restriction lab"};
  app.require_subcommand(1);

  std::string cnf_path, out_path, proof_path, levelled_path, model_path;
  std::string assign_path, proof_out;
  long long n = 0, r = 0, s = 0, t = 0, s_tilde = 0, trials = 1000;
  double eps = 1.0, delta = 1e-3;
  double s_real = 0, t_real = 0;
  std::uint64_t seed = 0;
  double p_override = -1, w_override = -1;
  std::string variant = "standard";
  int threads = 1;
  bool as_derivation = false;

  auto add_pw = [&](CLI::App *cmd) {
    cmd->add_option("--eps", eps, "epsilon controlling the default exponent");
    cmd->add_option("--p", p_override, "override the inclusion probability");
    cmd->add_option("--w", w_override, "override the width parameter");
    cmd->add_option("--variant", variant, "standard | level-scaled");
  };
  auto make_params = [&]() {
    RhoParams params;
    params.epsilon = eps;
    params.seed = seed;
    if (p_override >= 0) params.p_override = p_override;
    if (w_override >= 0) params.w_override = w_override;
    if (variant == "level-scaled")
      params.variant = RhoParams::Variant::level_scaled;
    else if (variant != "standard")
      throw UsageError("unknown variant " + variant);
    return params;
  };
  std::ofstream out_file;
  auto out_stream = [&]() -> std::ostream & {
    if (out_path.empty()) return std::cout;
    out_file = open_out(out_path);
    return out_file;
  };

  // ---- generators -------------------------------------------------------
  auto *gen_ref = app.add_subcommand(
      "gen-ref", "emit the refutation statement for a fixed CNF");
  gen_ref->add_option("--cnf", cnf_path, "input DIMACS file")->required();
  gen_ref->add_option("--s", s, "levels")->required();
  gen_ref->add_option("--t", t, "clauses per level")->required();
  gen_ref->add_option("-o,--out", out_path, "output file (default stdout)");
  gen_ref->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    VarLayout ly = VarLayout::ref_only(f.num_vars,
                                       static_cast<long long>(f.size()), s, t);
    std::ostringstream params;
    params << "n=" << f.num_vars << " r=" << f.size() << " s=" << s
           << " t=" << t;
    emit_generated(out_stream(), "ref", params.str(), ly.num_vars(),
                   [&](ClauseSink &sink) { encode_ref_F(f, s, t, ly, sink); });
  });

  auto *gen_refl =
      app.add_subcommand("gen-reflection", "emit the negated reflection principle");
  gen_refl->add_option("--n", n, "variables")->required();
  gen_refl->add_option("--r", r, "clauses")->required();
  gen_refl->add_option("--s", s, "levels")->required();
  gen_refl->add_option("--t", t, "clauses per level")->required();
  gen_refl->add_option("-o,--out", out_path, "output file");
  gen_refl->callback([&] {
    VarLayout ly = VarLayout::reflection(n, r, s, t);
    std::ostringstream params;
    params << "n=" << n << " r=" << r << " s=" << s << " t=" << t;
    emit_generated(
        out_stream(), "reflection", params.str(), ly.num_vars(),
        [&](ClauseSink &sink) { encode_reflection(n, r, s, t, ly, sink); });
  });

  auto *gen_sat = app.add_subcommand("gen-sat", "emit the satisfiability half");
  gen_sat->add_option("--n", n, "variables")->required();
  gen_sat->add_option("--r", r, "clauses")->required();
  gen_sat->add_option("-o,--out", out_path, "output file");
  gen_sat->callback([&] {
    VarLayout ly = VarLayout::sat_only(n, r);
    std::ostringstream params;
    params << "n=" << n << " r=" << r;
    emit_generated(out_stream(), "sat", params.str(), ly.num_vars(),
                   [&](ClauseSink &sink) { encode_sat(n, r, ly, sink); });
  });

  auto *gen_am = app.add_subcommand(
      "gen-am", "emit the order-indexed refutation statement");
  gen_am->add_option("--cnf", cnf_path, "input DIMACS file")->required();
  gen_am->add_option("--stilde", s_tilde, "refutation length")->required();
  gen_am->add_option("-o,--out", out_path, "output file");
  gen_am->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    AmVarLayout ly(f.num_vars, static_cast<long long>(f.size()), s_tilde);
    std::ostringstream params;
    params << "n=" << f.num_vars << " r=" << f.size()
           << " stilde=" << s_tilde;
    emit_generated(
        out_stream(), "am", params.str(), ly.num_vars(),
        [&](ClauseSink &sink) { encode_ref_am(f, s_tilde, ly, sink); });
  });

  // ---- checkers ---------------------------------------------------------
  auto *check_res_cmd =
      app.add_subcommand("check-res", "check a resolution proof");
  check_res_cmd->add_option("--cnf", cnf_path, "input DIMACS")->required();
  check_res_cmd->add_option("--proof", proof_path, "proof file")->required();
  check_res_cmd->add_flag("--derivation", as_derivation,
                          "accept any derivation, not only refutations");
  check_res_cmd->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(proof_path);
    ResolutionProof pi = parse_proof(in);
    CheckResult res = check_resolution(f, pi, !as_derivation);
    if (!res.ok) {
      std::ostringstream ss;
      ss << res;
      throw std::runtime_error(ss.str());
    }
    std::cout << "ok: " << pi.length() << " steps, height " << height(pi)
              << "\n";
  });

  auto *check_lev_cmd =
      app.add_subcommand("check-levelled", "check a levelled refutation");
  check_lev_cmd->add_option("--cnf", cnf_path, "input DIMACS")->required();
  check_lev_cmd->add_option("--proof", levelled_path, "grid file")->required();
  check_lev_cmd->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(levelled_path);
    LevelledRefutation grid = parse_levelled(in);
    LevelledCheckResult res = check_levelled(f, grid);
    if (!res.ok) {
      std::ostringstream ss;
      ss << res;
      throw std::runtime_error(ss.str());
    }
    std::cout << "ok: " << grid.s() << " levels of " << grid.t()
              << " clauses\n";
  });

  auto *check_res2_cmd =
      app.add_subcommand("check-res2", "check a Res(2) proof");
  check_res2_cmd->add_option("--cnf", cnf_path, "input DIMACS")->required();
  check_res2_cmd->add_option("--proof", proof_path, "proof file")->required();
  check_res2_cmd->add_flag("--derivation", as_derivation,
                           "accept any derivation, not only refutations");
  check_res2_cmd->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(proof_path);
    Res2Proof pi = parse_res2(in);
    Res2CheckResult res = check_res2(f, pi, !as_derivation);
    if (!res.ok) {
      std::ostringstream ss;
      ss << res;
      throw std::runtime_error(ss.str());
    }
    std::cout << "ok: " << pi.length() << " lines, size " << pi.size << "\n";
  });

  // ---- transformations --------------------------------------------------
  auto *sim = app.add_subcommand(
      "simulate-levelled", "arrange a resolution refutation into levels");
  sim->add_option("--cnf", cnf_path, "input DIMACS")->required();
  sim->add_option("--proof", proof_path, "resolution proof")->required();
  sim->add_option("-o,--out", out_path, "output grid file");
  sim->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(proof_path);
    ResolutionProof pi = parse_proof(in);
    LevelledRefutation grid = simulate(f, pi);
    emit_levelled(grid, out_stream());
  });

  auto *build = app.add_subcommand(
      "build-res2",
      "build the explicit Res(2) refutation of the reflection formula");
  build->add_option("--n", n, "variables")->required();
  build->add_option("--r", r, "clauses")->required();
  build->add_option("--s", s, "levels")->required();
  build->add_option("--t", t, "clauses per level")->required();
  build->add_option("-o,--out", out_path, "output proof file");
  build->callback([&] {
    VarLayout ly = VarLayout::reflection(n, r, s, t);
    Res2BuildStats stats;
    Res2Proof pi = build_reflection_refutation(n, r, s, t, ly, &stats);
    std::ostream &os = out_stream();
    os << "c refstate res2 n=" << n << " r=" << r << " s=" << s << " t=" << t
       << " size=" << pi.size << " base=" << stats.base_symbols
       << " induction=" << stats.induction_symbols
       << " finish=" << stats.finish_symbols << "\n";
    emit_res2(pi, os);
  });

  auto *restr = app.add_subcommand(
      "restrict", "restrict a CNF (and optionally a proof) by an assignment");
  restr->add_option("--cnf", cnf_path, "input DIMACS")->required();
  restr->add_option("--assign", assign_path, "assignment file")->required();
  restr->add_option("-o,--out", out_path, "restricted CNF output");
  restr->add_option("--proof", proof_path, "resolution proof to restrict");
  restr->add_option("--proof-out", proof_out, "restricted proof output");
  restr->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(assign_path);
    PartialAssignment sigma = parse_assignment(in);
    Cnf restricted = restrict_cnf(f, sigma);
    emit_dimacs(restricted, out_stream());
    if (!proof_path.empty()) {
      if (proof_out.empty()) throw UsageError("--proof needs --proof-out");
      auto pin = open_in(proof_path);
      ResolutionProof pi = parse_proof(pin);
      ResolutionProof out = restrict_proof(f, pi, sigma);
      auto pout = open_out(proof_out);
      emit_proof(out, pout);
    }
  });

  auto *wenc = app.add_subcommand(
      "witness-encode",
      "turn a levelled refutation into a model of its refutation statement");
  wenc->add_option("--cnf", cnf_path, "input DIMACS")->required();
  wenc->add_option("--levelled", levelled_path, "grid file")->required();
  wenc->add_option("-o,--out", out_path, "assignment output");
  wenc->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(levelled_path);
    LevelledRefutation grid = parse_levelled(in);
    VarLayout ly = VarLayout::ref_only(
        f.num_vars, static_cast<long long>(f.size()), grid.s(), grid.t());
    emit_assignment(encode_witness(grid, ly), out_stream());
  });

  auto *wdec = app.add_subcommand(
      "witness-decode",
      "turn a model of a refutation statement into a levelled refutation");
  wdec->add_option("--cnf", cnf_path, "input DIMACS")->required();
  wdec->add_option("--s", s, "levels")->required();
  wdec->add_option("--t", t, "clauses per level")->required();
  wdec->add_option("--model", model_path, "assignment file")->required();
  wdec->add_option("-o,--out", out_path, "grid output");
  wdec->callback([&] {
    Cnf f = parse_dimacs_file(cnf_path);
    auto in = open_in(model_path);
    PartialAssignment alpha = parse_assignment(in);
    VarLayout ly = VarLayout::ref_only(f.num_vars,
                                       static_cast<long long>(f.size()), s, t);
    LevelledRefutation grid = decode_witness(alpha, ly, f);
    emit_levelled(grid, out_stream());
  });

  // ---- the lab ----------------------------------------------------------
  auto *sample =
      app.add_subcommand("sample-rho", "sample a random restriction");
  sample->add_option("--n", n, "variables")->required();
  sample->add_option("--r", r, "clauses")->required();
  sample->add_option("--s", s, "levels")->required();
  sample->add_option("--t", t, "clauses per level")->required();
  sample->add_option("--seed", seed, "PRNG seed")->required();
  sample->add_option("-o,--out", out_path, "dump output");
  add_pw(sample);
  sample->callback([&] {
    VarLayout ly = VarLayout::ref_only(n, r, s, t);
    RandomRestriction rho = sample_rho(make_params(), n, r, s, t, ly);
    dump_restriction(rho, out_stream());
  });

  auto *checkrho = app.add_subcommand(
      "check-rho", "sample a restriction and evaluate its events");
  checkrho->add_option("--n", n, "variables")->required();
  checkrho->add_option("--r", r, "clauses")->required();
  checkrho->add_option("--s", s, "levels")->required();
  checkrho->add_option("--t", t, "clauses per level")->required();
  checkrho->add_option("--seed", seed, "PRNG seed")->required();
  add_pw(checkrho);
  checkrho->callback([&] {
    VarLayout ly = VarLayout::ref_only(n, r, s, t);
    RandomRestriction rho = sample_rho(make_params(), n, r, s, t, ly);
    LevelBoundsReport lb = check_level_bounds(rho);
    PatternsReport pt = check_patterns(rho);
    json rep{{"level_bounds", json{{"A_D", lb.item_i},
                                   {"A_RL_A_V", lb.item_ii},
                                   {"A_I", lb.item_iii},
                                   {"all", lb.all()}}},
             {"patterns", json{{"last_cell", pt.item_i},
                               {"triples", pt.item_ii},
                               {"all", pt.all()}}}};
    std::cout << rep.dump(2) << "\n";
    if (!lb.all() || !pt.all())
      throw std::runtime_error("sampled restriction violates an event");
  });

  auto *mc =
      app.add_subcommand("mc-stats", "estimate event frequencies");
  mc->add_option("--n", n, "variables")->required();
  mc->add_option("--r", r, "clauses")->required();
  mc->add_option("--s", s, "levels")->required();
  mc->add_option("--t", t, "clauses per level")->required();
  mc->add_option("--trials", trials, "number of samples");
  mc->add_option("--seed", seed, "PRNG seed")->required();
  mc->add_option("--threads", threads, "worker threads");
  add_pw(mc);
  mc->callback([&] {
    McReport rep = monte_carlo(make_params(), n, r, s, t, trials, threads);
    std::cout << mc_json(rep).dump(2) << "\n";
  });

  auto *regime = app.add_subcommand(
      "regime", "evaluate the proof inequalities at given parameters");
  regime->add_option("--n", n, "variables")->required();
  regime->add_option("--r", r, "clauses")->required();
  regime->add_option("--s", s_real, "levels (real-valued)")->required();
  regime->add_option("--t", t_real, "clauses per level (real-valued)")
      ->required();
  regime->add_option("--delta", delta, "exponent of the length bound");
  add_pw(regime);
  regime->callback([&] {
    RhoParams params = make_params();
    RegimeReport rep =
        check_parameter_regime(static_cast<double>(n), static_cast<double>(r),
                               s_real, t_real, eps, delta, &params);
    std::cout << regime_json(rep).dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
