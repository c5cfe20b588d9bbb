#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "refstate/restriction.hpp"
#include "refstate/rng.hpp"
#include "restriction_detail.hpp"

namespace refstate {

using namespace detail;

namespace {

// Values rho chose for a group, read back from the assignment.
std::optional<long long> rho_hot_value(const RandomRestriction &rho,
                                       const VarLayout &ly, GroupKind k,
                                       long long i, long long j) {
  long long size = group_size(ly, k);
  for (long long idx = 1; idx <= size; ++idx) {
    Var v = 0;
    switch (k) {
      case GroupKind::V:
        v = ly.var_v(i, j, idx);
        break;
      case GroupKind::I:
        v = ly.var_i(j, idx);
        break;
      default:
        return std::nullopt;
    }
    auto got = rho.rho.get(v);
    if (!got) return std::nullopt;
    if (*got == 1) return idx;
  }
  return std::nullopt;
}

Clause all_positive(long long n) {
  std::vector<Lit> lits;
  for (long long l = 1; l <= n; ++l) lits.push_back(pos(l));
  return Clause(std::move(lits));
}

// n-literal non-tautological completion of base: keeps base's literals and
// fills the remaining variables positively.
Clause complete_positive(const Clause &base, long long n) {
  std::vector<Lit> lits;
  for (long long l = 1; l <= n; ++l) {
    if (base.contains(neg(l)))
      lits.push_back(neg(l));
    else
      lits.push_back(pos(l));
  }
  return Clause(std::move(lits));
}

struct ForkPresets {
  std::optional<Clause> d_u, d_cl, d_cr;
  std::optional<long long> v_u, v_cl, v_cr;   // pivots (children: level >= 2)
  std::optional<long long> i_cl, i_cr;        // inputs (children on level 1)
  int count() const {
    int c = 0;
    c += d_u.has_value() + d_cl.has_value() + d_cr.has_value();
    c += v_u.has_value() + v_cl.has_value() + v_cr.has_value();
    c += i_cl.has_value() + i_cr.has_value();
    return c;
  }
};

}  // namespace

ExtensionResult extend_to_admissible(const RandomRestriction &rho,
                                     const Cnf &f, const VarLayout &ly) {
  ExtensionResult res;
  PatternsReport patt = check_patterns(rho);
  if (!patt.all()) {
    res.status = ExtensionResult::Status::precondition_failed;
    res.message = "rho violates the forbidden-pattern events";
    return res;
  }
  res.sigma = rho.rho;
  const long long n = ly.n();

  auto obstruct = [&](const std::string &msg) {
    res.status = ExtensionResult::Status::obstruction;
    res.message = msg;
    return res;
  };

  auto d_preset = [&](const Pair &v) -> std::optional<Clause> {
    auto it = rho.cell_clauses.find(v);
    if (it == rho.cell_clauses.end()) return std::nullopt;
    return it->second;
  };
  auto v_preset = [&](const Pair &v) -> std::optional<long long> {
    if (v.first < 2 || !rho.a_v.count(v)) return std::nullopt;
    return rho_hot_value(rho, ly, GroupKind::V, v.first, v.second);
  };
  auto i_preset = [&](const Pair &v) -> std::optional<long long> {
    if (v.first != 1 || !rho.a_i.count(v) || rho.a_d.count(v))
      return std::nullopt;
    return rho_hot_value(rho, ly, GroupKind::I, 1, v.second);
  };

  // V or I a component vertex still needs once its cell is set. Cells set
  // here always carry n literals, so any pivot works; level-1 vertices take
  // the smallest input their cell weakens.
  auto finish_vertex = [&](const Pair &v, const Clause &cell,
                           std::optional<long long> forced_pivot) -> bool {
    if (v.first >= 2) {
      if (!v_preset(v))
        set_v_group(res.sigma, ly, v.first, v.second,
                    forced_pivot.value_or(1));
      return true;
    }
    if (i_preset(v)) return true;
    std::size_t m = covering_input(f, cell);
    if (m == 0) return false;
    set_i_group(res.sigma, ly, v.second, static_cast<long long>(m));
    return true;
  };

  RestrictionGraph g = graph_of_rho(rho);

  // Union-find over the component structure of G_rho.
  std::map<Pair, Pair> up;
  std::function<Pair(Pair)> find = [&](Pair x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const Pair &v : g.vertices) up[v] = v;
  for (const auto &[parent, kids] : g.edges_down)
    for (const Pair &c : kids) up[find(parent)] = find(c);
  std::map<Pair, std::vector<Pair>> components;
  for (const Pair &v : g.vertices) components[find(v)].push_back(v);

  for (auto &[root, verts] : components) {
    std::sort(verts.begin(), verts.end());
    std::vector<Pair> parents;
    for (const Pair &v : verts)
      if (g.edges_down.count(v)) parents.push_back(v);

    if (parents.empty()) {
      // Isolated vertex; only the D-implies-V/I condition can be open.
      ++res.components_isolated;
      const Pair v = verts.front();
      auto cell = d_preset(v);
      if (!cell) continue;
      if (v.first >= 2) {
        if (!v_preset(v)) set_v_group(res.sigma, ly, v.first, v.second, 1);
      } else if (!i_preset(v)) {
        std::size_t m = covering_input(f, *cell);
        if (m == 0)
          return obstruct("no input clause is weakened by the sampled cell; "
                          "the formula must be unsatisfiable");
        set_i_group(res.sigma, ly, v.second, static_cast<long long>(m));
      }
      continue;
    }

    if (parents.size() > 2)
      return obstruct("component with more than two premise vertices");

    // Identify the fork at the top of the component.
    Pair u = parents.front();
    if (parents.size() == 2 && parents.back().first > u.first)
      u = parents.back();
    const auto &kids = g.edges_down.at(u);
    const auto &hu = rho.h.at(u.first);
    Pair cl{u.first - 1, hu.at({u.second, 0})};
    Pair cr{u.first - 1, hu.at({u.second, 1})};

    ForkPresets pre;
    pre.d_u = d_preset(u);
    pre.v_u = v_preset(u);
    pre.d_cl = d_preset(cl);
    pre.d_cr = d_preset(cr);
    pre.v_cl = v_preset(cl);
    pre.v_cr = v_preset(cr);
    pre.i_cl = i_preset(cl);
    pre.i_cr = i_preset(cr);

    if (parents.size() == 2) {
      // Chain: a second premise vertex below; no presets are possible.
      ++res.components_chain;
      Pair c = parents.front() == u ? parents.back() : parents.front();
      if (std::find(kids.begin(), kids.end(), c) == kids.end())
        return obstruct("chain component whose premise vertices are not "
                        "parent and child");
      if (pre.count() != 0)
        return obstruct("chain component carries an extra preset");
      Clause c_u = all_positive(n);
      Clause c_left = c_u;  // pivot 1 kept positive on the left
      Clause c_right = c_u.without_var(1).with(neg(1));
      set_d_group(res.sigma, ly, u.first, u.second, c_u);
      set_v_group(res.sigma, ly, u.first, u.second, 1);
      set_d_group(res.sigma, ly, cl.first, cl.second, c_left);
      set_d_group(res.sigma, ly, cr.first, cr.second, c_right);
      const Clause &c_c = (c == cl) ? c_left : c_right;
      Pair other = (c == cl) ? cr : cl;
      if (!finish_vertex(other, (other == cl) ? c_left : c_right, 1))
        return obstruct("no covering input clause; formula satisfiable?");
      // The lower premise vertex resolves on variable 1 as well.
      set_v_group(res.sigma, ly, c.first, c.second, 1);
      const auto &hc = rho.h.at(c.first);
      Pair dl{c.first - 1, hc.at({c.second, 0})};
      Pair dr{c.first - 1, hc.at({c.second, 1})};
      Clause d_left = c_c.without_var(1).with(pos(1));
      Clause d_right = c_c.without_var(1).with(neg(1));
      set_d_group(res.sigma, ly, dl.first, dl.second, d_left);
      set_d_group(res.sigma, ly, dr.first, dr.second, d_right);
      if (!finish_vertex(dl, d_left, 1) || !finish_vertex(dr, d_right, 1))
        return obstruct("no covering input clause; formula satisfiable?");
      continue;
    }

    // Fork: one premise vertex with its two children; at most one preset.
    ++res.components_fork;
    if (pre.count() > 1)
      return obstruct("fork component carries two presets");

    long long pivot = 0;
    if (pre.v_u) {
      pivot = *pre.v_u;
    } else if (pre.d_cl) {
      for (long long l = 1; l <= n && !pivot; ++l)
        if (pre.d_cl->contains(pos(l))) pivot = l;
      if (!pivot)
        return obstruct(
            "left child cell fixed by rho has no positive literal, so no "
            "pivot can satisfy the premise conditions");
    } else if (pre.d_cr) {
      for (long long l = 1; l <= n && !pivot; ++l)
        if (pre.d_cr->contains(neg(l))) pivot = l;
      if (!pivot)
        return obstruct(
            "right child cell fixed by rho has no negative literal, so no "
            "pivot can satisfy the premise conditions");
    } else if (pre.i_cl) {
      const Clause &cm = f.clauses[static_cast<std::size_t>(*pre.i_cl - 1)];
      for (long long l = 1; l <= n && !pivot; ++l)
        if (!cm.contains(neg(l))) pivot = l;
      if (!pivot)
        return obstruct("input clause fixed at the left child contains every "
                        "negative literal");
    } else if (pre.i_cr) {
      const Clause &cm = f.clauses[static_cast<std::size_t>(*pre.i_cr - 1)];
      for (long long l = 1; l <= n && !pivot; ++l)
        if (!cm.contains(pos(l))) pivot = l;
      if (!pivot)
        return obstruct("input clause fixed at the right child contains every "
                        "positive literal");
    } else {
      pivot = 1;
    }

    Clause c_u;
    if (pre.d_u) {
      c_u = *pre.d_u;
    } else if (pre.d_cl) {
      c_u = *pre.d_cl;
    } else if (pre.d_cr) {
      c_u = *pre.d_cr;
    } else if (pre.i_cl) {
      Clause base =
          f.clauses[static_cast<std::size_t>(*pre.i_cl - 1)].without_var(pivot);
      c_u = complete_positive(base, n);
    } else if (pre.i_cr) {
      Clause base =
          f.clauses[static_cast<std::size_t>(*pre.i_cr - 1)].without_var(pivot);
      c_u = complete_positive(base.with(neg(pivot)), n);
    } else {
      c_u = all_positive(n);
    }

    Clause c_left = c_u.without_var(pivot).with(pos(pivot));
    Clause c_right = c_u.without_var(pivot).with(neg(pivot));
    if (pre.d_cl && c_left != *pre.d_cl)
      return obstruct("left child preset inconsistent with the fork cells");
    if (pre.d_cr && c_right != *pre.d_cr)
      return obstruct("right child preset inconsistent with the fork cells");
    if (pre.i_cl &&
        !f.clauses[static_cast<std::size_t>(*pre.i_cl - 1)].subset_of(c_left))
      return obstruct("left child cell fails to weaken its preset input");
    if (pre.i_cr &&
        !f.clauses[static_cast<std::size_t>(*pre.i_cr - 1)].subset_of(c_right))
      return obstruct("right child cell fails to weaken its preset input");

    if (!pre.d_u) set_d_group(res.sigma, ly, u.first, u.second, c_u);
    if (!pre.v_u) set_v_group(res.sigma, ly, u.first, u.second, pivot);
    if (!pre.d_cl) set_d_group(res.sigma, ly, cl.first, cl.second, c_left);
    if (!pre.d_cr) set_d_group(res.sigma, ly, cr.first, cr.second, c_right);
    if (!finish_vertex(cl, c_left, 1) || !finish_vertex(cr, c_right, 1))
      return obstruct("no covering input clause; formula satisfiable?");
  }

  AdmissibilityReport adm = is_admissible(res.sigma, rho.rho, f, ly);
  if (!adm.ok) {
    std::ostringstream ss;
    ss << "extension post-check failed:";
    for (const std::string &v : adm.violations) ss << " [" << v << "]";
    return obstruct(ss.str());
  }
  return res;
}

AdversaryInvariant check_adversary_invariant(const PartialAssignment &sigma,
                                             const Clause &e,
                                             const VarLayout &ly) {
  AdversaryInvariant out;
  for (const Lit &lit : e.lits()) {
    auto val = sigma.get(lit.var);
    if (val && *val == lit.pol) {
      out.i_ok = false;
      out.detail = "literal of " + ly.describe(lit.var) + " satisfied";
      return out;
    }
  }
  WidthProfile wp = width_profile(e, ly);
  auto all_assigned = [&](GroupKind k, const Pair &pr) {
    for (Var v : group_vars(ly, k, pr.first, pr.second))
      if (!sigma.defined(v)) return false;
    return true;
  };
  auto scan = [&](const std::set<Pair> &pairs, GroupKind k) {
    for (const Pair &pr : pairs)
      if (!all_assigned(k, pr)) {
        out.ii_ok = false;
        out.detail = std::string(group_name(k)) + "-important pair (" +
                     std::to_string(pr.first) + "," +
                     std::to_string(pr.second) + ") not fully assigned";
        return false;
      }
    return true;
  };
  scan(wp.d_mentioned, GroupKind::D) && scan(wp.v_important, GroupKind::V) &&
      scan(wp.i_important, GroupKind::I) &&
      scan(wp.l_important, GroupKind::L) && scan(wp.r_important, GroupKind::R);
  return out;
}

PartialAssignment adversary_cleanup(const PartialAssignment &sigma,
                                    const Clause &e,
                                    const RandomRestriction &rho,
                                    const VarLayout &ly) {
  WidthProfile wp = width_profile(e, ly);
  PartialAssignment cur = sigma;
  GroupAnalysis ga = analyze_groups(sigma, ly);

  auto rho_holds = [&](GroupKind k, long long i, long long j) {
    return rho.rho.defined(group_vars(ly, k, i, j).front());
  };
  auto drop_group = [&](GroupKind k, long long i, long long j) {
    for (Var v : group_vars(ly, k, i, j)) cur.unset(v);
  };

  // Step 1: premise groups at unimportant pairs.
  for (const auto &[key, st] : ga.groups) {
    if (key.kind != GroupKind::L && key.kind != GroupKind::R) continue;
    if (rho_holds(key.kind, key.i, key.j)) continue;
    const auto &important =
        key.kind == GroupKind::L ? wp.l_important : wp.r_important;
    if (!important.count({key.i, key.j})) drop_group(key.kind, key.i, key.j);
  }

  // Step 2: cells neither mentioned nor on an edge of the shrunk graph.
  RestrictionGraph g = graph_of_sigma(cur, ly);
  std::set<Pair> on_edge;
  for (const auto &[parent, kidlist] : g.edges_down) {
    on_edge.insert(parent);
    for (const Pair &c : kidlist) on_edge.insert(c);
  }
  for (const auto &[key, st] : ga.groups) {
    if (key.kind != GroupKind::D) continue;
    if (rho_holds(GroupKind::D, key.i, key.j)) continue;
    Pair pr{key.i, key.j};
    if (!wp.d_mentioned.count(pr) && !on_edge.count(pr))
      drop_group(GroupKind::D, key.i, key.j);
  }

  // Step 3: pivots and input indices no longer supporting a cell.
  for (const auto &[key, st] : ga.groups) {
    if (key.kind != GroupKind::V && key.kind != GroupKind::I) continue;
    if (rho_holds(key.kind, key.i, key.j)) continue;
    const auto &important =
        key.kind == GroupKind::V ? wp.v_important : wp.i_important;
    if (important.count({key.i, key.j})) continue;
    if (cur.defined(ly.var_d(key.i, key.j, 1, 0))) continue;  // cell still set
    drop_group(key.kind, key.i, key.j);
  }
  return cur;
}

namespace {

// Picks the premise whose copy of the pivot literal tau falsifies.
int premise_with(const Clause &e0, const Clause &e1, Lit falsified) {
  Lit satisfied = negate(falsified);
  if (e0.contains(falsified) && !e0.contains(satisfied)) return 0;
  if (e1.contains(falsified) && !e1.contains(satisfied)) return 1;
  return -1;
}

bool important_for(const WidthProfile &wp, VarKind kind, const Pair &pr) {
  switch (kind) {
    case VarKind::D:
      return wp.d_mentioned.count(pr) != 0;
    case VarKind::V:
      return wp.v_important.count(pr) != 0;
    case VarKind::I:
      return wp.i_important.count(pr) != 0;
    case VarKind::L:
      return wp.l_important.count(pr) != 0;
    case VarKind::R:
      return wp.r_important.count(pr) != 0;
    default:
      return false;
  }
}

}  // namespace

AdversaryResult adversary_step(const PartialAssignment &sigma, const Clause &e,
                               const Clause &e0, const Clause &e1, Var q,
                               const RandomRestriction &rho, const Cnf &f,
                               const VarLayout &ly) {
  AdversaryResult res;
  const long long n = ly.n(), r = ly.r(), s = ly.s(), t = ly.t();
  PartialAssignment tau = adversary_cleanup(sigma, e, rho, ly);

  auto fail = [&](AdversaryResult::Status st, const std::string &msg) {
    res.status = st;
    res.detail = msg;
    return res;
  };
  auto finish = [&](Lit falsified, const char *label) {
    int b = premise_with(e0, e1, falsified);
    if (b < 0)
      return fail(AdversaryResult::Status::no_valid_premise,
                  "no premise cleanly contains the falsified pivot literal");
    res.tau = std::move(tau);
    res.b = b;
    res.case_taken = label;
    return res;
  };

  if (tau.defined(q))
    return finish(Lit{q, 1 - *tau.get(q)}, "preset");

  const VarInfo qi = ly.decode(q);
  Pair home{qi.kind == VarKind::I ? 1 : qi.i, qi.j};
  {
    WidthProfile wp_q = width_profile(e.with(pos(q)), ly);
    if (!important_for(wp_q, qi.kind, home))
      return finish(pos(q), "unimportant");
  }

  // From here on the home pair crossed an importance threshold; extend the
  // assignment so the whole group lands in the domain.
  auto pick_v_value = [&](long long i, long long j,
                          Var avoid) -> std::optional<long long> {
    for (long long l = 1; l <= n; ++l) {
      Var v = ly.var_v(i, j, l);
      if (v != avoid && !e.contains(pos(v))) return l;
    }
    return std::nullopt;
  };
  auto pick_i_value = [&](long long j, Var avoid) -> std::optional<long long> {
    for (long long m = 1; m <= r; ++m) {
      Var v = ly.var_i(j, m);
      if (v != avoid && !e.contains(pos(v))) return m;
    }
    return std::nullopt;
  };

  if (qi.kind == VarKind::V) {
    auto l = pick_v_value(qi.i, qi.j, q);
    if (!l)
      return fail(AdversaryResult::Status::unsupported,
                  "no pivot value avoids the clause (needs n >= 2)");
    set_v_group(tau, ly, qi.i, qi.j, *l);
    return finish(pos(q), "case1-V");
  }
  if (qi.kind == VarKind::I) {
    auto m = pick_i_value(qi.j, q);
    if (!m)
      return fail(AdversaryResult::Status::unsupported,
                  "no input value avoids the clause (needs r >= 2)");
    set_i_group(tau, ly, qi.j, *m);
    return finish(pos(q), "case1-I");
  }

  // Ensures the cell and its pivot/input are set at (i,j); cells chosen
  // here carry n literals (empty at (s,t)).
  auto ensure_cell = [&](long long i, long long j) -> std::optional<std::string> {
    if (tau.defined(ly.var_d(i, j, 1, 0))) return std::nullopt;
    if (i >= 2) {
      Clause cell = (i == s && j == t) ? Clause{} : all_positive(n);
      set_d_group(tau, ly, i, j, cell);
      if (!tau.defined(ly.var_v(i, j, 1))) {
        auto l = pick_v_value(i, j, 0);
        if (!l) return "no pivot value avoids the clause (needs n >= 2)";
        set_v_group(tau, ly, i, j, *l);
      }
      return std::nullopt;
    }
    long long m;
    if (tau.defined(ly.var_i(j, 1))) {
      m = 0;
      for (long long mm = 1; mm <= r; ++mm)
        if (*tau.get(ly.var_i(j, mm)) == 1) m = mm;
    } else {
      auto got = pick_i_value(j, 0);
      if (!got) return "no input value avoids the clause (needs r >= 2)";
      m = *got;
      set_i_group(tau, ly, j, m);
    }
    const Clause &cm = f.clauses[static_cast<std::size_t>(m - 1)];
    if (is_tautological(cm)) return "input clause is tautological";
    set_d_group(tau, ly, 1, j, complete_positive(cm, n));
    return std::nullopt;
  };

  if (qi.kind == VarKind::D) {
    if (auto err = ensure_cell(qi.i, qi.j))
      return fail(AdversaryResult::Status::unsupported, *err);
    return finish(Lit{q, 1 - *tau.get(q)}, "case2-D");
  }

  // Premise variables: grow the graph by one edge, avoiding U1, U2, U3.
  const int side = qi.kind == VarKind::L ? 0 : 1;
  const long long i = qi.i, j = qi.j;
  if (auto err = ensure_cell(i, j))
    return fail(AdversaryResult::Status::unsupported, *err);
  long long pivot = 0;
  for (long long l = 1; l <= n; ++l)
    if (tau.get(ly.var_v(i, j, l)).value_or(0) == 1) pivot = l;
  if (pivot == 0)
    return fail(AdversaryResult::Status::unsupported,
                "cell set without a pivot; sigma was not admissible");
  Clause cell;
  {
    std::vector<Lit> lits;
    for (long long l = 1; l <= n; ++l)
      for (long long b = 0; b <= 1; ++b)
        if (*tau.get(ly.var_d(i, j, l, b)) == 1)
          lits.push_back(Lit{l, static_cast<int>(b)});
    cell = Clause(std::move(lits));
  }
  const Lit side_lit = side == 0 ? pos(pivot) : neg(pivot);

  Clause child_cell;
  long long child_input = 0;  // i == 2
  long long child_pivot = 0;  // i >= 3, short-cell branch
  std::set<long long> u3;
  const char *label = "";
  if (i == 2) {
    label = "case3-level2";
    child_cell = cell.without_var(pivot).with(side_lit);
    std::size_t m = covering_input(f, child_cell);
    if (m == 0)
      return fail(AdversaryResult::Status::unsupported,
                  "level-1 child cell weakens no input clause");
    child_input = static_cast<long long>(m);
    for (long long jp = 1; jp <= t; ++jp)
      if (e.contains(pos(ly.var_i(jp, child_input)))) u3.insert(jp);
  } else if (static_cast<long long>(cell.size()) >= n - 1) {
    label = "case3-full";
    child_cell = cell.without_var(pivot).with(side_lit);
  } else {
    label = "case3-short";
    child_cell = cell.with(side_lit);
    for (long long l = 1; l <= n && !child_pivot; ++l)
      if (!child_cell.contains_var(l)) child_pivot = l;
    if (!child_pivot)
      return fail(AdversaryResult::Status::unsupported,
                  "no fresh variable for the short child cell");
    for (long long jp = 1; jp <= t; ++jp)
      if (e.contains(pos(ly.var_v(i - 1, jp, child_pivot)))) u3.insert(jp);
  }

  std::set<long long> u1;
  for (const Pair &v : graph_of_sigma(tau, ly).level_vertices(i - 1))
    u1.insert(v.second);
  std::set<long long> u2;
  for (long long jp = 1; jp <= t; ++jp) {
    Var v = side == 0 ? ly.var_l(i, j, jp) : ly.var_r(i, j, jp);
    if (e.contains(pos(v))) u2.insert(jp);
  }
  res.u1 = u1.size();
  res.u2 = u2.size();
  res.u3 = u3.size();

  long long target = 0;
  for (long long jp = 1; jp <= t && !target; ++jp)
    if (!u1.count(jp) && !u2.count(jp) && !u3.count(jp)) target = jp;
  if (!target) {
    std::ostringstream ss;
    ss << "avoid sets cover every column: |U1|=" << u1.size()
       << " |U2|=" << u2.size() << " |U3|=" << u3.size() << " t=" << t;
    return fail(AdversaryResult::Status::avoid_set_exhausted, ss.str());
  }

  set_lr_group(tau, ly, side, i, j, target);
  set_d_group(tau, ly, i - 1, target, child_cell);
  if (i == 2) {
    set_i_group(tau, ly, target, child_input);
  } else {
    long long lp = child_pivot;
    if (!lp) {
      auto got = pick_v_value(i - 1, target, 0);
      if (!got)
        return fail(AdversaryResult::Status::unsupported,
                    "no pivot value for the fresh child");
      lp = *got;
    }
    set_v_group(tau, ly, i - 1, target, lp);
  }
  return finish(Lit{q, qi.jp == target ? 0 : 1}, label);
}

// ------------------------------------------------------------------
// Parameter regime and Monte Carlo.

RegimeReport check_parameter_regime(double n, double r, double s, double t,
                                    double epsilon, double delta,
                                    const RhoParams *params) {
  RhoParams defaults;
  defaults.epsilon = epsilon;
  const RhoParams &pp = params ? *params : defaults;
  RegimeReport rep;
  rep.p = pp.p(s, t);
  rep.w = pp.w(s, t);

  auto warn = [&](const std::string &msg) {
    rep.shape_ok = false;
    rep.shape_warnings.push_back(msg);
  };
  if (!(t >= s)) warn("t >= s fails");
  if (!(s >= n + 1)) warn("s >= n+1 fails");
  if (!(r >= n)) warn("r >= n fails");
  if (!(n >= 2)) warn("n >= 2 fails");
  if (!(t >= std::pow(r, 3.0 + epsilon))) warn("t >= r^(3+eps) fails");

  const double p = rep.p, w = rep.w;
  const double tail_level = std::exp(-p * t / 3.0);
  const double head = std::max(std::exp(-p * w / 3.0) + 2.0 * s * tail_level,
                               std::exp(-p * t / (8.0 * r)));
  rep.lhs3 = head * std::exp2(std::pow(t, delta)) + 3.0 * s * tail_level +
             3.0 * p + 67.0 * p * p * p * s * t;
  rep.ineq3 = rep.lhs3 < 1.0;
  rep.lhs4 = 10.0 * p * t + 4.0 * w;
  rep.rhs4 = t / 4.0;
  rep.ineq4 = rep.lhs4 < rep.rhs4;
  rep.lhs5 = std::exp(std::exp(std::log(t) - p * t / 3.0));
  rep.ineq5 = rep.lhs5 < 2.0;
  return rep;
}

void wilson_interval(long long successes, long long trials, double z,
                     double *low, double *high) {
  if (trials <= 0) {
    *low = 0;
    *high = 1;
    return;
  }
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  *low = std::max(0.0, center - half);
  *high = std::min(1.0, center + half);
}

McReport monte_carlo(const RhoParams &params, long long n, long long r,
                     long long s, long long t, long long trials,
                     int threads) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  McReport rep;
  rep.n = n;
  rep.r = r;
  rep.s = s;
  rep.t = t;
  rep.trials = trials;
  rep.seed = params.seed;
  rep.p = params.p(static_cast<double>(s), static_cast<double>(t));
  rep.w = params.w(static_cast<double>(s), static_cast<double>(t));

  constexpr int kEvents = 7;
  std::vector<std::array<bool, kEvents>> outcomes(
      static_cast<std::size_t>(trials));
  auto run_range = [&](long long begin, long long step) {
    VarLayout ly = VarLayout::ref_only(n, r, s, t);
    for (long long k = begin; k < trials; k += step) {
      RhoParams pk = params;
      pk.seed = SplitMix64::derive(params.seed, static_cast<std::uint64_t>(k));
      RandomRestriction rho = sample_rho(pk, n, r, s, t, ly);
      LevelBoundsReport lb = check_level_bounds(rho);
      PatternsReport pt = check_patterns(rho);
      outcomes[static_cast<std::size_t>(k)] = {
          lb.all(),   lb.item_i,  lb.item_ii, lb.item_iii,
          pt.all(),   pt.item_i,  pt.item_ii};
    }
  };
  if (threads <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int g = 0; g < threads; ++g)
      pool.emplace_back(run_range, static_cast<long long>(g),
                        static_cast<long long>(threads));
    for (auto &th : pool) th.join();
  }

  const double p = rep.p;
  const double bound_levels =
      1.0 - 3.0 * static_cast<double>(s) * std::exp(-p * static_cast<double>(t) / 3.0);
  const double bound_patterns = 1.0 - 3.0 * p -
                                67.0 * p * p * p * static_cast<double>(s) *
                                    static_cast<double>(t);
  const char *names[kEvents] = {
      "level-bounds",          "level-bounds/A_D",
      "level-bounds/A_RL+A_V", "level-bounds/A_I",
      "forbidden-patterns",    "forbidden-patterns/last-cell",
      "forbidden-patterns/triples"};
  for (int ev = 0; ev < kEvents; ++ev) {
    McEvent e;
    e.name = names[ev];
    e.trials = trials;
    for (const auto &row : outcomes)
      if (row[static_cast<std::size_t>(ev)]) ++e.successes;
    e.frequency = static_cast<double>(e.successes) / static_cast<double>(trials);
    wilson_interval(e.successes, trials, 1.0, &e.wilson_low, &e.wilson_high);
    e.wilson_se = (e.wilson_high - e.wilson_low) / 2.0;
    if (ev == 0) e.bound = bound_levels;
    if (ev == 4) e.bound = bound_patterns;
    if (e.bound) e.bound_vacuous = *e.bound <= 0.0;
    rep.events.push_back(std::move(e));
  }
  return rep;
}

}  // namespace refstate
