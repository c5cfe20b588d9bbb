#include "refstate/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "refstate/encoders.hpp"
#include "refstate/rng.hpp"
#include "restriction_detail.hpp"

namespace refstate {

using namespace detail;

double RhoParams::p(double s, double t) const {
  if (p_override) return *p_override;
  if (variant == Variant::level_scaled) {
    double ap = std::min((1.0 + epsilon) / (3.0 + epsilon), 0.5);
    return std::pow(s, -1.0 / 3.0) * std::pow(t, -ap);
  }
  double a = std::min((2.0 + epsilon / 2.0) / (3.0 + epsilon / 2.0), 0.75);
  return std::pow(t, -a);
}

double RhoParams::w(double s, double t) const {
  if (w_override) return *w_override;
  if (variant == Variant::level_scaled)
    return std::pow(s, 1.0 / 3.0) * std::pow(t, 3.0 / 5.0);
  return std::pow(t, 4.0 / 5.0);
}

RandomRestriction sample_rho(const RhoParams &params, long long n, long long r,
                             long long s, long long t,
                             const VarLayout &layout) {
  if (layout.n() != n || layout.r() != r || layout.s() != s || layout.t() != t)
    throw std::invalid_argument("layout does not match sampler dimensions");
  RandomRestriction out;
  out.n = n;
  out.r = r;
  out.s = s;
  out.t = t;
  out.p = params.p(static_cast<double>(s), static_cast<double>(t));
  out.w = params.w(static_cast<double>(s), static_cast<double>(t));
  if (!(out.p >= 0.0 && out.p < 1.0001) || out.w <= 0)
    throw std::invalid_argument("need 0 <= p <= 1 and w > 0");
  SplitMix64 rng(params.seed);
  const double p = out.p;

  // Step 1: A_D membership and one fair literal per variable.
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      if (!rng.coin(p)) continue;
      out.a_d.insert({i, j});
      std::vector<Lit> lits;
      lits.reserve(static_cast<std::size_t>(n));
      for (long long l = 1; l <= n; ++l)
        lits.push_back(rng.fair_bit() ? pos(l) : neg(l));
      Clause cell(std::move(lits));
      out.cell_clauses[{i, j}] = cell;
      set_d_group(out.rho, layout, i, j, cell);
    }

  // Step 2: A_I on level 1; I is only set outside A_D.
  for (long long j = 1; j <= t; ++j) {
    if (!rng.coin(p)) continue;
    out.a_i.insert({1, j});
    if (out.a_d.count({1, j})) continue;
    long long m = static_cast<long long>(rng.below(static_cast<std::uint64_t>(r))) + 1;
    set_i_group(out.rho, layout, j, m);
  }

  // Step 3: A_V on levels 2..s.
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      if (!rng.coin(p)) continue;
      out.a_v.insert({i, j});
      long long l = static_cast<long long>(rng.below(static_cast<std::uint64_t>(n))) + 1;
      set_v_group(out.rho, layout, i, j, l);
    }

  // Step 4: A_RL and the per-level injections, drawn by the sequential
  // process (membership coin, then two draws from the unused image pool).
  for (long long i = 2; i <= s; ++i) {
    std::map<std::pair<long long, int>, long long> hi;
    std::vector<long long> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (long long jp = 1; jp <= t; ++jp) pool.push_back(jp);
    long long members = 0;
    bool guard = false;
    for (long long j = 1; j <= t; ++j) {
      if (!rng.coin(p)) continue;
      out.a_rl.insert({i, j});
      ++members;
      if (guard) continue;
      if (static_cast<double>(members) > 2.0 * p * static_cast<double>(t)) {
        guard = true;
        hi.clear();
        continue;
      }
      if (pool.size() < 2) {  // 2|A_i| > t; treat like the cardinality guard
        guard = true;
        hi.clear();
        continue;
      }
      std::size_t k1 = static_cast<std::size_t>(rng.below(pool.size()));
      long long jl = pool[k1];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k1));
      std::size_t k2 = static_cast<std::size_t>(rng.below(pool.size()));
      long long jr = pool[k2];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k2));
      hi[{j, 0}] = jl;
      hi[{j, 1}] = jr;
    }
    if (guard) {
      out.guarded_levels.insert(i);
      continue;
    }
    if (hi.empty()) continue;
    out.h[i] = hi;
    for (const auto &[key, target] : hi) {
      out.children[i - 1].insert(target);
      set_lr_group(out.rho, layout, key.second, i, key.first, target);
    }
  }
  return out;
}

std::vector<Pair> RestrictionGraph::level_vertices(long long level) const {
  std::vector<Pair> out;
  for (const Pair &v : vertices)
    if (v.first == level) out.push_back(v);
  return out;
}

RestrictionGraph graph_of_rho(const RandomRestriction &rho) {
  RestrictionGraph g;
  for (const auto &set : {rho.a_d, rho.a_i, rho.a_v, rho.a_rl})
    g.vertices.insert(set.begin(), set.end());
  for (const auto &[level, cols] : rho.children)
    for (long long j : cols) g.vertices.insert({level, j});
  for (const auto &[level, hi] : rho.h)
    for (const auto &[key, target] : hi)
      g.edges_down[{level, key.first}].push_back({level - 1, target});
  return g;
}

// ------------------------------------------------------------------

RestrictionGraph graph_of_sigma(const PartialAssignment &sigma,
                                const VarLayout &layout) {
  GroupAnalysis ga = analyze_groups(sigma, layout);
  RestrictionGraph g;
  for (const auto &[key, st] : ga.groups) {
    g.vertices.insert({key.i, key.j});
    if ((key.kind == GroupKind::L || key.kind == GroupKind::R) &&
        group_set(st, layout, key.kind)) {
      g.vertices.insert({key.i - 1, st.value});
      g.edges_down[{key.i, key.j}].push_back({key.i - 1, st.value});
    }
  }
  return g;
}

// ------------------------------------------------------------------
// Sampled-restriction events.

LevelBoundsReport check_level_bounds(const RandomRestriction &rho) {
  LevelBoundsReport rep;
  const double cap = 2.0 * rho.p * static_cast<double>(rho.t);
  std::map<long long, long long> d_per, v_per, rl_per;
  for (const Pair &pr : rho.a_d) ++d_per[pr.first];
  for (const Pair &pr : rho.a_v) ++v_per[pr.first];
  for (const Pair &pr : rho.a_rl) ++rl_per[pr.first];
  for (const auto &[lvl, cnt] : d_per)
    if (static_cast<double>(cnt) > cap) rep.item_i = false;
  for (const auto &[lvl, cnt] : rl_per)
    if (static_cast<double>(cnt) > cap) rep.item_ii = false;
  for (const auto &[lvl, cnt] : v_per)
    if (static_cast<double>(cnt) > cap) rep.item_ii = false;
  if (static_cast<double>(rho.a_i.size()) > cap) rep.item_iii = false;
  return rep;
}

namespace {

long long membership_count(const RandomRestriction &rho, const Pair &pr) {
  long long c = 0;
  if (rho.a_d.count(pr)) ++c;
  if (rho.a_i.count(pr)) ++c;
  if (rho.a_v.count(pr)) ++c;
  if (rho.a_rl.count(pr)) ++c;
  return c;
}

std::vector<Pair> children_of(const RandomRestriction &rho, const Pair &pr) {
  std::vector<Pair> out;
  auto it = rho.h.find(pr.first);
  if (it == rho.h.end()) return out;
  for (int side = 0; side <= 1; ++side) {
    auto jt = it->second.find({pr.second, side});
    if (jt != it->second.end()) out.push_back({pr.first - 1, jt->second});
  }
  return out;
}

// Connectivity of the subgraph induced by the triple's distinct vertices,
// their children, and the triple-to-child edges.
bool triple_connected(const RandomRestriction &rho,
                      const std::vector<Pair> &triple) {
  std::vector<Pair> verts;
  std::vector<std::pair<Pair, Pair>> edges;
  for (const Pair &v : triple) {
    verts.push_back(v);
    for (const Pair &c : children_of(rho, v)) {
      verts.push_back(c);
      edges.push_back({v, c});
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.size() <= 1) return true;
  std::map<Pair, std::size_t> idx;
  for (std::size_t k = 0; k < verts.size(); ++k) idx[verts[k]] = k;
  std::vector<std::size_t> root(verts.size());
  for (std::size_t k = 0; k < root.size(); ++k) root[k] = k;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto &[a, b] : edges) root[find(idx[a])] = find(idx[b]);
  std::size_t r0 = find(0);
  for (std::size_t k = 1; k < verts.size(); ++k)
    if (find(k) != r0) return false;
  return true;
}

}  // namespace

PatternsReport check_patterns(const RandomRestriction &rho) {
  PatternsReport rep;
  Pair last{rho.s, rho.t};
  if (rho.a_d.count(last) || rho.a_rl.count(last) || rho.a_v.count(last))
    rep.item_i = false;

  std::vector<Pair> members;
  for (const auto &set : {rho.a_d, rho.a_i, rho.a_v, rho.a_rl})
    for (const Pair &pr : set) members.push_back(pr);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  // Triples are multisets over member pairs; the incidence count of a
  // candidate is the sum of membership counts over its distinct elements.
  const std::size_t k = members.size();
  for (std::size_t a = 0; a < k && rep.item_ii; ++a)
    for (std::size_t b = a; b < k && rep.item_ii; ++b)
      for (std::size_t c = b; c < k && rep.item_ii; ++c) {
        std::vector<Pair> distinct{members[a]};
        if (members[b] != members[a]) distinct.push_back(members[b]);
        if (members[c] != members[b] && members[c] != members[a])
          distinct.push_back(members[c]);
        long long incidences = 0;
        for (const Pair &pr : distinct) incidences += membership_count(rho, pr);
        if (incidences < 3) continue;
        if (triple_connected(rho, distinct)) {
          rep.item_ii = false;
          rep.witness = {members[a], members[b], members[c]};
        }
      }
  return rep;
}

WidthProfile width_profile(const Clause &e, const VarLayout &layout) {
  WidthProfile wp;
  const long long n = layout.n(), r = layout.r(), t = layout.t();
  std::map<Pair, long long> v_pos, l_pos, r_pos, i_pos;
  std::set<Pair> v_neg, l_neg, r_neg, i_neg;
  for (const Lit &lit : e.lits()) {
    VarInfo info = layout.decode(lit.var);
    switch (info.kind) {
      case VarKind::D:
        wp.d_mentioned.insert({info.i, info.j});
        wp.mentioned.insert({info.i, info.j});
        break;
      case VarKind::V:
        wp.mentioned.insert({info.i, info.j});
        if (lit.pol == 1) {
          ++v_pos[{info.i, info.j}];
          ++wp.v_positive_by_il[{info.i, info.l}];
        } else {
          v_neg.insert({info.i, info.j});
        }
        break;
      case VarKind::I:
        wp.mentioned.insert({1, info.j});
        if (lit.pol == 1) {
          ++i_pos[{1, info.j}];
          ++wp.i_positive_by_m[info.m];
        } else {
          i_neg.insert({1, info.j});
        }
        break;
      case VarKind::L:
        wp.mentioned.insert({info.i, info.j});
        if (lit.pol == 1)
          ++l_pos[{info.i, info.j}];
        else
          l_neg.insert({info.i, info.j});
        break;
      case VarKind::R:
        wp.mentioned.insert({info.i, info.j});
        if (lit.pol == 1)
          ++r_pos[{info.i, info.j}];
        else
          r_neg.insert({info.i, info.j});
        break;
      default:
        break;  // C/T variables carry no width
    }
  }
  // Thresholds n/2, t/2, r/2 compared as 2*count >= bound.
  for (const auto &[pr, cnt] : v_pos)
    if (2 * cnt >= n) wp.v_important.insert(pr);
  for (const Pair &pr : v_neg) wp.v_important.insert(pr);
  for (const auto &[pr, cnt] : l_pos)
    if (2 * cnt >= t) wp.l_important.insert(pr);
  for (const Pair &pr : l_neg) wp.l_important.insert(pr);
  for (const auto &[pr, cnt] : r_pos)
    if (2 * cnt >= t) wp.r_important.insert(pr);
  for (const Pair &pr : r_neg) wp.r_important.insert(pr);
  for (const auto &[pr, cnt] : i_pos)
    if (2 * cnt >= r) wp.i_important.insert(pr);
  for (const Pair &pr : i_neg) wp.i_important.insert(pr);
  return wp;
}

WidthsReport check_widths(const ResolutionProof &pi_restricted,
                          const RandomRestriction &rho,
                          const VarLayout &layout) {
  std::vector<Clause> clauses;
  clauses.reserve(pi_restricted.length());
  for (const ResStep &st : pi_restricted.steps) clauses.push_back(st.clause);
  return check_widths(clauses, rho.w, layout);
}

WidthsReport check_widths(const std::vector<Clause> &clauses, double w,
                          const VarLayout &layout) {
  WidthsReport rep;
  const long long s = layout.s(), t = layout.t(), n = layout.n();
  for (std::size_t idx = 0; idx < clauses.size(); ++idx) {
    WidthProfile wp = width_profile(clauses[idx], layout);
    auto fail = [&](int item, const std::string &detail) {
      rep.ok = false;
      rep.clause_index = idx + 1;
      rep.item = item;
      rep.detail = detail;
    };
    if (static_cast<double>(wp.d_mentioned.size()) > w)
      return fail(1, "D-mentioned pairs exceed w"), rep;
    if (static_cast<double>(wp.i_important.size()) > w)
      return fail(2, "I-important pairs exceed w"), rep;
    if (static_cast<double>(wp.v_important.size()) > w)
      return fail(3, "V-important pairs exceed w"), rep;
    if (static_cast<double>(wp.l_important.size()) > w)
      return fail(4, "L-important pairs exceed w"), rep;
    if (static_cast<double>(wp.r_important.size()) > w)
      return fail(5, "R-important pairs exceed w"), rep;
    for (const auto &[m, cnt] : wp.i_positive_by_m)
      if (4 * cnt > t)
        return fail(6, "I(.,m) occurrences exceed t/4 for m = " +
                           std::to_string(m)),
               rep;
    for (const auto &[il, cnt] : wp.v_positive_by_il) {
      const long long i = il.first;
      if (i >= s - n + 1 && i <= s - 1 && 4 * cnt > t)
        return fail(7, "V(i,.,l) occurrences exceed t/4 on level " +
                           std::to_string(i)),
               rep;
    }
  }
  return rep;
}

// ------------------------------------------------------------------
// Admissibility.

AdmissibilityReport is_admissible(const PartialAssignment &sigma,
                                  const PartialAssignment &rho, const Cnf &f,
                                  const VarLayout &ly) {
  AdmissibilityReport rep;
  const long long n = ly.n(), s = ly.s(), t = ly.t();
  if (!sigma.extends(rho)) {
    rep.extends_rho = false;
    rep.ok = false;
    rep.violations.push_back("sigma does not extend rho");
  }
  GroupAnalysis ga = analyze_groups(sigma, ly);

  auto loc = [](const GroupKey &key) {
    std::ostringstream ss;
    ss << group_name(key.kind) << "(" << key.i << "," << key.j << ")";
    return ss.str();
  };
  auto violate = [&](const std::string &msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  // C1: every touched group is fully set in the required shape.
  bool shapes_ok = true;
  for (const auto &[key, st] : ga.groups) {
    if (!group_set(st, ly, key.kind)) {
      violate("C1: " + loc(key) + " touched but not set");
      shapes_ok = false;
    }
  }
  if (!shapes_ok) return rep;  // remaining conditions assume C1 shapes

  auto d_cell = [&](long long i, long long j) -> std::optional<Clause> {
    const GroupState *st = ga.find(GroupKind::D, i, j);
    if (!st) return std::nullopt;
    return cell_of(*st);
  };
  auto hot_value = [&](GroupKind k, long long i,
                       long long j) -> std::optional<long long> {
    const GroupState *st = ga.find(k, i, j);
    if (!st) return std::nullopt;
    return st->value;
  };

  // C2 & C7 & C8 & C9 run over set L/R groups; C3-C6 over D groups.
  std::map<std::pair<long long, long long>, int> image_claims;  // C9
  for (const auto &[key, st] : ga.groups) {
    if (key.kind != GroupKind::L && key.kind != GroupKind::R) continue;
    const long long i = key.i, j = key.j, jp = st.value;
    const char *zn = group_name(key.kind);
    if (++image_claims[{i, jp}] > 1)
      violate("C9: two premise groups on level " + std::to_string(i) +
              " share target " + std::to_string(jp));
    auto cu = d_cell(i, j);
    auto cc = d_cell(i - 1, jp);
    if (!cu || !cc) {
      violate("C2: " + loc(key) + " set to " + std::to_string(jp) +
              " without both D endpoints set");
      continue;
    }
    auto pivot = hot_value(GroupKind::V, i, j);
    if (pivot) {
      // C7: the premise must contain the pivot literal of its side.
      Lit need = key.kind == GroupKind::L ? pos(*pivot) : neg(*pivot);
      if (!cc->contains(need))
        violate("C7: premise cell (" + std::to_string(i - 1) + "," +
                std::to_string(jp) + ") lacks the " + zn + "-side literal of x" +
                std::to_string(*pivot));
      // C8: premise literals other than the side literal carry over.
      for (const Lit &lit : cc->lits()) {
        if (lit == need) continue;
        if (!cu->contains(lit))
          violate("C8: cell (" + std::to_string(i) + "," + std::to_string(j) +
                  ") misses literal carried from its " + zn + " premise");
      }
    }
  }

  for (const auto &[key, st] : ga.groups) {
    if (key.kind != GroupKind::D) continue;
    const long long i = key.i, j = key.j;
    Clause cell = cell_of(st);
    // C3
    if (i >= 2) {
      if (!ga.find(GroupKind::V, i, j))
        violate("C3: D set at (" + std::to_string(i) + "," +
                std::to_string(j) + ") without V");
    } else if (!ga.find(GroupKind::I, 1, j)) {
      violate("C3: D set at (1," + std::to_string(j) + ") without I");
    }
    // C4
    if (is_tautological(cell))
      violate("C4: tautological cell at (" + std::to_string(i) + "," +
              std::to_string(j) + ")");
    long long min_lits = std::min(s - i, n);
    if (static_cast<long long>(cell.size()) < min_lits)
      violate("C4: cell at (" + std::to_string(i) + "," + std::to_string(j) +
              ") has fewer than min{s-i,n} literals");
    if (static_cast<long long>(cell.size()) < n && i >= 2) {
      auto pivot = hot_value(GroupKind::V, i, j);
      if (pivot && cell.contains_var(*pivot))
        violate("C4: short cell at (" + std::to_string(i) + "," +
                std::to_string(j) + ") contains its pivot variable");
    }
    // C5
    if (i == s && j == t && !cell.empty()) violate("C5: D(s,t,.,.) nonempty");
    // C6
    if (i == 1) {
      auto m = hot_value(GroupKind::I, 1, j);
      if (m && !f.clauses[static_cast<std::size_t>(*m - 1)].subset_of(cell))
        violate("C6: cell (1," + std::to_string(j) +
                ") is not a weakening of input " + std::to_string(*m));
    }
  }
  return rep;
}

AxiomCheckResult check_no_falsified_axiom(const PartialAssignment &sigma,
                                          const Cnf &f, long long s,
                                          long long t, const VarLayout &ly) {
  struct EvalSink : ClauseSink {
    const PartialAssignment *sigma = nullptr;
    std::optional<Clause> first_falsified;
    void on_clause(const Clause &c) override {
      if (!first_falsified && eval_clause(c, *sigma) == ClauseStatus::falsified)
        first_falsified = c;
    }
  } sink;
  sink.sigma = &sigma;
  encode_ref_F(f, s, t, ly, sink);
  AxiomCheckResult res;
  if (sink.first_falsified) {
    res.ok = false;
    res.falsified = sink.first_falsified;
  }
  return res;
}

}  // namespace refstate
