#include "refstate/encoders.hpp"

#include <ostream>

namespace refstate {

void DimacsClauseWriter::on_clause(const Clause &c) { os_ << c << "\n"; }

namespace {

// Families (2)-(15). REF^F_{s,t} prepends (1); REF^{n,r}_{s,t} prepends the
// C-weakening replacement. Emission order within a family is lexicographic
// in the quantified indices.
void encode_ref_common(long long n, long long s, long long t, long long r,
                       const VarLayout &ly, ClauseSink &sink) {
  sink.begin_family("nontaut");  // (2)
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long l = 1; l <= n; ++l)
        sink.add(Clause{neg(ly.var_d(i, j, l, 1)), neg(ly.var_d(i, j, l, 0))});

  sink.begin_family("res-L-cut");  // (3)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          sink.add(Clause{neg(ly.var_l(i, j, jp)), neg(ly.var_v(i, j, l)),
                          pos(ly.var_d(i - 1, jp, l, 1))});

  sink.begin_family("res-R-cut");  // (4)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          sink.add(Clause{neg(ly.var_r(i, j, jp)), neg(ly.var_v(i, j, l)),
                          pos(ly.var_d(i - 1, jp, l, 0))});

  sink.begin_family("res-L-transf");  // (5)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          for (long long lp = 1; lp <= n; ++lp)
            for (long long b = 0; b <= 1; ++b) {
              if (lp == l && b == 1) continue;
              sink.add(Clause{neg(ly.var_l(i, j, jp)), neg(ly.var_v(i, j, l)),
                              neg(ly.var_d(i - 1, jp, lp, b)),
                              pos(ly.var_d(i, j, lp, b))});
            }

  sink.begin_family("res-R-transf");  // (6)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          for (long long lp = 1; lp <= n; ++lp)
            for (long long b = 0; b <= 1; ++b) {
              if (lp == l && b == 0) continue;
              sink.add(Clause{neg(ly.var_r(i, j, jp)), neg(ly.var_v(i, j, l)),
                              neg(ly.var_d(i - 1, jp, lp, b)),
                              pos(ly.var_d(i, j, lp, b))});
            }

  sink.begin_family("empty-clause");  // (7)
  for (long long l = 1; l <= n; ++l)
    for (long long b = 0; b <= 1; ++b)
      sink.add(Clause{neg(ly.var_d(s, t, l, b))});

  sink.begin_family("V-dom");  // (8)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      std::vector<Lit> lits;
      for (long long l = 1; l <= n; ++l) lits.push_back(pos(ly.var_v(i, j, l)));
      sink.add(Clause(std::move(lits)));
    }

  sink.begin_family("I-dom");  // (9)
  for (long long j = 1; j <= t; ++j) {
    std::vector<Lit> lits;
    for (long long m = 1; m <= r; ++m) lits.push_back(pos(ly.var_i(j, m)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("L-dom");  // (10)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      std::vector<Lit> lits;
      for (long long jp = 1; jp <= t; ++jp)
        lits.push_back(pos(ly.var_l(i, j, jp)));
      sink.add(Clause(std::move(lits)));
    }

  sink.begin_family("R-dom");  // (11)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      std::vector<Lit> lits;
      for (long long jp = 1; jp <= t; ++jp)
        lits.push_back(pos(ly.var_r(i, j, jp)));
      sink.add(Clause(std::move(lits)));
    }

  sink.begin_family("V-func");  // (12)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long l = 1; l <= n; ++l)
        for (long long lp = l + 1; lp <= n; ++lp)
          sink.add(Clause{neg(ly.var_v(i, j, l)), neg(ly.var_v(i, j, lp))});

  sink.begin_family("I-func");  // (13)
  for (long long j = 1; j <= t; ++j)
    for (long long m = 1; m <= r; ++m)
      for (long long mp = m + 1; mp <= r; ++mp)
        sink.add(Clause{neg(ly.var_i(j, m)), neg(ly.var_i(j, mp))});

  sink.begin_family("L-func");  // (14)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long jpp = jp + 1; jpp <= t; ++jpp)
          sink.add(Clause{neg(ly.var_l(i, j, jp)), neg(ly.var_l(i, j, jpp))});

  sink.begin_family("R-func");  // (15)
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long jpp = jp + 1; jpp <= t; ++jpp)
          sink.add(Clause{neg(ly.var_r(i, j, jp)), neg(ly.var_r(i, j, jpp))});
}

}  // namespace

void encode_ref_F(const Cnf &f, long long s, long long t,
                  const VarLayout &layout, ClauseSink &sink) {
  const long long n = layout.n();
  const long long r = layout.r();
  if (f.num_vars != n || static_cast<long long>(f.clauses.size()) != r)
    throw std::invalid_argument("formula does not match layout dimensions");
  if (layout.s() != s || layout.t() != t)
    throw std::invalid_argument("layout has wrong grid dimensions");

  sink.begin_family("axioms");  // (1)
  for (long long j = 1; j <= t; ++j)
    for (long long m = 1; m <= r; ++m)
      for (const Lit &lit : f.clauses[m - 1].lits())
        sink.add(Clause{neg(layout.var_i(j, m)),
                        pos(layout.var_d(1, j, lit.var, lit.pol))});

  encode_ref_common(n, s, t, r, layout, sink);
}

Cnf encode_ref_F(const Cnf &f, long long s, long long t,
                 const VarLayout &layout) {
  CnfCollector sink;
  encode_ref_F(f, s, t, layout, sink);
  return sink.take(layout.num_vars());
}

void encode_sat(long long n, long long r, const VarLayout &layout,
                ClauseSink &sink) {
  sink.begin_family("sat-some-lit");  // (16)
  for (long long m = 1; m <= r; ++m) {
    std::vector<Lit> lits;
    for (long long l = 1; l <= n; ++l)
      for (long long b = 1; b >= 0; --b)
        lits.push_back(pos(layout.var_t(m, l, b)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("sat-pos-lit");  // (17)
  for (long long m = 1; m <= r; ++m)
    for (long long l = 1; l <= n; ++l)
      sink.add(Clause{neg(layout.var_t(m, l, 1)), pos(layout.var_tl(l))});

  sink.begin_family("sat-neg-lit");  // (18)
  for (long long m = 1; m <= r; ++m)
    for (long long l = 1; l <= n; ++l)
      sink.add(Clause{neg(layout.var_t(m, l, 0)), neg(layout.var_tl(l))});

  sink.begin_family("sat-lit-in-clause");  // (19)
  for (long long m = 1; m <= r; ++m)
    for (long long l = 1; l <= n; ++l)
      for (long long b = 0; b <= 1; ++b)
        sink.add(
            Clause{neg(layout.var_t(m, l, b)), pos(layout.var_c(m, l, b))});
}

Cnf encode_sat(long long n, long long r, const VarLayout &layout) {
  CnfCollector sink;
  encode_sat(n, r, layout, sink);
  return sink.take(layout.num_vars());
}

void encode_ref_nr(long long n, long long r, long long s, long long t,
                   const VarLayout &layout, ClauseSink &sink) {
  if (!layout.has_sat_block())
    throw std::invalid_argument("REF^{n,r} needs a layout with C variables");
  sink.begin_family("axioms-nr");  // (20), replaces (1)
  for (long long j = 1; j <= t; ++j)
    for (long long m = 1; m <= r; ++m)
      for (long long l = 1; l <= n; ++l)
        for (long long b = 0; b <= 1; ++b)
          sink.add(Clause{neg(layout.var_i(j, m)), neg(layout.var_c(m, l, b)),
                          pos(layout.var_d(1, j, l, b))});

  encode_ref_common(n, s, t, r, layout, sink);
}

Cnf encode_ref_nr(long long n, long long r, long long s, long long t,
                  const VarLayout &layout) {
  CnfCollector sink;
  encode_ref_nr(n, r, s, t, layout, sink);
  return sink.take(layout.num_vars());
}

void encode_reflection(long long n, long long r, long long s, long long t,
                       const VarLayout &layout, ClauseSink &sink) {
  encode_sat(n, r, layout, sink);
  encode_ref_nr(n, r, s, t, layout, sink);
}

Cnf encode_reflection(long long n, long long r, long long s, long long t,
                      const VarLayout &layout) {
  CnfCollector sink;
  encode_reflection(n, r, s, t, layout, sink);
  return sink.take(layout.num_vars());
}

void encode_ref_am(const Cnf &f, long long s_tilde, const AmVarLayout &ly,
                   ClauseSink &sink) {
  const long long n = ly.n();
  const long long r = ly.r();
  const long long st = s_tilde;
  if (f.num_vars != n || static_cast<long long>(f.clauses.size()) != r)
    throw std::invalid_argument("formula does not match AM layout dimensions");
  if (ly.s_tilde() != st)
    throw std::invalid_argument("AM layout has wrong s~");

  sink.begin_family("am-V-dom");
  for (long long u = 1; u <= st; ++u) {
    std::vector<Lit> lits;
    for (long long i = 0; i <= n; ++i) lits.push_back(pos(ly.var_v(u, i)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("am-I-dom");
  for (long long u = 1; u <= st; ++u) {
    std::vector<Lit> lits;
    for (long long j = 0; j <= r; ++j) lits.push_back(pos(ly.var_i(u, j)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("am-L-dom");
  for (long long u = 1; u <= st; ++u) {
    std::vector<Lit> lits;
    for (long long v = 0; v <= st; ++v) lits.push_back(pos(ly.var_l(u, v)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("am-R-dom");
  for (long long u = 1; u <= st; ++u) {
    std::vector<Lit> lits;
    for (long long v = 0; v <= st; ++v) lits.push_back(pos(ly.var_r(u, v)));
    sink.add(Clause(std::move(lits)));
  }

  sink.begin_family("am-V-func");
  for (long long u = 1; u <= st; ++u)
    for (long long i = 0; i <= n; ++i)
      for (long long ip = i + 1; ip <= n; ++ip)
        sink.add(Clause{neg(ly.var_v(u, i)), neg(ly.var_v(u, ip))});

  sink.begin_family("am-I-func");
  for (long long u = 1; u <= st; ++u)
    for (long long j = 0; j <= r; ++j)
      for (long long jp = j + 1; jp <= r; ++jp)
        sink.add(Clause{neg(ly.var_i(u, j)), neg(ly.var_i(u, jp))});

  sink.begin_family("am-L-func");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 0; v <= st; ++v)
      for (long long vp = v + 1; vp <= st; ++vp)
        sink.add(Clause{neg(ly.var_l(u, v)), neg(ly.var_l(u, vp))});

  sink.begin_family("am-R-func");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 0; v <= st; ++v)
      for (long long vp = v + 1; vp <= st; ++vp)
        sink.add(Clause{neg(ly.var_r(u, v)), neg(ly.var_r(u, vp))});

  sink.begin_family("am-switch-neg");  // not both "no input" and "no pivot"
  for (long long u = 1; u <= st; ++u)
    sink.add(Clause{neg(ly.var_i(u, 0)), neg(ly.var_v(u, 0))});

  sink.begin_family("am-switch-pos");
  for (long long u = 1; u <= st; ++u)
    sink.add(Clause{pos(ly.var_i(u, 0)), pos(ly.var_v(u, 0))});

  sink.begin_family("am-input-no-L");
  for (long long u = 1; u <= st; ++u)
    sink.add(Clause{neg(ly.var_i(u, 0)), neg(ly.var_l(u, 0))});

  sink.begin_family("am-input-no-R");
  for (long long u = 1; u <= st; ++u)
    sink.add(Clause{neg(ly.var_i(u, 0)), neg(ly.var_r(u, 0))});

  sink.begin_family("am-L-order");  // premises precede conclusions
  for (long long u = 1; u <= st; ++u)
    for (long long v = u; v <= st; ++v)
      sink.add(Clause{neg(ly.var_l(u, v))});

  sink.begin_family("am-R-order");
  for (long long u = 1; u <= st; ++u)
    for (long long v = u; v <= st; ++v)
      sink.add(Clause{neg(ly.var_r(u, v))});

  sink.begin_family("am-L-cut");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 1; v <= st; ++v)
      for (long long i = 1; i <= n; ++i)
        sink.add(Clause{neg(ly.var_l(u, v)), neg(ly.var_v(u, i)),
                        pos(ly.var_d(v, i, 1))});

  sink.begin_family("am-R-cut");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 1; v <= st; ++v)
      for (long long i = 1; i <= n; ++i)
        sink.add(Clause{neg(ly.var_r(u, v)), neg(ly.var_v(u, i)),
                        pos(ly.var_d(v, i, 0))});

  sink.begin_family("am-L-transf");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 1; v <= st; ++v)
      for (long long i = 1; i <= n; ++i)
        for (long long ip = 1; ip <= n; ++ip)
          for (long long b = 0; b <= 1; ++b) {
            if (ip == i) continue;
            sink.add(Clause{neg(ly.var_l(u, v)), neg(ly.var_v(u, i)),
                            neg(ly.var_d(v, ip, b)), pos(ly.var_d(u, ip, b))});
          }

  sink.begin_family("am-R-transf");
  for (long long u = 1; u <= st; ++u)
    for (long long v = 1; v <= st; ++v)
      for (long long i = 1; i <= n; ++i)
        for (long long ip = 1; ip <= n; ++ip)
          for (long long b = 0; b <= 1; ++b) {
            if (ip == i) continue;
            sink.add(Clause{neg(ly.var_r(u, v)), neg(ly.var_v(u, i)),
                            neg(ly.var_d(v, ip, b)), pos(ly.var_d(u, ip, b))});
          }

  sink.begin_family("am-axioms");
  for (long long u = 1; u <= st; ++u)
    for (long long j = 1; j <= r; ++j)
      for (const Lit &lit : f.clauses[j - 1].lits())
        sink.add(
            Clause{neg(ly.var_i(u, j)), pos(ly.var_d(u, lit.var, lit.pol))});

  sink.begin_family("am-nontaut");
  for (long long u = 1; u <= st; ++u)
    for (long long i = 1; i <= n; ++i)
      sink.add(Clause{neg(ly.var_d(u, i, 0)), neg(ly.var_d(u, i, 1))});

  sink.begin_family("am-empty-clause");
  for (long long i = 1; i <= n; ++i)
    for (long long b = 0; b <= 1; ++b)
      sink.add(Clause{neg(ly.var_d(st, i, b))});
}

Cnf encode_ref_am(const Cnf &f, long long s_tilde, const AmVarLayout &layout) {
  CnfCollector sink;
  encode_ref_am(f, s_tilde, layout, sink);
  return sink.take(layout.num_vars());
}

PartialAssignment gamma_F(const Cnf &f, const VarLayout &layout) {
  const long long n = layout.n();
  const long long r = layout.r();
  if (f.num_vars != n || static_cast<long long>(f.clauses.size()) != r)
    throw std::invalid_argument("formula does not match layout dimensions");
  PartialAssignment gamma;
  for (long long m = 1; m <= r; ++m)
    for (long long l = 1; l <= n; ++l)
      for (long long b = 0; b <= 1; ++b)
        gamma.set(layout.var_c(m, l, b),
                  f.clauses[m - 1].contains(Lit{l, static_cast<int>(b)}) ? 1
                                                                         : 0);
  return gamma;
}

Substitution tau_substitution(const Cnf &f, const VarLayout &layout) {
  const long long n = layout.n();
  const long long r = layout.r();
  Substitution tau;
  std::vector<bool> occurs(static_cast<std::size_t>(n) + 1, false);
  for (const Clause &c : f.clauses)
    for (const Lit &l : c.lits()) occurs[static_cast<std::size_t>(l.var)] = true;

  for (long long m = 1; m <= r; ++m)
    for (long long l = 1; l <= n; ++l)
      for (long long b = 0; b <= 1; ++b) {
        Var v = layout.var_t(m, l, b);
        if (f.clauses[m - 1].contains(Lit{l, static_cast<int>(b)}))
          tau.set_literal(v, Lit{l, static_cast<int>(b)});
        else
          tau.set_constant(v, 0);
      }
  // T(l) for variables absent from F is unconstrained; a constant keeps the
  // substituted formula over F's variables.
  for (long long l = 1; l <= n; ++l) {
    if (occurs[static_cast<std::size_t>(l)])
      tau.set_literal(layout.var_tl(l), pos(l));
    else
      tau.set_constant(layout.var_tl(l), 0);
  }
  return tau;
}

AmReduction am_reduction(const Cnf &f, long long s_tilde,
                         const AmVarLayout &aml, const VarLayout &ref_layout) {
  const long long n = aml.n();
  const long long r = aml.r();
  const long long t = s_tilde / (n + 1);
  if (t < 1) throw ParamError("s~ too small: floor(s~/(n+1)) must be >= 1");
  if (ref_layout.n() != n || ref_layout.r() != r || ref_layout.s() != n + 1 ||
      ref_layout.t() != t || ref_layout.has_sat_block())
    throw std::invalid_argument("target layout must be REF^F_{n+1,t}");
  if (f.clauses.empty() || is_tautological(f.clauses.front()))
    throw ParamError("reduction pads with weakenings of C_1, which must "
                     "exist and be non-tautological");

  const long long k = s_tilde - t * (n + 1);  // padding rows
  // Row u > k sits at level (u-k-1)/t + 1, column (u-k-1)%t + 1; level 1
  // gets the smallest indices so premises always point downward.
  auto level_of = [&](long long u) { return (u - k - 1) / t + 1; };
  auto col_of = [&](long long u) { return (u - k - 1) % t + 1; };
  auto row_of = [&](long long lv, long long col) {
    return k + (lv - 1) * t + col;
  };

  AmReduction red;
  red.t = t;
  red.padding_rows = k;
  PartialAssignment &a = red.assignment;
  const Clause &c1 = f.clauses.front();

  for (long long u = 1; u <= k; ++u) {
    // Padding: weakening of C_1, never used as a premise.
    a.set(aml.var_i(u, 0), 0);
    a.set(aml.var_i(u, 1), 1);
    for (long long j = 2; j <= r; ++j) a.set(aml.var_i(u, j), 0);
    a.set(aml.var_v(u, 0), 1);
    for (long long i = 1; i <= n; ++i) a.set(aml.var_v(u, i), 0);
    a.set(aml.var_l(u, 0), 1);
    a.set(aml.var_r(u, 0), 1);
    for (long long v = 1; v <= s_tilde; ++v) {
      a.set(aml.var_l(u, v), 0);
      a.set(aml.var_r(u, v), 0);
    }
    for (long long i = 1; i <= n; ++i)
      for (long long b = 0; b <= 1; ++b)
        a.set(aml.var_d(u, i, b),
              c1.contains(Lit{i, static_cast<int>(b)}) ? 1 : 0);
  }

  for (long long u = k + 1; u <= s_tilde; ++u) {
    const long long lv = level_of(u);
    const long long col = col_of(u);
    // D[u,.,.] is renamed, never evaluated.
    for (long long i = 1; i <= n; ++i)
      for (long long b = 0; b <= 1; ++b)
        red.renaming[aml.var_d(u, i, b)] = ref_layout.var_d(lv, col, i, b);

    if (lv == 1) {
      a.set(aml.var_v(u, 0), 1);
      for (long long i = 1; i <= n; ++i) a.set(aml.var_v(u, i), 0);
      a.set(aml.var_i(u, 0), 0);
      for (long long j = 1; j <= r; ++j)
        red.renaming[aml.var_i(u, j)] = ref_layout.var_i(col, j);
      a.set(aml.var_l(u, 0), 1);
      a.set(aml.var_r(u, 0), 1);
      for (long long v = 1; v <= s_tilde; ++v) {
        a.set(aml.var_l(u, v), 0);
        a.set(aml.var_r(u, v), 0);
      }
    } else {
      a.set(aml.var_v(u, 0), 0);
      for (long long i = 1; i <= n; ++i)
        red.renaming[aml.var_v(u, i)] = ref_layout.var_v(lv, col, i);
      a.set(aml.var_i(u, 0), 1);
      for (long long j = 1; j <= r; ++j) a.set(aml.var_i(u, j), 0);
      a.set(aml.var_l(u, 0), 0);
      a.set(aml.var_r(u, 0), 0);
      for (long long v = 1; v <= s_tilde; ++v) {
        if (v > k && level_of(v) == lv - 1) {
          red.renaming[aml.var_l(u, v)] =
              ref_layout.var_l(lv, col, col_of(v));
          red.renaming[aml.var_r(u, v)] =
              ref_layout.var_r(lv, col, col_of(v));
        } else {
          a.set(aml.var_l(u, v), 0);
          a.set(aml.var_r(u, v), 0);
        }
      }
    }
  }
  (void)row_of;
  return red;
}

void encode_ref_F_removed_subfamily(long long n, long long s, long long t,
                                    const VarLayout &ly, ClauseSink &sink) {
  sink.begin_family("res-L-transf-removed");
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          sink.add(Clause{neg(ly.var_l(i, j, jp)), neg(ly.var_v(i, j, l)),
                          neg(ly.var_d(i - 1, jp, l, 0)),
                          pos(ly.var_d(i, j, l, 0))});
  sink.begin_family("res-R-transf-removed");
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (long long jp = 1; jp <= t; ++jp)
        for (long long l = 1; l <= n; ++l)
          sink.add(Clause{neg(ly.var_r(i, j, jp)), neg(ly.var_v(i, j, l)),
                          neg(ly.var_d(i - 1, jp, l, 1)),
                          pos(ly.var_d(i, j, l, 1))});
}

Cnf encode_ref_F_removed_subfamily(long long n, long long s, long long t,
                                   const VarLayout &layout) {
  CnfCollector sink;
  encode_ref_F_removed_subfamily(n, s, t, layout, sink);
  return sink.take(layout.num_vars());
}

Cnf rename_vars(const Cnf &f, const std::map<Var, Var> &renaming,
                Var new_num_vars) {
  Cnf out;
  out.num_vars = new_num_vars;
  for (const Clause &c : f.clauses) {
    std::vector<Lit> lits;
    lits.reserve(c.size());
    for (const Lit &l : c.lits()) {
      auto it = renaming.find(l.var);
      if (it == renaming.end())
        throw std::invalid_argument("variable " + std::to_string(l.var) +
                                    " missing from renaming");
      lits.push_back(Lit{it->second, l.pol});
    }
    out.add(Clause(std::move(lits)));
  }
  return out;
}

}  // namespace refstate
