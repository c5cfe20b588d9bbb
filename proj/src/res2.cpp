#include "refstate/res2.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "refstate/encoders.hpp"

namespace refstate {

Term::Term(Lit a, Lit b) {
  if (a == b) {
    lits_ = {a};
  } else {
    lits_ = {std::min(a, b), std::max(a, b)};
  }
}

bool Term::contains(Lit l) const {
  return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
}

TwoDnf::TwoDnf(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const Term &t : terms_)
    if (t.size() < 1 || t.size() > 2)
      throw std::invalid_argument("2-DNF terms must have 1 or 2 literals");
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

TwoDnf TwoDnf::from_clause(const Clause &c) {
  std::vector<Term> ts;
  ts.reserve(c.size());
  for (const Lit &l : c.lits()) ts.emplace_back(l);
  return TwoDnf(std::move(ts));
}

bool TwoDnf::contains(const Term &t) const {
  return std::binary_search(terms_.begin(), terms_.end(), t);
}

bool TwoDnf::subset_of(const TwoDnf &other) const {
  return std::includes(other.terms_.begin(), other.terms_.end(),
                       terms_.begin(), terms_.end());
}

TwoDnf TwoDnf::with(const Term &t) const {
  std::vector<Term> ts = terms_;
  ts.push_back(t);
  return TwoDnf(std::move(ts));
}

TwoDnf TwoDnf::without(const Term &t) const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const Term &x : terms_)
    if (!(x == t)) ts.push_back(x);
  return TwoDnf(std::move(ts));
}

TwoDnf TwoDnf::merged(const TwoDnf &a, const TwoDnf &b) {
  std::vector<Term> ts = a.terms_;
  ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
  return TwoDnf(std::move(ts));
}

std::size_t TwoDnf::symbols() const {
  std::size_t total = 0;
  for (const Term &t : terms_) total += t.size();
  return total;
}

std::ostream &operator<<(std::ostream &os, const Term &t) {
  bool first = true;
  for (const Lit &l : t.lits()) {
    if (!first) os << "&";
    os << to_dimacs(l);
    first = false;
  }
  return os;
}

std::ostream &operator<<(std::ostream &os, const TwoDnf &d) {
  if (d.empty()) return os << "_";
  bool first = true;
  for (const Term &t : d.terms()) {
    if (!first) os << ";";
    os << t;
    first = false;
  }
  return os;
}

std::ostream &operator<<(std::ostream &os, const Res2CheckResult &r) {
  if (r.ok) return os << "ok";
  return os << "violation at line " << r.step << ": " << r.reason;
}

namespace {

// Conclusion a justification induces, or an error message.
struct RuleResult {
  bool ok = true;
  TwoDnf line;
  std::string error;

  static RuleResult bad(std::string why) { return {false, {}, std::move(why)}; }
};

RuleResult conclusion_of(const Cnf &f, const Res2Proof &pi, std::size_t idx,
                         const Res2Step &st) {
  auto premise = [&](std::size_t p) -> const TwoDnf * {
    if (p < 1 || p >= idx) return nullptr;
    return &pi.line(p);
  };
  switch (st.kind) {
    case Res2Step::Kind::input: {
      if (st.m < 1 || st.m > f.clauses.size())
        return RuleResult::bad("input index out of range");
      return {true, TwoDnf::from_clause(f.clauses[st.m - 1]), ""};
    }
    case Res2Step::Kind::axiom: {
      if (st.axiom_var < 1) return RuleResult::bad("bad axiom variable");
      return {true,
              TwoDnf({Term(pos(st.axiom_var)), Term(neg(st.axiom_var))}),
              ""};
    }
    case Res2Step::Kind::and_intro: {
      const TwoDnf *a = premise(st.p1), *b = premise(st.p2);
      if (!a || !b) return RuleResult::bad("premise index out of range");
      if (!a->contains(Term(st.l1)))
        return RuleResult::bad("first premise lacks the named literal");
      if (!b->contains(Term(st.l2)))
        return RuleResult::bad("second premise lacks the named literal");
      Term merged(st.l1, st.l2);
      if (merged.size() > 2)
        return RuleResult::bad("introduced term too large");
      TwoDnf out = TwoDnf::merged(a->without(Term(st.l1)),
                                  b->without(Term(st.l2)))
                       .with(merged);
      return {true, std::move(out), ""};
    }
    case Res2Step::Kind::cut: {
      const TwoDnf *a = premise(st.p1), *b = premise(st.p2);
      if (!a || !b) return RuleResult::bad("premise index out of range");
      if (st.cut_term.size() < 1 || st.cut_term.size() > 2)
        return RuleResult::bad("cut term must have 1 or 2 literals");
      if (!a->contains(st.cut_term))
        return RuleResult::bad("first premise lacks the cut term");
      if (st.cut_negated.empty())
        return RuleResult::bad("cut must negate at least one term literal");
      TwoDnf bb = *b;
      for (const Lit &l : st.cut_negated) {
        if (!st.cut_term.contains(l))
          return RuleResult::bad("negated literal not in the cut term");
        if (!bb.contains(Term(negate(l))))
          return RuleResult::bad("second premise lacks a negated literal");
        bb = bb.without(Term(negate(l)));
      }
      return {true, TwoDnf::merged(a->without(st.cut_term), bb), ""};
    }
    case Res2Step::Kind::weaken: {
      const TwoDnf *a = premise(st.u);
      if (!a) return RuleResult::bad("weakening source out of range");
      if (!a->subset_of(st.line))
        return RuleResult::bad("line is not a weakening of its source");
      return {true, st.line, ""};
    }
  }
  return RuleResult::bad("unknown justification");
}

}  // namespace

Res2CheckResult check_res2(const Cnf &f, const Res2Proof &pi,
                           bool expect_refutation) {
  std::size_t symbols = 0;
  for (std::size_t idx = 1; idx <= pi.length(); ++idx) {
    const Res2Step &st = pi.steps[idx - 1];
    for (const Term &t : st.line.terms())
      for (const Lit &l : t.lits())
        if (l.var > f.num_vars)
          return Res2CheckResult::bad(idx, "literal outside formula variables");
    RuleResult rr = conclusion_of(f, pi, idx, st);
    if (!rr.ok) return Res2CheckResult::bad(idx, rr.error);
    if (rr.line != st.line)
      return Res2CheckResult::bad(idx, "line differs from rule conclusion");
    symbols += st.line.symbols();
  }
  if (symbols != pi.size)
    return Res2CheckResult::bad(pi.length(), "declared size mismatch");
  if (expect_refutation) {
    if (pi.length() == 0) return Res2CheckResult::bad(0, "empty proof");
    if (!pi.steps.back().line.empty())
      return Res2CheckResult::bad(pi.length(), "last line nonempty");
  }
  return Res2CheckResult::good();
}

namespace {

class Res2Builder {
 public:
  Res2Builder(const Cnf &f) : f_(f) {
    for (std::size_t m = 1; m <= f.clauses.size(); ++m)
      index_[f.clauses[m - 1]] = m;
  }

  std::size_t input(const Clause &c) {
    auto it = index_.find(c);
    if (it == index_.end()) {
      std::ostringstream ss;
      ss << "builder asked for a clause absent from the encoding: " << c;
      throw std::logic_error(ss.str());
    }
    auto cached = input_line_.find(it->second);
    if (cached != input_line_.end()) return cached->second;
    Res2Step st;
    st.kind = Res2Step::Kind::input;
    st.m = it->second;
    st.line = TwoDnf::from_clause(c);
    std::size_t idx = append(std::move(st));
    input_line_[it->second] = idx;
    return idx;
  }

  std::size_t axiom(Var v) {
    auto cached = axiom_line_.find(v);
    if (cached != axiom_line_.end()) return cached->second;
    Res2Step st;
    st.kind = Res2Step::Kind::axiom;
    st.axiom_var = v;
    st.line = TwoDnf({Term(pos(v)), Term(neg(v))});
    std::size_t idx = append(std::move(st));
    axiom_line_[v] = idx;
    return idx;
  }

  std::size_t and_intro(std::size_t p1, std::size_t p2, Lit l1, Lit l2) {
    Res2Step st;
    st.kind = Res2Step::Kind::and_intro;
    st.p1 = p1;
    st.p2 = p2;
    st.l1 = l1;
    st.l2 = l2;
    st.line = TwoDnf::merged(proof_.line(p1).without(Term(l1)),
                             proof_.line(p2).without(Term(l2)))
                  .with(Term(l1, l2));
    return append(std::move(st));
  }

  std::size_t cut(std::size_t p1, std::size_t p2, Term term,
                  std::vector<Lit> negated) {
    Res2Step st;
    st.kind = Res2Step::Kind::cut;
    st.p1 = p1;
    st.p2 = p2;
    st.cut_term = term;
    st.cut_negated = negated;
    TwoDnf bb = proof_.line(p2);
    for (const Lit &l : negated) bb = bb.without(Term(negate(l)));
    st.line = TwoDnf::merged(proof_.line(p1).without(term), bb);
    return append(std::move(st));
  }

  std::size_t weaken(std::size_t u, TwoDnf target) {
    Res2Step st;
    st.kind = Res2Step::Kind::weaken;
    st.u = u;
    st.line = std::move(target);
    return append(std::move(st));
  }

  const TwoDnf &line(std::size_t idx) const { return proof_.line(idx); }
  std::size_t symbols() const { return symbols_; }

  Res2Proof take() {
    proof_.size = symbols_;
    return std::move(proof_);
  }

 private:
  std::size_t append(Res2Step st) {
    symbols_ += st.line.symbols();
    proof_.steps.push_back(std::move(st));
    return proof_.length();
  }

  const Cnf &f_;
  std::map<Clause, std::size_t> index_;
  std::map<std::size_t, std::size_t> input_line_;
  std::map<Var, std::size_t> axiom_line_;
  Res2Proof proof_;
  std::size_t symbols_ = 0;
};

}  // namespace

Res2Proof build_reflection_refutation(long long n, long long r, long long s,
                                      long long t, const VarLayout &ly,
                                      Res2BuildStats *stats) {
  if (n < 1 || r < 1 || s < 1 || t < 1)
    throw std::invalid_argument("parameters must be positive");
  Cnf refl = encode_reflection(n, r, s, t, ly);
  Res2Builder b(refl);

  auto t_lit = [&](long long l, long long bb) {
    return Lit{ly.var_tl(l), static_cast<int>(bb)};
  };

  // dlines[(i-1)*t + (j-1)]: the line D_{i,j}.
  std::vector<std::size_t> dlines(static_cast<std::size_t>(s * t), 0);
  auto dline = [&](long long i, long long j) -> std::size_t & {
    return dlines[static_cast<std::size_t>((i - 1) * t + (j - 1))];
  };

  // Base case: D_{1,j} for each j.
  for (long long j = 1; j <= t; ++j) {
    std::vector<std::size_t> not_i(static_cast<std::size_t>(r) + 1, 0);
    for (long long m = 1; m <= r; ++m) {
      std::vector<std::size_t> line22(static_cast<std::size_t>(2 * n) + 1, 0);
      for (long long l = 1; l <= n; ++l)
        for (long long bb = 0; bb <= 1; ++bb) {
          std::size_t in19 =
              b.input(Clause{neg(ly.var_t(m, l, bb)), pos(ly.var_c(m, l, bb))});
          std::size_t in20 =
              b.input(Clause{neg(ly.var_i(j, m)), neg(ly.var_c(m, l, bb)),
                             pos(ly.var_d(1, j, l, bb))});
          Lit cvar = pos(ly.var_c(m, l, bb));
          std::size_t c1 = b.cut(in19, in20, Term(cvar), {cvar});
          std::size_t in_tb =
              bb == 1 ? b.input(Clause{neg(ly.var_t(m, l, 1)), pos(ly.var_tl(l))})
                      : b.input(Clause{neg(ly.var_t(m, l, 0)), neg(ly.var_tl(l))});
          line22[static_cast<std::size_t>(2 * (l - 1) + bb)] = b.and_intro(
              c1, in_tb, pos(ly.var_d(1, j, l, bb)), t_lit(l, bb));
        }
      // Fold the "clause m is satisfied somehow" disjunction through (22).
      std::vector<Lit> somelits;
      for (long long l = 1; l <= n; ++l)
        for (long long bb = 1; bb >= 0; --bb)
          somelits.push_back(pos(ly.var_t(m, l, bb)));
      std::size_t cur = b.input(Clause(std::move(somelits)));
      for (long long l = 1; l <= n; ++l)
        for (long long bb = 0; bb <= 1; ++bb) {
          Lit tv = pos(ly.var_t(m, l, bb));
          cur = b.cut(cur, line22[static_cast<std::size_t>(2 * (l - 1) + bb)],
                      Term(tv), {tv});
        }
      not_i[static_cast<std::size_t>(m)] = cur;
    }
    std::vector<Lit> idom;
    for (long long m = 1; m <= r; ++m) idom.push_back(pos(ly.var_i(j, m)));
    std::size_t cur = b.input(Clause(std::move(idom)));
    for (long long m = 1; m <= r; ++m) {
      Lit iv = pos(ly.var_i(j, m));
      cur = b.cut(cur, not_i[static_cast<std::size_t>(m)], Term(iv), {iv});
    }
    dline(1, j) = cur;
  }
  const std::size_t base_mark = b.symbols();

  // Induction: D_{i,j} from the D_{i-1,j'}. P_1 is L, P_0 is R.
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      // line27[l][bb]
      std::vector<std::size_t> line27(static_cast<std::size_t>(2 * n) + 2, 0);
      for (long long l = 1; l <= n; ++l)
        for (long long bb = 0; bb <= 1; ++bb) {
          auto p_var = [&](long long jp) {
            return bb == 1 ? ly.var_r(i, j, jp) : ly.var_l(i, j, jp);
          };
          std::vector<std::size_t> line26(static_cast<std::size_t>(t) + 1, 0);
          for (long long jp = 1; jp <= t; ++jp) {
            std::size_t in_cut = b.input(
                Clause{neg(p_var(jp)), neg(ly.var_v(i, j, l)),
                       pos(ly.var_d(i - 1, jp, l, 1 - bb))});
            std::size_t in2 = b.input(Clause{neg(ly.var_d(i - 1, jp, l, 1)),
                                             neg(ly.var_d(i - 1, jp, l, 0))});
            Lit dl = pos(ly.var_d(i - 1, jp, l, 1 - bb));
            std::size_t a = b.cut(in_cut, in2, Term(dl), {dl});
            // a: ~P ∨ ~V ∨ ~D(i-1,jp,l,bb)
            Lit db = pos(ly.var_d(i - 1, jp, l, bb));
            std::size_t l23 =
                b.cut(dline(i - 1, jp), a, Term(db, t_lit(l, bb)), {db});
            std::size_t l24 =
                b.cut(l23, b.axiom(ly.var_tl(l)),
                      Term(pos(ly.var_d(i - 1, jp, l, 1 - bb)), t_lit(l, 1 - bb)),
                      {t_lit(l, 1 - bb)});
            std::size_t cur = l24;
            for (long long lp = 1; lp <= n; ++lp) {
              if (lp == l) continue;
              for (long long bp = 0; bp <= 1; ++bp) {
                std::size_t in_tr = b.input(
                    Clause{neg(p_var(jp)), neg(ly.var_v(i, j, l)),
                           neg(ly.var_d(i - 1, jp, lp, bp)),
                           pos(ly.var_d(i, j, lp, bp))});
                std::size_t l25 = b.and_intro(b.axiom(ly.var_tl(lp)), in_tr,
                                              t_lit(lp, bp),
                                              pos(ly.var_d(i, j, lp, bp)));
                Lit dprem = pos(ly.var_d(i - 1, jp, lp, bp));
                cur = b.cut(cur, l25, Term(dprem, t_lit(lp, bp)),
                            {dprem, t_lit(lp, bp)});
              }
            }
            // The one weakening of the construction: complete D_{i,j}.
            TwoDnf target = b.line(cur)
                                .with(Term(pos(ly.var_d(i, j, l, 0)), t_lit(l, 0)))
                                .with(Term(pos(ly.var_d(i, j, l, 1)), t_lit(l, 1)));
            line26[static_cast<std::size_t>(jp)] = b.weaken(cur, target);
          }
          std::vector<Lit> pdom;
          for (long long jp = 1; jp <= t; ++jp) pdom.push_back(pos(p_var(jp)));
          std::size_t cur = b.input(Clause(std::move(pdom)));
          for (long long jp = 1; jp <= t; ++jp) {
            Lit pv = pos(p_var(jp));
            cur = b.cut(cur, line26[static_cast<std::size_t>(jp)], Term(pv),
                        {pv});
          }
          line27[static_cast<std::size_t>(2 * (l - 1) + bb)] = cur;
        }
      std::vector<std::size_t> vlines(static_cast<std::size_t>(n) + 1, 0);
      for (long long l = 1; l <= n; ++l) {
        std::size_t p0 = line27[static_cast<std::size_t>(2 * (l - 1))];
        std::size_t p1 = line27[static_cast<std::size_t>(2 * (l - 1) + 1)];
        // (27) with b=0 carries T(l) positively, with b=1 negatively.
        vlines[static_cast<std::size_t>(l)] =
            b.cut(p0, p1, Term(t_lit(l, 1)), {t_lit(l, 1)});
      }
      std::vector<Lit> vdom;
      for (long long l = 1; l <= n; ++l) vdom.push_back(pos(ly.var_v(i, j, l)));
      std::size_t cur = b.input(Clause(std::move(vdom)));
      for (long long l = 1; l <= n; ++l) {
        Lit vv = pos(ly.var_v(i, j, l));
        cur = b.cut(cur, vlines[static_cast<std::size_t>(l)], Term(vv), {vv});
      }
      dline(i, j) = cur;
    }
  const std::size_t induction_mark = b.symbols();

  // Finish: strip D_{s,t} with the empty-clause family.
  std::size_t cur = dline(s, t);
  for (long long l = 1; l <= n; ++l)
    for (long long bb = 0; bb <= 1; ++bb) {
      std::size_t in7 = b.input(Clause{neg(ly.var_d(s, t, l, bb))});
      Lit dv = pos(ly.var_d(s, t, l, bb));
      cur = b.cut(cur, in7, Term(dv, t_lit(l, bb)), {dv});
    }

  if (stats) {
    stats->base_symbols = base_mark;
    stats->induction_symbols = induction_mark - base_mark;
    stats->finish_symbols = b.symbols() - induction_mark;
  }
  Res2Proof out = b.take();
  if (stats) stats->length = out.length();
  return out;
}

void emit_res2(const Res2Proof &pi, std::ostream &os) {
  for (std::size_t idx = 1; idx <= pi.length(); ++idx) {
    const Res2Step &st = pi.steps[idx - 1];
    os << idx << " " << st.line << " J ";
    switch (st.kind) {
      case Res2Step::Kind::input:
        os << "I " << st.m;
        break;
      case Res2Step::Kind::axiom:
        os << "A " << st.axiom_var;
        break;
      case Res2Step::Kind::and_intro:
        os << "N " << st.p1 << " " << st.p2 << " " << to_dimacs(st.l1) << " "
           << to_dimacs(st.l2);
        break;
      case Res2Step::Kind::cut: {
        os << "C " << st.p1 << " " << st.p2 << " T " << st.cut_term << " U";
        for (const Lit &l : st.cut_negated) os << " " << to_dimacs(l);
        break;
      }
      case Res2Step::Kind::weaken:
        os << "W " << st.u;
        break;
    }
    os << "\n";
  }
}

std::string emit_res2(const Res2Proof &pi) {
  std::ostringstream ss;
  emit_res2(pi, ss);
  return ss.str();
}

namespace {

TwoDnf parse_dnf_token(const std::string &tok, int lineno) {
  if (tok == "_") return TwoDnf();
  std::vector<Term> terms;
  std::istringstream ts(tok);
  std::string termtok;
  while (std::getline(ts, termtok, ';')) {
    std::vector<Lit> lits;
    std::istringstream ls(termtok);
    std::string littok;
    while (std::getline(ls, littok, '&')) {
      try {
        lits.push_back(from_dimacs(std::stoll(littok)));
      } catch (const std::exception &) {
        throw ParseError(lineno, "bad literal in term: " + littok);
      }
    }
    if (lits.empty() || lits.size() > 2)
      throw ParseError(lineno, "terms must have 1 or 2 literals");
    terms.push_back(lits.size() == 1 ? Term(lits[0]) : Term(lits[0], lits[1]));
  }
  return TwoDnf(std::move(terms));
}

}  // namespace

Res2Proof parse_res2(std::istream &in) {
  Res2Proof pi;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank || line[0] == 'c') continue;
    std::istringstream ss(line);
    std::size_t idx;
    std::string dnftok, jmark, tag;
    if (!(ss >> idx >> dnftok >> jmark >> tag) || jmark != "J")
      throw ParseError(lineno, "expected \"<idx> <dnf> J <justification>\"");
    if (idx != pi.length() + 1)
      throw ParseError(lineno, "lines must be numbered consecutively");
    Res2Step st;
    st.line = parse_dnf_token(dnftok, lineno);
    if (tag == "I") {
      st.kind = Res2Step::Kind::input;
      if (!(ss >> st.m)) throw ParseError(lineno, "expected input index");
    } else if (tag == "A") {
      st.kind = Res2Step::Kind::axiom;
      if (!(ss >> st.axiom_var)) throw ParseError(lineno, "expected variable");
    } else if (tag == "N") {
      st.kind = Res2Step::Kind::and_intro;
      std::int64_t a, b2;
      if (!(ss >> st.p1 >> st.p2 >> a >> b2))
        throw ParseError(lineno, "expected premises and literals");
      st.l1 = from_dimacs(a);
      st.l2 = from_dimacs(b2);
    } else if (tag == "C") {
      st.kind = Res2Step::Kind::cut;
      std::string tmark, ttok, umark;
      if (!(ss >> st.p1 >> st.p2 >> tmark >> ttok >> umark) || tmark != "T" ||
          umark != "U")
        throw ParseError(lineno, "expected \"C <p1> <p2> T <term> U <lits>\"");
      TwoDnf td = parse_dnf_token(ttok, lineno);
      if (td.terms().size() != 1)
        throw ParseError(lineno, "cut term must be a single term");
      st.cut_term = td.terms()[0];
      std::int64_t x;
      while (ss >> x) st.cut_negated.push_back(from_dimacs(x));
    } else if (tag == "W") {
      st.kind = Res2Step::Kind::weaken;
      if (!(ss >> st.u)) throw ParseError(lineno, "expected weakening source");
    } else {
      throw ParseError(lineno, "unknown justification tag " + tag);
    }
    pi.size += st.line.symbols();
    pi.steps.push_back(std::move(st));
  }
  return pi;
}

Res2Proof parse_res2(const std::string &text) {
  std::istringstream ss(text);
  return parse_res2(ss);
}

}  // namespace refstate
