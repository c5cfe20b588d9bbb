#include "refstate/levelled.hpp"

#include "refstate/encoders.hpp"

#include <memory>
#include <ostream>
#include <sstream>

namespace refstate {

LevelledRefutation::LevelledRefutation(long long s, long long t)
    : s_(s), t_(t) {
  if (s < 1 || t < 1) throw std::invalid_argument("grid needs s, t >= 1");
  cells_.resize(static_cast<std::size_t>(s * t));
  level1_.assign(static_cast<std::size_t>(t), 0);
  upper_.resize(s >= 2 ? static_cast<std::size_t>((s - 1) * t) : 0);
}

Clause &LevelledRefutation::cell(long long i, long long j) {
  return cells_[static_cast<std::size_t>((i - 1) * t_ + (j - 1))];
}
const Clause &LevelledRefutation::cell(long long i, long long j) const {
  return cells_[static_cast<std::size_t>((i - 1) * t_ + (j - 1))];
}

std::size_t &LevelledRefutation::level1_just(long long j) {
  return level1_[static_cast<std::size_t>(j - 1)];
}
std::size_t LevelledRefutation::level1_just(long long j) const {
  return level1_[static_cast<std::size_t>(j - 1)];
}

UpperJust &LevelledRefutation::upper_just(long long i, long long j) {
  return upper_[static_cast<std::size_t>((i - 2) * t_ + (j - 1))];
}
const UpperJust &LevelledRefutation::upper_just(long long i, long long j) const {
  return upper_[static_cast<std::size_t>((i - 2) * t_ + (j - 1))];
}

bool operator==(const LevelledRefutation &a, const LevelledRefutation &b) {
  if (a.s_ != b.s_ || a.t_ != b.t_) return false;
  if (a.cells_ != b.cells_ || a.level1_ != b.level1_) return false;
  for (std::size_t k = 0; k < a.upper_.size(); ++k) {
    const UpperJust &x = a.upper_[k], &y = b.upper_[k];
    if (x.jl != y.jl || x.jr != y.jr || x.pivot != y.pivot) return false;
  }
  return true;
}

std::ostream &operator<<(std::ostream &os, const LevelledCheckResult &r) {
  if (r.ok) return os << "ok";
  return os << "violation at cell (" << r.i << "," << r.j << "): " << r.reason;
}

LevelledCheckResult check_levelled(const Cnf &f, const LevelledRefutation &L) {
  const long long s = L.s(), t = L.t();
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= t; ++j)
      for (const Lit &l : L.cell(i, j).lits())
        if (l.var > f.num_vars)
          return LevelledCheckResult::bad(i, j,
                                          "literal outside formula variables");

  for (long long j = 1; j <= t; ++j) {
    std::size_t m = L.level1_just(j);
    if (m < 1 || m > f.clauses.size())
      return LevelledCheckResult::bad(1, j, "input index out of range");
    if (!f.clauses[m - 1].subset_of(L.cell(1, j)))
      return LevelledCheckResult::bad(
          1, j, "cell is not a weakening of input " + std::to_string(m));
  }

  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      const UpperJust &uj = L.upper_just(i, j);
      if (uj.jl < 1 || uj.jl > t || uj.jr < 1 || uj.jr > t)
        return LevelledCheckResult::bad(i, j, "premise column out of range");
      if (uj.pivot < 1 || uj.pivot > f.num_vars)
        return LevelledCheckResult::bad(i, j, "pivot out of range");
      const Clause &left = L.cell(i - 1, uj.jl);
      const Clause &right = L.cell(i - 1, uj.jr);
      if (!can_resolve(left, right, uj.pivot))
        return LevelledCheckResult::bad(
            i, j, "pivot " + std::to_string(uj.pivot) + " missing from premises");
      if (!resolve(left, right, uj.pivot).subset_of(L.cell(i, j)))
        return LevelledCheckResult::bad(i, j,
                                        "cell is not a weakening of resolvent");
    }

  if (!L.cell(s, t).empty())
    return LevelledCheckResult::bad(s, t, "C_{s,t} nonempty");
  return LevelledCheckResult::good();
}

namespace {

// Smallest variable with no literal in c; throws FatClause when c mentions
// every variable.
Var fresh_var(const Clause &c, Var num_vars) {
  for (Var v = 1; v <= num_vars; ++v)
    if (!c.contains_var(v)) return v;
  throw FatClause("clause mentions all " + std::to_string(num_vars) +
                  " variables; no fresh variable for the replication pattern");
}

}  // namespace

LevelledRefutation simulate(const Cnf &f, const ResolutionProof &pi) {
  const Var n = f.num_vars;
  for (const Clause &c : f.clauses)
    if (static_cast<Var>(c.size()) > n - 1)
      throw std::invalid_argument("simulate needs an (n-1)-CNF");
  {
    CheckResult chk = check_resolution(f, pi, true);
    if (!chk.ok) {
      std::ostringstream ss;
      ss << "simulate needs a valid refutation: " << chk;
      throw std::invalid_argument(ss.str());
    }
  }
  for (std::size_t u = 1; u <= pi.length(); ++u)
    if (is_tautological(pi.clause(u)))
      throw TautologicalStep("step " + std::to_string(u) + " is tautological");

  const std::vector<std::size_t> hs = step_heights(pi);
  const long long h = static_cast<long long>(height(pi));
  const long long len = static_cast<long long>(pi.length());
  LevelledRefutation L(h, 3 * len);

  // A weakening chain bottoms out at the input or resolvent step that
  // justifies the whole chain; heights agree along the chain.
  auto base_of = [&](std::size_t u) {
    while (pi.steps[u - 1].kind == ResStep::Kind::step_weakening)
      u = pi.steps[u - 1].u;
    return u;
  };

  const Clause &c_first = pi.clause(1);
  const std::size_t first_base = base_of(1);
  if (pi.steps[first_base - 1].kind != ResStep::Kind::input_weakening)
    throw std::invalid_argument("first step must weaken an input clause");
  const std::size_t pad_m = pi.steps[first_base - 1].m;
  const Var pad_x = fresh_var(c_first, n);

  for (long long j = 1; j <= len; ++j) {
    const Clause &cj = pi.clause(static_cast<std::size_t>(j));
    const Var x = fresh_var(cj, n);
    const Clause cj_pos = cj.with(pos(x));
    const Clause cj_neg = cj.with(neg(x));
    const long long hj = static_cast<long long>(hs[static_cast<std::size_t>(j - 1)]);
    const std::size_t base = base_of(static_cast<std::size_t>(j));
    const ResStep &base_step = pi.steps[base - 1];

    for (long long i = 1; i <= h; ++i) {
      const bool in_pattern = i >= hj;
      const Clause &a = in_pattern ? cj_pos : c_first.with(pos(pad_x));
      const Clause &b = in_pattern ? cj_neg : c_first.with(neg(pad_x));
      const Clause &c = in_pattern ? cj : c_first;
      L.cell(i, 3 * j - 2) = a;
      L.cell(i, 3 * j - 1) = b;
      L.cell(i, 3 * j) = c;
      for (long long col = 3 * j - 2; col <= 3 * j; ++col) {
        if (i == 1) {
          L.level1_just(col) =
              in_pattern ? base_step.m : pad_m;  // hj == 1 only for inputs
        } else if (i == hj &&
                   base_step.kind == ResStep::Kind::resolvent) {
          L.upper_just(i, col) =
              UpperJust{3 * static_cast<long long>(base_step.v),
                        3 * static_cast<long long>(base_step.w),
                        base_step.pivot};
        } else {
          // Self-replication: resolve the first two columns of this block
          // one level down on the block's fresh variable.
          L.upper_just(i, col) =
              UpperJust{3 * j - 2, 3 * j - 1, in_pattern ? x : pad_x};
        }
      }
    }
  }
  return L;
}

PartialAssignment encode_witness(const LevelledRefutation &L,
                                 const VarLayout &layout) {
  const long long s = L.s(), t = L.t(), n = layout.n(), r = layout.r();
  if (layout.s() != s || layout.t() != t)
    throw std::invalid_argument("layout grid does not match refutation");
  PartialAssignment alpha;
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      const Clause &c = L.cell(i, j);
      if (is_tautological(c))
        throw TautologicalCell("cell (" + std::to_string(i) + "," +
                               std::to_string(j) + ") is tautological");
      for (long long l = 1; l <= n; ++l)
        for (long long b = 0; b <= 1; ++b)
          alpha.set(layout.var_d(i, j, l, b),
                    c.contains(Lit{l, static_cast<int>(b)}) ? 1 : 0);
    }
  for (long long j = 1; j <= t; ++j) {
    const std::size_t m = L.level1_just(j);
    for (long long mm = 1; mm <= r; ++mm)
      alpha.set(layout.var_i(j, mm),
                mm == static_cast<long long>(m) ? 1 : 0);
  }
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      const UpperJust &uj = L.upper_just(i, j);
      for (long long l = 1; l <= n; ++l)
        alpha.set(layout.var_v(i, j, l), l == uj.pivot ? 1 : 0);
      for (long long jp = 1; jp <= t; ++jp) {
        alpha.set(layout.var_l(i, j, jp), jp == uj.jl ? 1 : 0);
        alpha.set(layout.var_r(i, j, jp), jp == uj.jr ? 1 : 0);
      }
    }
  return alpha;
}

LevelledRefutation decode_witness(const PartialAssignment &alpha,
                                  const VarLayout &layout, const Cnf &f) {
  const long long s = layout.s(), t = layout.t(), n = layout.n(),
                  r = layout.r();
  // The decode contract is "alpha is a model"; find the first counterexample
  // otherwise. One-hot reads below are then justified by the dom and func
  // families.
  {
    CnfCollector sink;
    encode_ref_F(f, s, t, layout, sink);
    Cnf ref = sink.take(layout.num_vars());
    for (const Clause &c : ref.clauses)
      if (eval_clause(c, alpha) != ClauseStatus::satisfied) {
        std::ostringstream ss;
        ss << "assignment does not satisfy REF clause " << c;
        throw NotSatisfying(ss.str(), c);
      }
  }

  auto one_hot = [&](auto var_of, long long range) -> long long {
    for (long long k = 1; k <= range; ++k)
      if (alpha.get(var_of(k)).value_or(0) == 1) return k;
    return 0;  // unreachable for models
  };

  LevelledRefutation L(s, t);
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      std::vector<Lit> lits;
      for (long long l = 1; l <= n; ++l)
        for (long long b = 0; b <= 1; ++b)
          if (alpha.get(layout.var_d(i, j, l, b)).value_or(0) == 1)
            lits.push_back(Lit{l, static_cast<int>(b)});
      L.cell(i, j) = Clause(std::move(lits));
    }
  for (long long j = 1; j <= t; ++j)
    L.level1_just(j) = static_cast<std::size_t>(
        one_hot([&](long long m) { return layout.var_i(j, m); }, r));
  for (long long i = 2; i <= s; ++i)
    for (long long j = 1; j <= t; ++j) {
      UpperJust uj;
      uj.pivot = one_hot([&](long long l) { return layout.var_v(i, j, l); }, n);
      uj.jl = one_hot([&](long long jp) { return layout.var_l(i, j, jp); }, t);
      uj.jr = one_hot([&](long long jp) { return layout.var_r(i, j, jp); }, t);
      L.upper_just(i, j) = uj;
    }
  return L;
}

void emit_levelled(const LevelledRefutation &L, std::ostream &os) {
  os << "levelled " << L.s() << " " << L.t() << "\n";
  for (long long i = 1; i <= L.s(); ++i)
    for (long long j = 1; j <= L.t(); ++j) {
      os << i << " " << j << " " << L.cell(i, j) << " ";
      if (i == 1) {
        os << "I " << L.level1_just(j);
      } else {
        const UpperJust &uj = L.upper_just(i, j);
        os << "R " << uj.jl << " " << uj.jr << " " << uj.pivot;
      }
      os << "\n";
    }
}

std::string emit_levelled(const LevelledRefutation &L) {
  std::ostringstream ss;
  emit_levelled(L, ss);
  return ss.str();
}

LevelledRefutation parse_levelled(std::istream &in) {
  std::string line;
  int lineno = 0;
  long long s = 0, t = 0;
  bool have_header = false;
  std::unique_ptr<LevelledRefutation> L;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank || line[0] == 'c') continue;
    std::istringstream ss(line);
    if (!have_header) {
      std::string kw;
      if (!(ss >> kw >> s >> t) || kw != "levelled")
        throw ParseError(lineno, "expected header \"levelled <s> <t>\"");
      L = std::make_unique<LevelledRefutation>(s, t);
      have_header = true;
      continue;
    }
    long long i, j;
    if (!(ss >> i >> j)) throw ParseError(lineno, "expected cell indices");
    if (i < 1 || i > s || j < 1 || j > t)
      throw ParseError(lineno, "cell index out of range");
    std::vector<std::int64_t> lits;
    std::int64_t x;
    while (ss >> x && x != 0) lits.push_back(x);
    std::string tag;
    if (!(ss >> tag)) throw ParseError(lineno, "missing justification");
    L->cell(i, j) = Clause::from_dimacs_lits(lits);
    if (tag == "I") {
      if (i != 1) throw ParseError(lineno, "input justification above level 1");
      std::size_t m;
      if (!(ss >> m)) throw ParseError(lineno, "expected input index");
      L->level1_just(j) = m;
    } else if (tag == "R") {
      if (i == 1) throw ParseError(lineno, "resolvent justification on level 1");
      UpperJust uj;
      if (!(ss >> uj.jl >> uj.jr >> uj.pivot))
        throw ParseError(lineno, "expected premise columns and pivot");
      L->upper_just(i, j) = uj;
    } else {
      throw ParseError(lineno, "unknown justification tag " + tag);
    }
  }
  if (!L) throw ParseError(lineno, "missing levelled header");
  return *L;
}

LevelledRefutation parse_levelled(const std::string &text) {
  std::istringstream ss(text);
  return parse_levelled(ss);
}

}  // namespace refstate
