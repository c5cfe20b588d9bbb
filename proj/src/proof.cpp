#include "refstate/proof.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace refstate {

ResStep ResStep::input(Clause c, std::size_t m) {
  ResStep s;
  s.clause = std::move(c);
  s.kind = Kind::input_weakening;
  s.m = m;
  return s;
}

ResStep ResStep::res(Clause c, std::size_t v, std::size_t w, Var pivot) {
  ResStep s;
  s.clause = std::move(c);
  s.kind = Kind::resolvent;
  s.v = v;
  s.w = w;
  s.pivot = pivot;
  return s;
}

ResStep ResStep::weaken(Clause c, std::size_t u) {
  ResStep s;
  s.clause = std::move(c);
  s.kind = Kind::step_weakening;
  s.u = u;
  return s;
}

std::ostream &operator<<(std::ostream &os, const CheckResult &r) {
  if (r.ok) return os << "ok";
  return os << "violation at step " << r.step << ": " << r.reason;
}

CheckResult check_resolution(const Cnf &f, const ResolutionProof &pi,
                             bool expect_refutation) {
  const std::size_t len = pi.length();
  for (std::size_t u = 1; u <= len; ++u) {
    const ResStep &st = pi.steps[u - 1];
    for (const Lit &l : st.clause.lits())
      if (l.var > f.num_vars)
        return CheckResult::bad(u, "literal outside formula variables");
    switch (st.kind) {
      case ResStep::Kind::input_weakening: {
        if (st.m < 1 || st.m > f.clauses.size())
          return CheckResult::bad(u, "input index out of range");
        if (!f.clauses[st.m - 1].subset_of(st.clause))
          return CheckResult::bad(u, "clause is not a weakening of input " +
                                         std::to_string(st.m));
        break;
      }
      case ResStep::Kind::resolvent: {
        if (st.v < 1 || st.v >= u || st.w < 1 || st.w >= u)
          return CheckResult::bad(u, "premise index out of range");
        const Clause &cv = pi.clause(st.v);
        const Clause &cw = pi.clause(st.w);
        if (!can_resolve(cv, cw, st.pivot))
          return CheckResult::bad(u, "pivot " + std::to_string(st.pivot) +
                                         " missing from premises");
        if (!resolve(cv, cw, st.pivot).subset_of(st.clause))
          return CheckResult::bad(u, "clause is not a weakening of resolvent");
        break;
      }
      case ResStep::Kind::step_weakening: {
        if (st.u < 1 || st.u >= u)
          return CheckResult::bad(u, "weakening source out of range");
        if (!pi.clause(st.u).subset_of(st.clause))
          return CheckResult::bad(u, "clause is not a weakening of step " +
                                         std::to_string(st.u));
        break;
      }
    }
  }
  if (expect_refutation) {
    if (len == 0) return CheckResult::bad(0, "empty proof");
    if (!pi.steps.back().clause.empty())
      return CheckResult::bad(len, "last clause nonempty");
  }
  return CheckResult::good();
}

std::vector<std::size_t> step_heights(const ResolutionProof &pi) {
  std::vector<std::size_t> h(pi.length() + 1, 0);
  for (std::size_t u = 1; u <= pi.length(); ++u) {
    const ResStep &st = pi.steps[u - 1];
    switch (st.kind) {
      case ResStep::Kind::input_weakening:
        h[u] = 1;
        break;
      case ResStep::Kind::resolvent:
        h[u] = 1 + std::max(h[st.v], h[st.w]);
        break;
      case ResStep::Kind::step_weakening:
        h[u] = h[st.u];
        break;
    }
  }
  h.erase(h.begin());
  return h;
}

std::size_t height(const ResolutionProof &pi) {
  std::size_t best = 0;
  for (std::size_t x : step_heights(pi)) best = std::max(best, x);
  return best;
}

namespace {

// Shared justification-repair pass for restriction and substitution.
// `drop_taut` removes steps whose image became tautological (substitution
// can merge distinct variables into one).
ResolutionProof transform_proof(const Cnf &f, const ResolutionProof &pi,
                                const Substitution &subst, bool drop_taut,
                                Var num_vars_after) {
  Cnf f_img = apply_substitution(subst, f, num_vars_after);
  if (drop_taut) f_img = drop_tautologies(f_img);

  ResolutionProof out;
  std::vector<std::size_t> new_index(pi.length() + 1, 0);

  for (std::size_t u = 1; u <= pi.length(); ++u) {
    const ResStep &st = pi.steps[u - 1];
    auto img = apply_substitution(subst, st.clause);
    if (!img) continue;  // satisfied
    if (drop_taut && is_tautological(*img)) continue;

    bool justified = false;
    ResStep repaired;

    // (a) weakening of a clause of the transformed CNF
    for (std::size_t m2 = 1; m2 <= f_img.clauses.size() && !justified; ++m2) {
      if (f_img.clauses[m2 - 1].subset_of(*img)) {
        repaired = ResStep::input(*img, m2);
        justified = true;
      }
    }

    // (b) the original resolvent, when the pivot survives
    if (!justified && st.kind == ResStep::Kind::resolvent) {
      auto target = subst.get(st.pivot);
      Var new_pivot = 0;
      std::size_t pv = st.v, pw = st.w;
      bool pivot_alive = false;
      if (!target) {
        new_pivot = st.pivot;
        pivot_alive = true;
      } else if (std::holds_alternative<Lit>(*target)) {
        Lit t = std::get<Lit>(*target);
        new_pivot = t.var;
        if (t.pol == 0) std::swap(pv, pw);  // polarity flip swaps premise roles
        pivot_alive = true;
      }
      if (pivot_alive && new_index[pv] != 0 && new_index[pw] != 0) {
        const Clause &iv = out.clause(new_index[pv]);
        const Clause &iw = out.clause(new_index[pw]);
        if (can_resolve(iv, iw, new_pivot) &&
            resolve(iv, iw, new_pivot).subset_of(*img)) {
          repaired = ResStep::res(*img, new_index[pv], new_index[pw], new_pivot);
          justified = true;
        }
      }
    }

    // (c) weakening of a surviving referenced step
    if (!justified) {
      std::vector<std::size_t> refs;
      if (st.kind == ResStep::Kind::resolvent) refs = {st.v, st.w};
      if (st.kind == ResStep::Kind::step_weakening) refs = {st.u};
      for (std::size_t ref : refs) {
        if (new_index[ref] != 0 &&
            out.clause(new_index[ref]).subset_of(*img)) {
          repaired = ResStep::weaken(*img, new_index[ref]);
          justified = true;
          break;
        }
      }
    }

    if (!justified)
      throw RepairFailure("no justification for transformed step " +
                          std::to_string(u));
    out.steps.push_back(std::move(repaired));
    new_index[u] = out.length();
  }
  return out;
}

Substitution to_substitution(const PartialAssignment &sigma) {
  Substitution s;
  for (const auto &[v, val] : sigma.entries()) s.set_constant(v, val);
  return s;
}

}  // namespace

ResolutionProof restrict_proof(const Cnf &f, const ResolutionProof &pi,
                               const PartialAssignment &sigma) {
  return transform_proof(f, pi, to_substitution(sigma), false, f.num_vars);
}

ResolutionProof substitute_proof(const Cnf &f, const ResolutionProof &pi,
                                 const Substitution &subst) {
  Var max_var = 0;
  for (const auto &[v, t] : subst.entries())
    if (std::holds_alternative<Lit>(t))
      max_var = std::max(max_var, std::get<Lit>(t).var);
  for (const Clause &c : f.clauses)
    for (const Lit &l : c.lits())
      if (!subst.defined(l.var)) max_var = std::max(max_var, l.var);
  return transform_proof(f, pi, subst, true, max_var);
}

void emit_proof(const ResolutionProof &pi, std::ostream &os) {
  for (std::size_t u = 1; u <= pi.length(); ++u) {
    const ResStep &st = pi.steps[u - 1];
    os << u << " " << st.clause << " ";
    switch (st.kind) {
      case ResStep::Kind::input_weakening:
        os << "I " << st.m;
        break;
      case ResStep::Kind::resolvent:
        os << "R " << st.v << " " << st.w << " " << st.pivot;
        break;
      case ResStep::Kind::step_weakening:
        os << "W " << st.u;
        break;
    }
    os << "\n";
  }
}

std::string emit_proof(const ResolutionProof &pi) {
  std::ostringstream ss;
  emit_proof(pi, ss);
  return ss.str();
}

ResolutionProof parse_proof(std::istream &in) {
  ResolutionProof pi;
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
    if (!(ss >> idx)) throw ParseError(lineno, "expected step index");
    if (idx != pi.length() + 1)
      throw ParseError(lineno, "steps must be numbered consecutively");
    std::vector<std::int64_t> lits;
    std::int64_t x;
    while (ss >> x && x != 0) lits.push_back(x);
    if (x != 0) throw ParseError(lineno, "clause not 0-terminated");
    std::string tag;
    if (!(ss >> tag)) throw ParseError(lineno, "missing justification");
    Clause c = Clause::from_dimacs_lits(lits);
    if (tag == "I") {
      std::size_t m;
      if (!(ss >> m)) throw ParseError(lineno, "expected input index");
      pi.steps.push_back(ResStep::input(std::move(c), m));
    } else if (tag == "R") {
      std::size_t v, w;
      Var pivot;
      if (!(ss >> v >> w >> pivot))
        throw ParseError(lineno, "expected premises and pivot");
      pi.steps.push_back(ResStep::res(std::move(c), v, w, pivot));
    } else if (tag == "W") {
      std::size_t u;
      if (!(ss >> u)) throw ParseError(lineno, "expected weakening source");
      pi.steps.push_back(ResStep::weaken(std::move(c), u));
    } else {
      throw ParseError(lineno, "unknown justification tag " + tag);
    }
  }
  return pi;
}

ResolutionProof parse_proof(const std::string &text) {
  std::istringstream ss(text);
  return parse_proof(ss);
}

}  // namespace refstate
