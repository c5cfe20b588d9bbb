#include "refstate/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

namespace refstate {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  for (const Lit &l : lits_) {
    if (l.var < 1) throw std::invalid_argument("literal variable must be >= 1");
    if (l.pol != 0 && l.pol != 1)
      throw std::invalid_argument("literal polarity must be 0 or 1");
  }
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause::Clause(std::initializer_list<Lit> lits)
    : Clause(std::vector<Lit>(lits)) {}

Clause Clause::from_dimacs_lits(const std::vector<std::int64_t> &xs) {
  std::vector<Lit> lits;
  lits.reserve(xs.size());
  for (std::int64_t x : xs) lits.push_back(from_dimacs(x));
  return Clause(std::move(lits));
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::contains_var(Var v) const {
  return contains(pos(v)) || contains(neg(v));
}

bool Clause::subset_of(const Clause &other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(),
                       lits_.end());
}

Clause Clause::with(Lit l) const {
  std::vector<Lit> out = lits_;
  out.push_back(l);
  return Clause(std::move(out));
}

Clause Clause::without(Lit l) const {
  std::vector<Lit> out;
  out.reserve(lits_.size());
  for (const Lit &x : lits_)
    if (x != l) out.push_back(x);
  return Clause(std::move(out));
}

Clause Clause::without_var(Var v) const {
  std::vector<Lit> out;
  out.reserve(lits_.size());
  for (const Lit &x : lits_)
    if (x.var != v) out.push_back(x);
  return Clause(std::move(out));
}

std::ostream &operator<<(std::ostream &os, const Clause &c) {
  bool first = true;
  for (const Lit &l : c.lits()) {
    if (!first) os << " ";
    os << to_dimacs(l);
    first = false;
  }
  os << (first ? "0" : " 0");
  return os;
}

void PartialAssignment::set(Var v, int value) {
  if (value != 0 && value != 1)
    throw std::invalid_argument("assignment value must be 0 or 1");
  map_[v] = value;
}

void PartialAssignment::unset(Var v) { map_.erase(v); }

std::optional<int> PartialAssignment::get(Var v) const {
  auto it = map_.find(v);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool PartialAssignment::compatible_with(const PartialAssignment &other) const {
  const auto &small = size() <= other.size() ? *this : other;
  const auto &big = size() <= other.size() ? other : *this;
  for (const auto &[v, val] : small.map_) {
    auto got = big.get(v);
    if (got && *got != val) return false;
  }
  return true;
}

bool PartialAssignment::extends(const PartialAssignment &base) const {
  for (const auto &[v, val] : base.map_) {
    auto got = get(v);
    if (!got || *got != val) return false;
  }
  return true;
}

PartialAssignment PartialAssignment::merged(const PartialAssignment &a,
                                            const PartialAssignment &b) {
  if (!a.compatible_with(b))
    throw std::invalid_argument("merging incompatible assignments");
  PartialAssignment out = a;
  for (const auto &[v, val] : b.map_) out.set(v, val);
  return out;
}

bool is_tautological(const Clause &c) {
  const auto &ls = c.lits();
  for (std::size_t k = 1; k < ls.size(); ++k)
    if (ls[k].var == ls[k - 1].var) return true;
  return false;
}

bool can_resolve(const Clause &c1, const Clause &c2, Var v) {
  return c1.contains(pos(v)) && c2.contains(neg(v));
}

Clause resolve(const Clause &c1, const Clause &c2, Var v) {
  if (!can_resolve(c1, c2, v))
    throw PivotMissing("pivot " + std::to_string(v) +
                       " not present with required polarities");
  std::vector<Lit> out;
  out.reserve(c1.size() + c2.size());
  for (const Lit &l : c1.lits())
    if (l != pos(v)) out.push_back(l);
  for (const Lit &l : c2.lits())
    if (l != neg(v)) out.push_back(l);
  return Clause(std::move(out));
}

ClauseStatus eval_clause(const Clause &c, const PartialAssignment &alpha) {
  bool all_false = true;
  for (const Lit &l : c.lits()) {
    auto val = alpha.get(l.var);
    if (!val) {
      all_false = false;
      continue;
    }
    if (*val == l.pol) return ClauseStatus::satisfied;
  }
  return all_false ? ClauseStatus::falsified : ClauseStatus::undetermined;
}

std::optional<Clause> restrict_clause(const Clause &c,
                                      const PartialAssignment &sigma) {
  std::vector<Lit> out;
  out.reserve(c.size());
  for (const Lit &l : c.lits()) {
    auto val = sigma.get(l.var);
    if (!val) {
      out.push_back(l);
    } else if (*val == l.pol) {
      return std::nullopt;  // satisfied
    }
    // falsified literal: dropped
  }
  return Clause(std::move(out));
}

Cnf restrict_cnf(const Cnf &f, const PartialAssignment &sigma) {
  Cnf out;
  out.num_vars = f.num_vars;
  for (const Clause &c : f.clauses) {
    auto r = restrict_clause(c, sigma);
    if (r) out.add(std::move(*r));
  }
  return out;
}

namespace {

bool blank_or_comment(const std::string &s) {
  for (char ch : s) {
    if (ch == 'c') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Cnf parse_dimacs(std::istream &in) {
  std::string line;
  int lineno = 0;
  Var num_vars = -1;
  std::int64_t num_clauses = -1;
  Cnf out;
  std::vector<std::int64_t> cur;
  bool in_clause = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (num_vars < 0) {
      if (blank_or_comment(line)) continue;
      std::istringstream ss(line);
      std::string p, kind;
      if (!(ss >> p >> kind >> num_vars >> num_clauses) || p != "p" ||
          kind != "cnf" || num_vars < 0 || num_clauses < 0)
        throw ParseError(lineno, "expected header \"p cnf <vars> <clauses>\"");
      continue;
    }
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::int64_t x;
    while (ss >> x) {
      if (x == 0) {
        out.add(Clause::from_dimacs_lits(cur));
        cur.clear();
        in_clause = false;
      } else {
        if (std::llabs(x) > num_vars)
          throw ParseError(lineno, "literal " + std::to_string(x) +
                                       " exceeds declared variable count");
        cur.push_back(x);
        in_clause = true;
      }
    }
    if (!ss.eof()) throw ParseError(lineno, "unexpected token");
  }
  if (num_vars < 0) throw ParseError(lineno, "missing DIMACS header");
  if (in_clause) throw ParseError(lineno, "unterminated clause at end of file");
  if (static_cast<std::int64_t>(out.size()) != num_clauses)
    throw ParseError(lineno, "clause count mismatch: header declares " +
                                 std::to_string(num_clauses) + ", found " +
                                 std::to_string(out.size()));
  out.num_vars = num_vars;
  return out;
}

Cnf parse_dimacs(const std::string &text) {
  std::istringstream ss(text);
  return parse_dimacs(ss);
}

Cnf parse_dimacs_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void emit_dimacs(const Cnf &f, std::ostream &os,
                 const std::vector<std::string> &comments) {
  for (const std::string &c : comments) os << "c " << c << "\n";
  os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const Clause &c : f.clauses) os << c << "\n";
}

std::string emit_dimacs(const Cnf &f, const std::vector<std::string> &comments) {
  std::ostringstream ss;
  emit_dimacs(f, ss, comments);
  return ss.str();
}

std::set<Clause> clause_set(const Cnf &f) {
  return std::set<Clause>(f.clauses.begin(), f.clauses.end());
}

bool equal_as_clause_sets(const Cnf &a, const Cnf &b) {
  return clause_set(a) == clause_set(b);
}

}  // namespace refstate
