#ifndef REFSTATE_CNF_HPP
#define REFSTATE_CNF_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace refstate {

// Variable ids are positive integers. 64-bit: encoded formulas over large
// grids exceed 2^31 variables long before anything is materialized.
using Var = std::int64_t;

// A literal x^b: b = 1 is the positive literal, b = 0 the negative one.
struct Lit {
  Var var = 0;
  int pol = 1;

  friend bool operator==(const Lit &a, const Lit &b) {
    return a.var == b.var && a.pol == b.pol;
  }
  friend bool operator!=(const Lit &a, const Lit &b) { return !(a == b); }
  friend bool operator<(const Lit &a, const Lit &b) {
    return a.var != b.var ? a.var < b.var : a.pol < b.pol;
  }
};

inline Lit pos(Var v) { return Lit{v, 1}; }
inline Lit neg(Var v) { return Lit{v, 0}; }
inline Lit negate(Lit l) { return Lit{l.var, 1 - l.pol}; }

inline std::int64_t to_dimacs(Lit l) { return l.pol ? l.var : -l.var; }
inline Lit from_dimacs(std::int64_t x) {
  return x > 0 ? Lit{x, 1} : Lit{-x, 0};
}

// A clause is a set of literals. Canonical form: sorted by (var, pol),
// duplicates removed. Tautological clauses are representable.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits);

  static Clause from_dimacs_lits(const std::vector<std::int64_t> &xs);

  const std::vector<Lit> &lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  bool contains_var(Var v) const;
  bool subset_of(const Clause &other) const;

  Clause with(Lit l) const;
  Clause without(Lit l) const;
  Clause without_var(Var v) const;

  friend bool operator==(const Clause &a, const Clause &b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator!=(const Clause &a, const Clause &b) {
    return !(a == b);
  }
  friend bool operator<(const Clause &a, const Clause &b) {
    return a.lits_ < b.lits_;
  }

 private:
  std::vector<Lit> lits_;
};

std::ostream &operator<<(std::ostream &os, const Clause &c);

// A CNF: clause sequence plus a declared variable count. The declared count
// is part of the value; formulas over a fixed layout keep stable headers
// even when variables are unused.
struct Cnf {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  Cnf() = default;
  Cnf(Var n, std::vector<Clause> cs) : num_vars(n), clauses(std::move(cs)) {}

  void add(Clause c) { clauses.push_back(std::move(c)); }
  std::size_t size() const { return clauses.size(); }
};

// Partial map from variables to {0,1}.
class PartialAssignment {
 public:
  PartialAssignment() = default;

  void set(Var v, int value);
  void unset(Var v);
  std::optional<int> get(Var v) const;
  bool defined(Var v) const { return map_.count(v) != 0; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  const std::map<Var, int> &entries() const { return map_; }

  // True when `this` and `other` agree on every shared variable.
  bool compatible_with(const PartialAssignment &other) const;
  // True when dom(base) is contained in dom(this) with equal values.
  bool extends(const PartialAssignment &base) const;

  // Union of the two maps; throws std::invalid_argument on conflict.
  static PartialAssignment merged(const PartialAssignment &a,
                                  const PartialAssignment &b);

  friend bool operator==(const PartialAssignment &a,
                         const PartialAssignment &b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<Var, int> map_;
};

enum class ClauseStatus { satisfied, falsified, undetermined };

bool is_tautological(const Clause &c);

bool can_resolve(const Clause &c1, const Clause &c2, Var v);

// Resolvent of c1 (containing x_v) and c2 (containing neg x_v) on v.
// Throws PivotMissing if the pivot literals are absent.
Clause resolve(const Clause &c1, const Clause &c2, Var v);

struct PivotMissing : std::runtime_error {
  explicit PivotMissing(const std::string &what) : std::runtime_error(what) {}
};

ClauseStatus eval_clause(const Clause &c, const PartialAssignment &alpha);

// Clause under restriction: satisfied clauses are signalled via the
// optional being empty; otherwise falsified literals are dropped.
std::optional<Clause> restrict_clause(const Clause &c,
                                      const PartialAssignment &sigma);

Cnf restrict_cnf(const Cnf &f, const PartialAssignment &sigma);

// DIMACS ------------------------------------------------------------------

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string &what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

Cnf parse_dimacs(std::istream &in);
Cnf parse_dimacs(const std::string &text);
Cnf parse_dimacs_file(const std::string &path);

void emit_dimacs(const Cnf &f, std::ostream &os,
                 const std::vector<std::string> &comments = {});
std::string emit_dimacs(const Cnf &f,
                        const std::vector<std::string> &comments = {});

// Set-semantics helpers (a CNF is a set of clauses; order only serves
// serialization).
std::set<Clause> clause_set(const Cnf &f);
bool equal_as_clause_sets(const Cnf &a, const Cnf &b);

}  // namespace refstate

#endif
