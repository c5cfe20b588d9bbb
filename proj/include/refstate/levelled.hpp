#ifndef REFSTATE_LEVELLED_HPP
#define REFSTATE_LEVELLED_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/layout.hpp"
#include "refstate/proof.hpp"

namespace refstate {

// A refutation of s levels of t clauses: an s x t grid where level-1 cells
// weaken input clauses, higher cells weaken resolvents of two cells from
// the level below, and the (s,t) cell is empty.
struct UpperJust {
  long long jl = 0;  // column of the premise holding the positive pivot literal
  long long jr = 0;  // column of the premise holding the negative one
  Var pivot = 0;
};

class LevelledRefutation {
 public:
  LevelledRefutation(long long s, long long t);

  long long s() const { return s_; }
  long long t() const { return t_; }

  Clause &cell(long long i, long long j);
  const Clause &cell(long long i, long long j) const;

  // C_{1,j} is a weakening of input clause level1_just(j).
  std::size_t &level1_just(long long j);
  std::size_t level1_just(long long j) const;

  UpperJust &upper_just(long long i, long long j);  // i >= 2
  const UpperJust &upper_just(long long i, long long j) const;

  friend bool operator==(const LevelledRefutation &a,
                         const LevelledRefutation &b);

 private:
  long long s_, t_;
  std::vector<Clause> cells_;
  std::vector<std::size_t> level1_;
  std::vector<UpperJust> upper_;
};

struct LevelledCheckResult {
  bool ok = true;
  long long i = 0, j = 0;
  std::string reason;

  static LevelledCheckResult good() { return {}; }
  static LevelledCheckResult bad(long long i, long long j, std::string why) {
    return {false, i, j, std::move(why)};
  }
};

std::ostream &operator<<(std::ostream &os, const LevelledCheckResult &r);

LevelledCheckResult check_levelled(const Cnf &f, const LevelledRefutation &L);

struct FatClause : std::runtime_error {
  explicit FatClause(const std::string &what) : std::runtime_error(what) {}
};
struct TautologicalStep : std::runtime_error {
  explicit TautologicalStep(const std::string &what)
      : std::runtime_error(what) {}
};

// The quadratic simulation: a refutation of height h and length len becomes
// h levels of 3*len clauses, keeping C_{i,3j} = C_j for i >= height(j).
// Column blocks replicate themselves as (C u {x}, C u {~x}, C) for the
// smallest variable x absent from C.
LevelledRefutation simulate(const Cnf &f, const ResolutionProof &pi);

struct TautologicalCell : std::runtime_error {
  explicit TautologicalCell(const std::string &what)
      : std::runtime_error(what) {}
};
struct NotSatisfying : std::runtime_error {
  Clause falsified;
  NotSatisfying(const std::string &what, Clause c)
      : std::runtime_error(what), falsified(std::move(c)) {}
};

// Total assignment over the REF^F_{s,t} variables describing L: D bits per
// cell contents, V/I/L/R one-hot per the justifications.
PartialAssignment encode_witness(const LevelledRefutation &L,
                                 const VarLayout &layout);

// Inverse: reads a model of encode_ref_F(f,s,t) back into a grid. Throws
// NotSatisfying when alpha fails some REF clause.
LevelledRefutation decode_witness(const PartialAssignment &alpha,
                                  const VarLayout &layout, const Cnf &f);

// Text format: header "levelled <s> <t>", then one cell per line,
//   "<i> <j> <lits...> 0 I <m>"           (level 1)
//   "<i> <j> <lits...> 0 R <j'> <j''> <pivot>"  (levels 2..s)
void emit_levelled(const LevelledRefutation &L, std::ostream &os);
std::string emit_levelled(const LevelledRefutation &L);
LevelledRefutation parse_levelled(std::istream &in);
LevelledRefutation parse_levelled(const std::string &text);

}  // namespace refstate

#endif
