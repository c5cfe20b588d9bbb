#ifndef REFSTATE_RES2_HPP
#define REFSTATE_RES2_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/layout.hpp"

namespace refstate {

// A term: one or two literals, conjunctively. 1-literal terms are
// identified with clause literals.
class Term {
 public:
  Term() = default;
  explicit Term(Lit a) : lits_{a} {}
  Term(Lit a, Lit b);

  const std::vector<Lit> &lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool single() const { return lits_.size() == 1; }
  bool contains(Lit l) const;

  friend bool operator==(const Term &a, const Term &b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator<(const Term &a, const Term &b) {
    return a.lits_ < b.lits_;
  }

 private:
  std::vector<Lit> lits_;
};

// A 2-DNF: set of terms. The empty DNF is the empty clause.
class TwoDnf {
 public:
  TwoDnf() = default;
  explicit TwoDnf(std::vector<Term> terms);
  static TwoDnf from_clause(const Clause &c);

  const std::vector<Term> &terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool contains(const Term &t) const;
  bool subset_of(const TwoDnf &other) const;

  TwoDnf with(const Term &t) const;
  TwoDnf without(const Term &t) const;
  static TwoDnf merged(const TwoDnf &a, const TwoDnf &b);

  // Literal occurrences; the unit a derivation's size is measured in.
  std::size_t symbols() const;

  friend bool operator==(const TwoDnf &a, const TwoDnf &b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const TwoDnf &a, const TwoDnf &b) {
    return !(a == b);
  }

 private:
  std::vector<Term> terms_;
};

std::ostream &operator<<(std::ostream &os, const Term &t);
std::ostream &operator<<(std::ostream &os, const TwoDnf &d);

// One Res(2) inference. The cut justification names the term removed from
// the first premise and the subset of its literals whose negations are
// consumed from the second premise. The textbook cut negates every literal
// of the term; the explicit refutation of the reflection formula also cuts
// a 2-term against a line carrying only one of the two negated literals
// (one weakening short of the full form, and sound as stated), so the
// checker takes the designated non-empty subset.
struct Res2Step {
  enum class Kind { input, axiom, and_intro, cut, weaken };

  TwoDnf line;
  Kind kind = Kind::input;
  std::size_t m = 0;            // input clause index, 1-based
  Var axiom_var = 0;            // axiom: x or ~x
  std::size_t p1 = 0, p2 = 0;   // premises, 1-based step indices
  Lit l1, l2;                   // and_intro: l1 from p1, l2 from p2
  Term cut_term;                // cut: term removed from p1
  std::vector<Lit> cut_negated; // cut: literals negated in p2
  std::size_t u = 0;            // weaken source
};

struct Res2Proof {
  std::vector<Res2Step> steps;
  std::size_t size = 0;  // total literal occurrences across lines

  std::size_t length() const { return steps.size(); }
  const TwoDnf &line(std::size_t idx1) const { return steps[idx1 - 1].line; }
};

struct Res2CheckResult {
  bool ok = true;
  std::size_t step = 0;
  std::string reason;

  static Res2CheckResult good() { return {}; }
  static Res2CheckResult bad(std::size_t step, std::string why) {
    return {false, step, std::move(why)};
  }
};

std::ostream &operator<<(std::ostream &os, const Res2CheckResult &r);

Res2CheckResult check_res2(const Cnf &f, const Res2Proof &pi,
                           bool expect_refutation = true);

// Size of the sub-derivations, for the growth accounting.
struct Res2BuildStats {
  std::size_t base_symbols = 0;
  std::size_t induction_symbols = 0;
  std::size_t finish_symbols = 0;
  std::size_t length = 0;
};

// The explicit Res(2) refutation of SAT^{n,r} /\ REF^{n,r}_{s,t}: derives
// D_{i,j} = OR_{l,b} (D(i,j,l,b) & T(l)^b) level by level, then cuts
// D_{s,t} down with the empty-clause family.
Res2Proof build_reflection_refutation(long long n, long long r, long long s,
                                      long long t, const VarLayout &layout,
                                      Res2BuildStats *stats = nullptr);

// Text format: "<idx> <term;term;...> J <justification>", terms "&"-joined,
// "_" for the empty line.
void emit_res2(const Res2Proof &pi, std::ostream &os);
std::string emit_res2(const Res2Proof &pi);
Res2Proof parse_res2(std::istream &in);
Res2Proof parse_res2(const std::string &text);

}  // namespace refstate

#endif
