#ifndef REFSTATE_ENCODERS_HPP
#define REFSTATE_ENCODERS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/layout.hpp"
#include "refstate/subst.hpp"

namespace refstate {

struct FamilyCount {
  std::string name;
  long long count = 0;
};

// Generators push clauses here; generation never has to materialize a
// formula, so REF at large t can stream straight to disk.
class ClauseSink {
 public:
  virtual ~ClauseSink() = default;

  void begin_family(const std::string &name) { manifest_.push_back({name, 0}); }
  void add(const Clause &c) {
    if (!manifest_.empty()) ++manifest_.back().count;
    ++total_;
    on_clause(c);
  }
  const std::vector<FamilyCount> &manifest() const { return manifest_; }
  long long total() const { return total_; }

 protected:
  virtual void on_clause(const Clause &c) = 0;

 private:
  std::vector<FamilyCount> manifest_;
  long long total_ = 0;
};

class CnfCollector : public ClauseSink {
 public:
  Cnf take(Var num_vars) {
    cnf_.num_vars = num_vars;
    return std::move(cnf_);
  }

 protected:
  void on_clause(const Clause &c) override { cnf_.add(c); }

 private:
  Cnf cnf_;
};

class CountingSink : public ClauseSink {
 protected:
  void on_clause(const Clause &) override {}
};

class DimacsClauseWriter : public ClauseSink {
 public:
  explicit DimacsClauseWriter(std::ostream &os) : os_(os) {}

 protected:
  void on_clause(const Clause &c) override;

 private:
  std::ostream &os_;
};

// REF^F_{s,t}: the fifteen clause families over D, V, I, L, R variables.
// Functionality families are emitted once per unordered index pair.
void encode_ref_F(const Cnf &f, long long s, long long t,
                  const VarLayout &layout, ClauseSink &sink);
Cnf encode_ref_F(const Cnf &f, long long s, long long t,
                 const VarLayout &layout);

// SAT^{n,r} over C and T variables.
void encode_sat(long long n, long long r, const VarLayout &layout,
                ClauseSink &sink);
Cnf encode_sat(long long n, long long r, const VarLayout &layout);

// REF^{n,r}_{s,t}: families (2)-(15) plus the C-variable weakening family
// that replaces (1).
void encode_ref_nr(long long n, long long r, long long s, long long t,
                   const VarLayout &layout, ClauseSink &sink);
Cnf encode_ref_nr(long long n, long long r, long long s, long long t,
                  const VarLayout &layout);

// SAT^{n,r} followed by REF^{n,r}_{s,t}; the negated reflection principle.
void encode_reflection(long long n, long long r, long long s, long long t,
                       const VarLayout &layout, ClauseSink &sink);
Cnf encode_reflection(long long n, long long r, long long s, long long t,
                      const VarLayout &layout);

// The order-indexed refutation statement REF(F,s~): rows 1..s~ instead of
// a grid, with 0-valued switch indices; all 21 families.
void encode_ref_am(const Cnf &f, long long s_tilde, const AmVarLayout &layout,
                   ClauseSink &sink);
Cnf encode_ref_am(const Cnf &f, long long s_tilde, const AmVarLayout &layout);

// gamma_F: total assignment of the C-variables describing F's clauses.
PartialAssignment gamma_F(const Cnf &f, const VarLayout &layout);

// tau: substitution collapsing SAT^{n,r} restricted by gamma_F onto F.
// T(m,l,b) goes to x_l^b when the literal is in C_m and to 0 otherwise;
// T(l) goes to x_l for variables occurring in F and to 0 otherwise.
Substitution tau_substitution(const Cnf &f, const VarLayout &layout);

// The Appendix-A reduction: an assignment to some REF(F,s~) variables plus
// a renaming of the untouched ones onto the REF^F_{n+1,t} layout, where
// t = floor(s~/(n+1)). Padding rows are forced to be weakenings of C_1.
struct AmReduction {
  PartialAssignment assignment;   // over AM variable ids
  std::map<Var, Var> renaming;    // AM var -> REF^F_{n+1,t} var
  long long t = 0;
  long long padding_rows = 0;
};

struct ParamError : std::runtime_error {
  explicit ParamError(const std::string &what) : std::runtime_error(what) {}
};

AmReduction am_reduction(const Cnf &f, long long s_tilde,
                         const AmVarLayout &am_layout,
                         const VarLayout &ref_layout);

// The clauses of families (5)/(6) that the Appendix-A formula lacks: the
// instances with l' = l (b = 0 on the L side, b = 1 on the R side). Each is
// implied by families (2)-(4) in one resolution step plus a weakening.
void encode_ref_F_removed_subfamily(long long n, long long s, long long t,
                                    const VarLayout &layout, ClauseSink &sink);
Cnf encode_ref_F_removed_subfamily(long long n, long long s, long long t,
                                   const VarLayout &layout);

Cnf rename_vars(const Cnf &f, const std::map<Var, Var> &renaming,
                Var new_num_vars);

}  // namespace refstate

#endif
