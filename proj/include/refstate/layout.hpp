#ifndef REFSTATE_LAYOUT_HPP
#define REFSTATE_LAYOUT_HPP

#include <string>

#include "refstate/cnf.hpp"

namespace refstate {

inline constexpr const char *kLayoutVersion = "refstate-layout-1";

enum class VarKind { C, TL, TMLB, D, V, I, L, R };

struct VarInfo {
  VarKind kind;
  long long i = 0;   // level (D, V, L, R)
  long long j = 0;   // column (D, V, I, L, R)
  long long l = 0;   // base variable index (C, TL, TMLB, D, V)
  long long b = 0;   // polarity bit (C, TMLB, D)
  long long m = 0;   // input clause index (C, TMLB, I)
  long long jp = 0;  // premise column (L, R)
};

// Bijection between the indexed variables of SAT^{n,r} / REF^{n,r}_{s,t} /
// REF^F_{s,t} and contiguous DIMACS ids. Block order: C, T(l), T(m,l,b),
// D, V, I, L, R, each lexicographic in its indices. The standalone REF^F
// layout simply omits the first three blocks.
class VarLayout {
 public:
  static VarLayout ref_only(long long n, long long r, long long s,
                            long long t);
  static VarLayout reflection(long long n, long long r, long long s,
                              long long t);
  // C and T blocks only (s = t = 0); enough for SAT^{n,r} by itself.
  static VarLayout sat_only(long long n, long long r);

  long long n() const { return n_; }
  long long r() const { return r_; }
  long long s() const { return s_; }
  long long t() const { return t_; }
  bool has_sat_block() const { return has_sat_; }

  // C(m,l,b), T(l), T(m,l,b): m in [r], l in [n], b in {0,1}
  Var var_c(long long m, long long l, long long b) const;
  Var var_tl(long long l) const;
  Var var_t(long long m, long long l, long long b) const;

  // D(i,j,l,b): i in [s], j in [t], l in [n], b in {0,1}
  Var var_d(long long i, long long j, long long l, long long b) const;
  // V(i,j,l): i in [2..s]
  Var var_v(long long i, long long j, long long l) const;
  // I(j,m): j in [t], m in [r]
  Var var_i(long long j, long long m) const;
  // L(i,j,j'), R(i,j,j'): i in [2..s], j,j' in [t]
  Var var_l(long long i, long long j, long long jp) const;
  Var var_r(long long i, long long j, long long jp) const;

  Var num_vars() const { return total_; }

  VarInfo decode(Var x) const;
  std::string describe(Var x) const;

 private:
  VarLayout(long long n, long long r, long long s, long long t, bool has_sat);

  long long n_, r_, s_, t_;
  bool has_sat_;
  Var base_c_, base_tl_, base_t_, base_d_, base_v_, base_i_, base_l_, base_r_;
  Var total_;
};

// Layout for the order-indexed refutation statement REF(F,s~). Second
// indices of
// V, I, L, R include 0 (the switch value). Block order D, V, I, L, R,
// lexicographic.
class AmVarLayout {
 public:
  AmVarLayout(long long n, long long r, long long s_tilde);

  long long n() const { return n_; }
  long long r() const { return r_; }
  long long s_tilde() const { return st_; }

  Var var_d(long long u, long long i, long long b) const;  // u in [s~], i in [n]
  Var var_v(long long u, long long i) const;               // i in [0..n]
  Var var_i(long long u, long long j) const;               // j in [0..r]
  Var var_l(long long u, long long v) const;               // v in [0..s~]
  Var var_r(long long u, long long v) const;

  Var num_vars() const { return total_; }

  std::string describe(Var x) const;

 private:
  long long n_, r_, st_;
  Var base_d_, base_v_, base_i_, base_l_, base_r_;
  Var total_;
};

}  // namespace refstate

#endif
