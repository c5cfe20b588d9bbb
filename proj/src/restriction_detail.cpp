#include "restriction_detail.hpp"

namespace refstate::detail {

long long group_size(const VarLayout &ly, GroupKind k) {
  switch (k) {
    case GroupKind::D:
      return 2 * ly.n();
    case GroupKind::V:
      return ly.n();
    case GroupKind::I:
      return ly.r();
    case GroupKind::L:
    case GroupKind::R:
      return ly.t();
  }
  return 0;
}

const char *group_name(GroupKind k) {
  switch (k) {
    case GroupKind::D:
      return "D";
    case GroupKind::V:
      return "V";
    case GroupKind::I:
      return "I";
    case GroupKind::L:
      return "L";
    case GroupKind::R:
      return "R";
  }
  return "?";
}

GroupAnalysis analyze_groups(const PartialAssignment &sigma,
                             const VarLayout &ly) {
  GroupAnalysis out;
  for (const auto &[var, value] : sigma.entries()) {
    VarInfo info = ly.decode(var);
    GroupKey key{};
    long long inner = 0;
    switch (info.kind) {
      case VarKind::D:
        key = {GroupKind::D, info.i, info.j};
        break;
      case VarKind::V:
        key = {GroupKind::V, info.i, info.j};
        inner = info.l;
        break;
      case VarKind::I:
        key = {GroupKind::I, 1, info.j};
        inner = info.m;
        break;
      case VarKind::L:
        key = {GroupKind::L, info.i, info.j};
        inner = info.jp;
        break;
      case VarKind::R:
        key = {GroupKind::R, info.i, info.j};
        inner = info.jp;
        break;
      default:
        continue;  // C/T variables have no home pair
    }
    GroupState &st = out.groups[key];
    ++st.assigned;
    if (value == 1) {
      ++st.ones;
      st.value = inner;
      if (info.kind == VarKind::D)
        st.positive_bits.push_back(Lit{info.l, static_cast<int>(info.b)});
    }
  }
  return out;
}

bool group_set(const GroupState &st, const VarLayout &ly, GroupKind k) {
  if (st.assigned != group_size(ly, k)) return false;
  if (k == GroupKind::D) return true;
  return st.ones == 1;
}

Clause cell_of(const GroupState &st) { return Clause(st.positive_bits); }

void set_d_group(PartialAssignment &a, const VarLayout &ly, long long i,
                 long long j, const Clause &c) {
  for (long long l = 1; l <= ly.n(); ++l)
    for (long long b = 0; b <= 1; ++b)
      a.set(ly.var_d(i, j, l, b),
            c.contains(Lit{l, static_cast<int>(b)}) ? 1 : 0);
}

void set_v_group(PartialAssignment &a, const VarLayout &ly, long long i,
                 long long j, long long value) {
  for (long long l = 1; l <= ly.n(); ++l)
    a.set(ly.var_v(i, j, l), l == value ? 1 : 0);
}

void set_i_group(PartialAssignment &a, const VarLayout &ly, long long j,
                 long long value) {
  for (long long m = 1; m <= ly.r(); ++m)
    a.set(ly.var_i(j, m), m == value ? 1 : 0);
}

void set_lr_group(PartialAssignment &a, const VarLayout &ly, int side,
                  long long i, long long j, long long value) {
  for (long long jp = 1; jp <= ly.t(); ++jp) {
    Var v = side == 0 ? ly.var_l(i, j, jp) : ly.var_r(i, j, jp);
    a.set(v, jp == value ? 1 : 0);
  }
}

std::vector<Var> group_vars(const VarLayout &ly, GroupKind k, long long i,
                            long long j) {
  std::vector<Var> out;
  switch (k) {
    case GroupKind::D:
      for (long long l = 1; l <= ly.n(); ++l)
        for (long long b = 0; b <= 1; ++b) out.push_back(ly.var_d(i, j, l, b));
      break;
    case GroupKind::V:
      for (long long l = 1; l <= ly.n(); ++l) out.push_back(ly.var_v(i, j, l));
      break;
    case GroupKind::I:
      for (long long m = 1; m <= ly.r(); ++m) out.push_back(ly.var_i(j, m));
      break;
    case GroupKind::L:
      for (long long jp = 1; jp <= ly.t(); ++jp)
        out.push_back(ly.var_l(i, j, jp));
      break;
    case GroupKind::R:
      for (long long jp = 1; jp <= ly.t(); ++jp)
        out.push_back(ly.var_r(i, j, jp));
      break;
  }
  return out;
}

std::size_t covering_input(const Cnf &f, const Clause &cell) {
  for (std::size_t m = 1; m <= f.clauses.size(); ++m)
    if (f.clauses[m - 1].subset_of(cell)) return m;
  return 0;
}

}  // namespace refstate::detail
