#ifndef REFSTATE_RESTRICTION_DETAIL_HPP
#define REFSTATE_RESTRICTION_DETAIL_HPP

// Internal helpers shared by the restriction-lab translation units.

#include <map>
#include <vector>

#include "refstate/cnf.hpp"
#include "refstate/layout.hpp"

namespace refstate::detail {

enum class GroupKind { D, V, I, L, R };

struct GroupKey {
  GroupKind kind;
  long long i, j;
  bool operator<(const GroupKey &o) const {
    if (kind != o.kind) return kind < o.kind;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

struct GroupState {
  long long assigned = 0;
  long long ones = 0;
  long long value = 0;             // index of a 1 for one-hot kinds
  std::vector<Lit> positive_bits;  // D groups: literals assigned 1
};

struct GroupAnalysis {
  std::map<GroupKey, GroupState> groups;

  const GroupState *find(GroupKind k, long long i, long long j) const {
    auto it = groups.find(GroupKey{k, i, j});
    return it == groups.end() ? nullptr : &it->second;
  }
};

long long group_size(const VarLayout &ly, GroupKind k);
const char *group_name(GroupKind k);
GroupAnalysis analyze_groups(const PartialAssignment &sigma,
                             const VarLayout &ly);
bool group_set(const GroupState &st, const VarLayout &ly, GroupKind k);
Clause cell_of(const GroupState &st);

void set_d_group(PartialAssignment &a, const VarLayout &ly, long long i,
                 long long j, const Clause &c);
void set_v_group(PartialAssignment &a, const VarLayout &ly, long long i,
                 long long j, long long value);
void set_i_group(PartialAssignment &a, const VarLayout &ly, long long j,
                 long long value);
void set_lr_group(PartialAssignment &a, const VarLayout &ly, int side,
                  long long i, long long j, long long value);

// Variable ids of one group, for removal passes.
std::vector<Var> group_vars(const VarLayout &ly, GroupKind k, long long i,
                            long long j);

// Smallest input-clause index whose clause the full cell weakens; 0 when
// none exists (then f is satisfiable).
std::size_t covering_input(const Cnf &f, const Clause &cell);

}  // namespace refstate::detail

#endif
