#include "refstate/layout.hpp"

#include <sstream>
#include <stdexcept>

namespace refstate {

namespace {

void require(bool ok, const char *what) {
  if (!ok) throw std::out_of_range(what);
}

}  // namespace

VarLayout::VarLayout(long long n, long long r, long long s, long long t,
                     bool has_sat)
    : n_(n), r_(r), s_(s), t_(t), has_sat_(has_sat) {
  require(n >= 1 && r >= 1, "layout needs n, r >= 1");
  require(s >= 0 && t >= 0, "layout needs s, t >= 0");
  Var cursor = 0;
  base_c_ = cursor;
  if (has_sat_) cursor += 2 * r * n;
  base_tl_ = cursor;
  if (has_sat_) cursor += n;
  base_t_ = cursor;
  if (has_sat_) cursor += 2 * r * n;
  base_d_ = cursor;
  cursor += 2 * s * t * n;
  base_v_ = cursor;
  cursor += (s >= 1 ? (s - 1) * t * n : 0);
  base_i_ = cursor;
  cursor += t * r;
  base_l_ = cursor;
  cursor += (s >= 1 ? (s - 1) * t * t : 0);
  base_r_ = cursor;
  cursor += (s >= 1 ? (s - 1) * t * t : 0);
  total_ = cursor;
}

VarLayout VarLayout::ref_only(long long n, long long r, long long s,
                              long long t) {
  return VarLayout(n, r, s, t, false);
}

VarLayout VarLayout::reflection(long long n, long long r, long long s,
                                long long t) {
  return VarLayout(n, r, s, t, true);
}

VarLayout VarLayout::sat_only(long long n, long long r) {
  return VarLayout(n, r, 0, 0, true);
}

Var VarLayout::var_c(long long m, long long l, long long b) const {
  require(has_sat_, "layout has no C block");
  require(m >= 1 && m <= r_ && l >= 1 && l <= n_ && (b == 0 || b == 1),
          "C index out of range");
  return base_c_ + ((m - 1) * n_ + (l - 1)) * 2 + b + 1;
}

Var VarLayout::var_tl(long long l) const {
  require(has_sat_, "layout has no T block");
  require(l >= 1 && l <= n_, "T(l) index out of range");
  return base_tl_ + l;
}

Var VarLayout::var_t(long long m, long long l, long long b) const {
  require(has_sat_, "layout has no T block");
  require(m >= 1 && m <= r_ && l >= 1 && l <= n_ && (b == 0 || b == 1),
          "T(m,l,b) index out of range");
  return base_t_ + ((m - 1) * n_ + (l - 1)) * 2 + b + 1;
}

Var VarLayout::var_d(long long i, long long j, long long l, long long b) const {
  require(i >= 1 && i <= s_ && j >= 1 && j <= t_ && l >= 1 && l <= n_ &&
              (b == 0 || b == 1),
          "D index out of range");
  return base_d_ + (((i - 1) * t_ + (j - 1)) * n_ + (l - 1)) * 2 + b + 1;
}

Var VarLayout::var_v(long long i, long long j, long long l) const {
  require(i >= 2 && i <= s_ && j >= 1 && j <= t_ && l >= 1 && l <= n_,
          "V index out of range");
  return base_v_ + ((i - 2) * t_ + (j - 1)) * n_ + (l - 1) + 1;
}

Var VarLayout::var_i(long long j, long long m) const {
  require(j >= 1 && j <= t_ && m >= 1 && m <= r_, "I index out of range");
  return base_i_ + (j - 1) * r_ + (m - 1) + 1;
}

Var VarLayout::var_l(long long i, long long j, long long jp) const {
  require(i >= 2 && i <= s_ && j >= 1 && j <= t_ && jp >= 1 && jp <= t_,
          "L index out of range");
  return base_l_ + ((i - 2) * t_ + (j - 1)) * t_ + (jp - 1) + 1;
}

Var VarLayout::var_r(long long i, long long j, long long jp) const {
  require(i >= 2 && i <= s_ && j >= 1 && j <= t_ && jp >= 1 && jp <= t_,
          "R index out of range");
  return base_r_ + ((i - 2) * t_ + (j - 1)) * t_ + (jp - 1) + 1;
}

VarInfo VarLayout::decode(Var x) const {
  require(x >= 1 && x <= total_, "variable id out of range");
  Var z = x - 1;
  VarInfo info;
  if (has_sat_ && x <= base_tl_) {
    info.kind = VarKind::C;
    info.b = z % 2;
    z /= 2;
    info.l = z % n_ + 1;
    info.m = z / n_ + 1;
    return info;
  }
  if (has_sat_ && x <= base_t_) {
    info.kind = VarKind::TL;
    info.l = x - base_tl_;
    return info;
  }
  if (has_sat_ && x <= base_d_) {
    z = x - base_t_ - 1;
    info.kind = VarKind::TMLB;
    info.b = z % 2;
    z /= 2;
    info.l = z % n_ + 1;
    info.m = z / n_ + 1;
    return info;
  }
  if (x <= base_v_) {
    z = x - base_d_ - 1;
    info.kind = VarKind::D;
    info.b = z % 2;
    z /= 2;
    info.l = z % n_ + 1;
    z /= n_;
    info.j = z % t_ + 1;
    info.i = z / t_ + 1;
    return info;
  }
  if (x <= base_i_) {
    z = x - base_v_ - 1;
    info.kind = VarKind::V;
    info.l = z % n_ + 1;
    z /= n_;
    info.j = z % t_ + 1;
    info.i = z / t_ + 2;
    return info;
  }
  if (x <= base_l_) {
    z = x - base_i_ - 1;
    info.kind = VarKind::I;
    info.m = z % r_ + 1;
    info.j = z / r_ + 1;
    return info;
  }
  if (x <= base_r_) {
    z = x - base_l_ - 1;
    info.kind = VarKind::L;
    info.jp = z % t_ + 1;
    z /= t_;
    info.j = z % t_ + 1;
    info.i = z / t_ + 2;
    return info;
  }
  z = x - base_r_ - 1;
  info.kind = VarKind::R;
  info.jp = z % t_ + 1;
  z /= t_;
  info.j = z % t_ + 1;
  info.i = z / t_ + 2;
  return info;
}

std::string VarLayout::describe(Var x) const {
  VarInfo v = decode(x);
  std::ostringstream ss;
  switch (v.kind) {
    case VarKind::C:
      ss << "C(" << v.m << "," << v.l << "," << v.b << ")";
      break;
    case VarKind::TL:
      ss << "T(" << v.l << ")";
      break;
    case VarKind::TMLB:
      ss << "T(" << v.m << "," << v.l << "," << v.b << ")";
      break;
    case VarKind::D:
      ss << "D(" << v.i << "," << v.j << "," << v.l << "," << v.b << ")";
      break;
    case VarKind::V:
      ss << "V(" << v.i << "," << v.j << "," << v.l << ")";
      break;
    case VarKind::I:
      ss << "I(" << v.j << "," << v.m << ")";
      break;
    case VarKind::L:
      ss << "L(" << v.i << "," << v.j << "," << v.jp << ")";
      break;
    case VarKind::R:
      ss << "R(" << v.i << "," << v.j << "," << v.jp << ")";
      break;
  }
  return ss.str();
}

AmVarLayout::AmVarLayout(long long n, long long r, long long s_tilde)
    : n_(n), r_(r), st_(s_tilde) {
  require(n >= 1 && r >= 1 && s_tilde >= 1, "AM layout needs n, r, s~ >= 1");
  Var cursor = 0;
  base_d_ = cursor;
  cursor += 2 * st_ * n_;
  base_v_ = cursor;
  cursor += st_ * (n_ + 1);
  base_i_ = cursor;
  cursor += st_ * (r_ + 1);
  base_l_ = cursor;
  cursor += st_ * (st_ + 1);
  base_r_ = cursor;
  cursor += st_ * (st_ + 1);
  total_ = cursor;
}

Var AmVarLayout::var_d(long long u, long long i, long long b) const {
  require(u >= 1 && u <= st_ && i >= 1 && i <= n_ && (b == 0 || b == 1),
          "D[u,i,b] out of range");
  return base_d_ + ((u - 1) * n_ + (i - 1)) * 2 + b + 1;
}

Var AmVarLayout::var_v(long long u, long long i) const {
  require(u >= 1 && u <= st_ && i >= 0 && i <= n_, "V[u,i] out of range");
  return base_v_ + (u - 1) * (n_ + 1) + i + 1;
}

Var AmVarLayout::var_i(long long u, long long j) const {
  require(u >= 1 && u <= st_ && j >= 0 && j <= r_, "I[u,j] out of range");
  return base_i_ + (u - 1) * (r_ + 1) + j + 1;
}

Var AmVarLayout::var_l(long long u, long long v) const {
  require(u >= 1 && u <= st_ && v >= 0 && v <= st_, "L[u,v] out of range");
  return base_l_ + (u - 1) * (st_ + 1) + v + 1;
}

Var AmVarLayout::var_r(long long u, long long v) const {
  require(u >= 1 && u <= st_ && v >= 0 && v <= st_, "R[u,v] out of range");
  return base_r_ + (u - 1) * (st_ + 1) + v + 1;
}

std::string AmVarLayout::describe(Var x) const {
  require(x >= 1 && x <= total_, "variable id out of range");
  std::ostringstream ss;
  Var z;
  if (x <= base_v_) {
    z = x - base_d_ - 1;
    long long b = z % 2;
    z /= 2;
    ss << "D[" << z / n_ + 1 << "," << z % n_ + 1 << "," << b << "]";
  } else if (x <= base_i_) {
    z = x - base_v_ - 1;
    ss << "V[" << z / (n_ + 1) + 1 << "," << z % (n_ + 1) << "]";
  } else if (x <= base_l_) {
    z = x - base_i_ - 1;
    ss << "I[" << z / (r_ + 1) + 1 << "," << z % (r_ + 1) << "]";
  } else if (x <= base_r_) {
    z = x - base_l_ - 1;
    ss << "L[" << z / (st_ + 1) + 1 << "," << z % (st_ + 1) << "]";
  } else {
    z = x - base_r_ - 1;
    ss << "R[" << z / (st_ + 1) + 1 << "," << z % (st_ + 1) << "]";
  }
  return ss.str();
}

}  // namespace refstate
