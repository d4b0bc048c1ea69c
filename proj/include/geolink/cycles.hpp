#pragma once

#include "geolink/gamma15.hpp"

namespace geolink {

// r_q^+(t) = #{h in M_2(Z) : t = q.h, det(h) > 0} for positive definite q, t.
// Exact count by enumerating the two column ellipses.
Int rep_count_pos(const BQF& qp, const BQF& t);

// m(T, q) via the class-group reformulation m(t,q) = r^+_{-2[q0]}(t) with
// q0 = q / content(q). Zero when disc(q) != -4 det T; negative definite q is
// replaced by tilde(q) first. Requires T positive definite with t1, t2 and
// 2 t0 integral.
Int m_coeff(const SymT& T, const BQF& q);

struct ZeroCycleEntry {
  BQF form;    // positive definite, reduced into F
  int sign;    // +1 for x(q), -1 for the opposite orientation partner
  Int weight;  // m(T, q) > 0
};
struct ZeroCycle {
  Int disc;
  std::vector<ZeroCycleEntry> entries;
  Int signed_degree() const {
    Int s = 0;
    for (const auto& e : entries) s += e.sign * e.weight;
    return s;
  }
};
ZeroCycle zero_cycle(const SymT& T);

// The rank-2 lattice L_T = {(u,v,w) in Z^3 : ru + mv + nw = 0} with the
// restriction of u^2 - vw, positive definite of discriminant D = r^2 - 4nm.
struct LatticeLT {
  Int n, r, m, M;
  std::array<Int, 3> basis1, basis2;
  BQF gram;
  Int disc() const { return r * r - 4 * n * m; }
};
LatticeLT lattice_LT(const Int& n, const Int& r, const Int& m, const Int& M = 1);

// r_T(A) = #{(u,v,w) in L_T : u^2 - vw = A}
Int count_rT(const LatticeLT& lat, const Int& A);

// N_T(t,d) = #{sigma in Sym_2(Z): sigma1 m - sigma0 r + sigma2 n = t/2,
// sigma0^2 - sigma1 sigma2 = d/4} with 2 sigma0 integral. Counted through
// the injection into L_T; verifies the mod-4 vanishing and the r_T bound.
struct NTCount {
  Int count;
  Int rt_bound;   // r_T((t^2 - D d)/4), or 0 in the vanishing case
  bool vanishes;  // t^2 != D d mod 4
};
NTCount count_NT(const Int& n, const Int& r, const Int& m, const Int& t,
                 const Int& d);

}  // namespace geolink
