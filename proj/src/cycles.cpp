#include "geolink/cycles.hpp"

namespace geolink {

namespace {

void extgcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
}

// integral form t(x,y) = t1 x^2 + 2 t0 xy + t2 y^2 attached to half-integral T
BQF t_form(const SymT& T) {
  if (!T.half_integral())
    throw std::domain_error("T must be half-integral (t1, t2, 2 t0 integers)");
  return {T.t1.get_num(), Rat(2 * T.t0).get_num(), T.t2.get_num()};
}

}  // namespace

Int rep_count_pos(const BQF& qp, const BQF& t) {
  if (!qp.positive_definite() || !t.positive_definite())
    throw std::domain_error("rep_count_pos: both forms must be positive definite");
  Int cnt = 0;
  auto cols1 = represent_solutions(qp, t.a);
  auto cols2 = represent_solutions(qp, t.c);
  for (const auto& u : cols1) {
    for (const auto& v : cols2) {
      if (qp.bilinear(u, v) != t.b) continue;
      if (sgn(u[0] * v[1] - u[1] * v[0]) > 0) ++cnt;
    }
  }
  return cnt;
}

Int m_coeff(const SymT& T, const BQF& q) {
  if (!T.positive_definite())
    throw std::domain_error("m_coeff: T must be positive definite");
  BQF t = t_form(T);
  Int d = t.disc();  // = -4 det T
  if (q.disc() != d) return 0;
  if (sgn(d) >= 0) return 0;  // no definite CM point for positive disc
  BQF f = sgn(q.a) < 0 ? tilde(q) : q;
  Int g = f.content();
  BQF q0{f.a / g, f.b / g, f.c / g};
  FormClass target = double_inverse(q0);
  return rep_count_pos(target.rep, t);
}

ZeroCycle zero_cycle(const SymT& T) {
  BQF t = t_form(T);
  Int d = t.disc();
  if (sgn(d) >= 0)
    throw std::domain_error("zero_cycle: -4 det T must be negative");
  ZeroCycle out;
  out.disc = d;
  for (const FormClass& C : classes(d)) {
    Int m = m_coeff(T, C.rep);
    if (m == 0) continue;
    for (const OrbitPoint& p : class_orbit_points(C)) {
      out.entries.push_back({p.pos, +1, m});
      out.entries.push_back({p.neg, -1, m});
    }
  }
  return out;
}

LatticeLT lattice_LT(const Int& n, const Int& r, const Int& m, const Int& M) {
  if (gcd(gcd(n < 0 ? Int(-n) : n, r < 0 ? Int(-r) : r), m < 0 ? Int(-m) : m) != 1)
    throw std::domain_error("lattice_LT: (n, r, m) must be coprime");
  Int D = r * r - 4 * n * m;
  if (sgn(D) >= 0)
    throw std::domain_error("lattice_LT: requires r^2 - 4nm < 0");
  // kernel of (u,v,w) -> r u + m v + n w
  Int g1, s, t;
  extgcd(r, m, g1, s, t);
  Int g2, u, w;
  extgcd(g1, n, g2, u, w);
  if (g2 != 1 && g2 != -1)
    throw std::runtime_error("lattice_LT: linear form not primitive");
  std::array<Int, 3> k1 = {-m / g1, r / g1, 0};
  std::array<Int, 3> k2 = {-s * n, -t * n, g1};
  auto quad = [](const std::array<Int, 3>& v) -> Int {
    return v[0] * v[0] - v[1] * v[2];
  };
  auto bil = [&](const std::array<Int, 3>& a, const std::array<Int, 3>& b) -> Int {
    return quad({a[0] + b[0], a[1] + b[1], a[2] + b[2]}) - quad(a) - quad(b);
  };
  BQF gram{quad(k1), bil(k1, k2), quad(k2)};
  if (gram.disc() != D)
    throw std::runtime_error("lattice_LT: gram discriminant mismatch");
  if (!gram.positive_definite())
    throw std::runtime_error("lattice_LT: gram not positive definite");
  return {n, r, m, M, k1, k2, gram};
}

Int count_rT(const LatticeLT& lat, const Int& A) {
  if (sgn(A) < 0) return 0;
  return Int(represent_solutions(lat.gram, A).size());
}

NTCount count_NT(const Int& n, const Int& r, const Int& m, const Int& t,
                 const Int& d) {
  if (sgn(d) <= 0) throw std::domain_error("count_NT: requires d > 0");
  LatticeLT lat = lattice_LT(n, r, m);
  Int D = lat.disc();
  Int num = t * t - D * d;
  Int mod4;
  mpz_mod_ui(mod4.get_mpz_t(), num.get_mpz_t(), 4);
  if (mod4 != 0) return {0, 0, true};
  Int A = num / 4;
  Int bound = count_rT(lat, A);

  // invert sigma -> (m s1 - n s2, n s0 - r s1, r s2 - m s0) on the level set,
  // together with the slice 2 m s1 - r s0 + 2 n s2 = t  (s0 = 2 sigma0)
  Int cnt = 0;
  for (const auto& sol : represent_solutions(lat.gram, A)) {
    // lattice vector (u,v,w) = x * basis1 + y * basis2
    std::array<Int, 3> vec;
    for (int i = 0; i < 3; ++i)
      vec[i] = sol[0] * lat.basis1[i] + sol[1] * lat.basis2[i];
    const Int &u = vec[0], &v = vec[1], &w = vec[2];
    // solve  m s1 - n s2 = u,  n s0 - r s1 = v,  r s2 - m s0 = w,
    //        2m s1 - r s0 + 2n s2 = t  over the rationals:
    // D s1 = -(2 n v + r u) + ... derive via elimination:
    //   from the four equations: s1 = (t n + r v + 2 u m') ... use direct
    //   linear algebra with the known one-dimensional kernel (n, m, r).
    // Solving [first three rows] gives the solution up to k*(n, m, r); the
    // slice fixes k since its value on the kernel is 4nm - r^2 = -D != 0.
    // Particular solution via rationals:
    Rat s1, s2, s0;
    // Combine: 2m*(eq u) + ... easiest: br = -D = 4nm - r^2
    Rat br(4 * n * m - r * r);
    // From u = m s1 - n s2 and t = 2m s1 - r s0 + 2n s2 and v = n s0 - r s1:
    //   eliminate: s1 = (u + n s2)/m if m != 0 ... instead use the closed
    //   form found by inverting the 3x3 system {u-eq, v-eq, slice}:
    //   [ m  -n   0 ] [s1]   [u]
    //   [-r   0   n ] [s2] = [v]
    //   [2m  2n  -r ] [s0]   [t]
    // det = m*(0*(-r) - n*2n) + n*(-r*(-r) - n*2m) + 0 = -2mn^2 + n r^2 - 2mn^2
    //     = n(r^2 - 4nm) = -nD ... falls back to other rows when n = 0.
    // Use a generic exact 3x3 solve over the rationals instead.
    Rat Amat[3][4] = {
        {Rat(m), Rat(-n), Rat(0), Rat(u)},
        {Rat(-r), Rat(0), Rat(n), Rat(v)},
        {Rat(2 * m), Rat(2 * n), Rat(-r), Rat(t)},
    };
    // Gaussian elimination with exact pivots; singular => use w-equation
    auto solve3 = [](Rat M3[3][4], Rat& x0, Rat& x1, Rat& x2) -> bool {
      int perm[3] = {0, 1, 2};
      for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int row = col; row < 3; ++row)
          if (sgn(M3[perm[row]][col]) != 0) {
            piv = row;
            break;
          }
        if (piv < 0) return false;
        std::swap(perm[col], perm[piv]);
        for (int row = col + 1; row < 3; ++row) {
          Rat f = M3[perm[row]][col] / M3[perm[col]][col];
          for (int k = col; k < 4; ++k)
            M3[perm[row]][k] -= f * M3[perm[col]][k];
        }
      }
      Rat xs[3];
      for (int col = 2; col >= 0; --col) {
        Rat acc = M3[perm[col]][3];
        for (int k = col + 1; k < 3; ++k) acc -= M3[perm[col]][k] * xs[k];
        xs[col] = acc / M3[perm[col]][col];
      }
      x0 = xs[0];
      x1 = xs[1];
      x2 = xs[2];
      return true;
    };
    bool ok = solve3(Amat, s1, s2, s0);
    if (!ok) {
      Rat Bmat[3][4] = {
          {Rat(m), Rat(-n), Rat(0), Rat(u)},
          {Rat(0), Rat(r), Rat(-m), Rat(w)},
          {Rat(2 * m), Rat(2 * n), Rat(-r), Rat(t)},
      };
      ok = solve3(Bmat, s1, s2, s0);
    }
    if (!ok) continue;
    // verify all four original equations and integrality
    if (Rat(m) * s1 - Rat(n) * s2 != Rat(u)) continue;
    if (Rat(n) * s0 - Rat(r) * s1 != Rat(v)) continue;
    if (Rat(r) * s2 - Rat(m) * s0 != Rat(w)) continue;
    if (Rat(2 * m) * s1 - Rat(r) * s0 + Rat(2 * n) * s2 != Rat(t)) continue;
    if (!is_integer(s1) || !is_integer(s2) || !is_integer(s0)) continue;
    // sigma0^2 - sigma1 sigma2 = d/4 with sigma0 = s0/2
    if (s0 * s0 - 4 * s1 * s2 != Rat(d)) continue;
    ++cnt;
  }
  if (cnt > bound)
    throw std::runtime_error("count_NT: injection bound violated");
  return {cnt, bound, false};
}

}  // namespace geolink
