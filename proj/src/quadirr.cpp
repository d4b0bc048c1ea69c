#include "geolink/quadirr.hpp"

#include <cmath>

namespace geolink {

namespace {

// Largest f with f^2 | d, by trial division. Radicands in this library stay
// small (automorph traces, form discriminants), so this is never hot.
Int square_part(Int d) {
  Int f = 1;
  for (Int p = 2; p * p * p * p <= d || p <= 3; ++p) {
    if (p * p > d) break;
    while (d % (p * p) == 0) {
      d /= p * p;
      f *= p;
    }
  }
  if (is_square(d)) {
    Int s = isqrt(d);
    f *= s;
  }
  return f;
}

// sign of u + v*sqrt(e), u,v integers, e >= 0 nonsquare or 0
int sign_one_radical(const Int& u, const Int& v, const Int& e) {
  if (v == 0 || e == 0) return sgn(u);
  if (u == 0) return sgn(v);
  int su = sgn(u), sv = sgn(v);
  if (su == sv) return su;
  Int lhs = u * u, rhs = v * v * e;
  int c = lhs == rhs ? 0 : (lhs > rhs ? 1 : -1);
  return c == 0 ? 0 : c * su;
}

// sign of A + B*sqrt(d1) + C*sqrt(d2), d1 != d2 both nonsquare positive
int sign_two_radicals(const Int& A, const Int& B, const Int& C, const Int& d1,
                      const Int& d2) {
  if (B == 0) return sign_one_radical(A, C, d2);
  if (C == 0) return sign_one_radical(A, B, d1);
  int t = sign_one_radical(A, B, d1);
  int u = sgn(C);
  if (t == 0) return u;
  if (u == 0) return t;
  if (t == u) return t;
  // S1 and C*sqrt(d2) have opposite signs: compare S1^2 vs C^2 d2.
  // S1^2 - C^2 d2 = (A^2 + B^2 d1 - C^2 d2) + 2AB sqrt(d1)
  int c = sign_one_radical(A * A + B * B * d1 - C * C * d2, 2 * A * B, d1);
  return c == 0 ? 0 : c * t;
}

}  // namespace

QuadIrr::QuadIrr(Int p_, Int q_, Int r_, Int d_)
    : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)), d(std::move(d_)) {
  if (r == 0) throw std::invalid_argument("QuadIrr with zero denominator");
  if (sgn(d) < 0) throw std::invalid_argument("QuadIrr with negative radicand");
  if (q == 0) {
    d = 0;
  } else if (d == 0) {
    q = 0;
  } else {
    Int f = square_part(d);
    if (f > 1) {
      q *= f;
      d /= f * f;
    }
    if (d == 1) {  // perfect square folded entirely
      p += q;
      q = 0;
      d = 0;
    }
  }
  if (sgn(r) < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  Int g = gcd(gcd(p < 0 ? Int(-p) : p, q < 0 ? Int(-q) : q), r);
  if (g > 1) {
    p /= g;
    q /= g;
    r /= g;
  }
}

int QuadIrr::sign() const { return sign_one_radical(p, q, d); }

QuadIrr QuadIrr::operator+(const QuadIrr& o) const {
  if (q != 0 && o.q != 0 && d != o.d)
    throw std::invalid_argument("QuadIrr addition across distinct radicands");
  Int dd = q != 0 ? d : o.d;
  return QuadIrr(p * o.r + o.p * r, q * o.r + o.q * r, r * o.r, dd);
}

QuadIrr QuadIrr::operator-(const QuadIrr& o) const { return *this + (-o); }

QuadIrr QuadIrr::operator*(const QuadIrr& o) const {
  if (q != 0 && o.q != 0 && d != o.d)
    throw std::invalid_argument("QuadIrr product across distinct radicands");
  Int dd = q != 0 ? d : o.d;
  return QuadIrr(p * o.p + q * o.q * dd, p * o.q + q * o.p, r * o.r, dd);
}

QuadIrr QuadIrr::operator*(const Rat& s) const {
  return QuadIrr(p * s.get_num(), q * s.get_num(), r * s.get_den(), d);
}

double QuadIrr::to_double() const {
  return (p.get_d() + q.get_d() * std::sqrt(d.get_d())) / r.get_d();
}

std::string QuadIrr::str() const {
  if (q == 0) return rat_to_string(make_rat(p, r));
  std::string s = "(" + p.get_str();
  s += (sgn(q) < 0 ? "-" : "+");
  Int aq = q < 0 ? Int(-q) : q;
  if (aq != 1) s += aq.get_str() + "*";
  s += "sqrt(" + d.get_str() + "))/" + r.get_str();
  return s;
}

int qirr_cmp(const QuadIrr& x, const QuadIrr& y) {
  // x - y = (A + B sqrt(dx) + C sqrt(dy)) / (rx ry)
  Int A = x.p * y.r - y.p * x.r;
  Int B = x.q * y.r;
  Int C = -y.q * x.r;
  if (B == 0 && C == 0) return sgn(A);
  if (B == 0) return sign_one_radical(A, C, y.d);
  if (C == 0) return sign_one_radical(A, B, x.d);
  if (x.d == y.d) return sign_one_radical(A, B + C, x.d);
  return sign_two_radicals(A, B, C, x.d, y.d);
}

}  // namespace geolink
