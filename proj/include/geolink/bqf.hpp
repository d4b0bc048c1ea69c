#pragma once

#include <array>
#include <optional>
#include <vector>

#include "geolink/mat2.hpp"
#include "geolink/quadirr.hpp"

namespace geolink {

// Integral binary quadratic form a x^2 + b xy + c y^2.
struct BQF {
  Int a{0}, b{0}, c{0};

  Int disc() const { return b * b - 4 * a * c; }
  Int content() const { return gcd(gcd(a < 0 ? Int(-a) : a, b < 0 ? Int(-b) : b), c < 0 ? Int(-c) : c); }
  bool is_primitive() const { return content() == 1; }
  bool positive_definite() const { return sgn(disc()) < 0 && sgn(a) > 0; }
  bool negative_definite() const { return sgn(disc()) < 0 && sgn(a) < 0; }
  bool indefinite() const { return sgn(disc()) > 0; }

  Int value(const Int& x, const Int& y) const {
    return a * x * x + b * x * y + c * y * y;
  }
  // (u, v) -> q(u+v) - q(u) - q(v), the polarized pairing
  Int bilinear(const std::array<Int, 2>& u, const std::array<Int, 2>& v) const {
    return 2 * a * u[0] * v[0] + b * (u[0] * v[1] + u[1] * v[0]) +
           2 * c * u[1] * v[1];
  }

  BQF operator-() const { return {-a, -b, -c}; }
  bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const BQF& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }

  std::string str() const {
    return a.get_str() + "," + b.get_str() + "," + c.get_str();
  }
};

BQF parse_bqf(const std::string& s);  // "a,b,c"

// Right action (q.h)(x,y) = q(h11 x + h12 y, h21 x + h22 y).
BQF act(const BQF& q, const Mat2& h);

// a x^2 + b xy + c y^2  ->  -a x^2 + b xy - c y^2
inline BQF tilde(const BQF& q) { return {-q.a, q.b, -q.c}; }

// Roots (-b +- sqrt(d)) / (2a) of an indefinite form; the first component
// carries the +sqrt(d) branch. Throws if a = 0 (geodesic through infinity).
std::pair<QuadIrr, QuadIrr> roots(const BQF& q);

// Gauss reduction of a positive definite form: q_red = q.gamma with
// |b| <= a <= c and b >= 0 when |b| = a or a = c.
struct ReducedBQF {
  BQF reduced;
  Mat2 gamma;
};
ReducedBQF reduce_posdef(const BQF& q);

struct FormClass {
  BQF rep;       // Gauss-reduced representative
  Int disc;
  Int content;   // > 1 for imprimitive classes
  bool primitive() const { return content == 1; }
};

// All PSL2(Z)-classes of positive definite forms of discriminant d < 0,
// including imprimitive ones. Results are cached per discriminant.
const std::vector<FormClass>& classes(const Int& d);

// Gauss composition of primitive positive definite classes (same disc).
FormClass compose(const BQF& q1, const BQF& q2);

inline BQF class_inverse(const BQF& q) { return {q.a, -q.b, q.c}; }

// The class -2[q0] computed through the ideal square a^2, a = Z a + Z w,
// w = (-b + sqrt(d))/2: Hermite basis of the rows (a^2,0),(0,a),(-ca,-b)
// in coordinates (1, w), norm form divided by a^2, then reduced.
FormClass double_inverse(const BQF& q0);

// All h in SL2(Z) with q.h = q, for definite q. Sizes 2/4/6 for
// d < -4 / d = -4 / d = -3.
std::vector<Mat2> automorphisms(const BQF& q);

// Some gamma in SL2(Z) with q1.gamma = q2, if the forms are equivalent.
// Definite case via reduction, indefinite case via the reduction cycle
// (square discriminants rejected).
std::optional<Mat2> equivalent_psl2z(const BQF& q1, const BQF& q2);

// All integer solutions of q(x,y) = n for positive definite q.
std::vector<std::array<Int, 2>> represent_solutions(const BQF& q, const Int& n);

// The rank-2 sublattice L_q = {X in L' : (X, X_q) = 0} for primitive positive
// definite q, with L' = {(-x,y;z,x)} carrying Q = x^2 + yz and coordinates
// (x,y,z). Basis oriented so that (basis, X_q) is positively oriented.
struct LatticeLq {
  std::array<Int, 3> basis1, basis2;
  BQF gram;
};
LatticeLq lattice_Lq(const BQF& q);

}  // namespace geolink
