#pragma once

#include <array>
#include <functional>

#include "geolink/quadirr.hpp"
#include "geolink/symt.hpp"

namespace geolink {

// Numerical value with a certified absolute error bound.
struct RealTol {
  double value;
  double err;
};

// K_0(x) = int_0^inf exp(-x cosh t) dt, x > 0, to absolute tolerance tol.
// The tail is cut where the integrand drops below tol*x/10 and certified by
// the closed-form bound exp(-x cosh T)/(x sinh T); the interior uses
// adaptive quadrature.
RealTol bessel_k0(double x, double tol);

// exp(x) K_0(x): same integral against exp(-x(cosh t - 1)), safe for large x
RealTol bessel_k0_scaled(double x, double tol);

// W*(x1, x2) = (sqrt(x2)/2) int_1^inf exp(2 pi t x1) K_0(2 pi t sqrt(x1^2+x2)) dt
// for x2 > 0. Outer truncation certified through the K_0 upper bound.
RealTol w_star(double x1, double x2, double tol);

using Vec2 = std::array<Rat, 2>;

// orientation sign of the pair (X1, X2) as columns; 0 when dependent
int epsilon_sign(const Vec2& X1, const Vec2& X2);

// Rank-2 indefinite quadratic lattice Z^2 with Gram matrix P (det P < 0,
// anisotropic over Q), an infinite-order orientation-preserving automorph
// gamma (gamma^T P gamma = P, tr gamma > 2), and an optional rational shift
// pair: vectors range over Z^2 + shift_i.
struct Lattice11 {
  SymT gram;                      // P = (p11 p12; p12 p22)
  Mat2 automorph;                 // integral, det 1
  std::array<Vec2, 2> shift{{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}};

  void validate() const;  // throws std::domain_error on any violated invariant
};

// rho(T) = sum of epsilon(X) over <gamma>\{X in (Z^2+shift)^2 : Q(X) = T}.
// Exact signed count; 0 for T degenerate or definite. The fundamental domain
// is the window lambda^w0 <= |xi(X1)| < lambda^(w0+periods) in the expanding
// eigencoordinate; the result is the signed count divided by `periods`
// (window-start and period-count independence are exact invariances).
Int rho_indef(const Lattice11& lat, const SymT& T, int window_start = 0,
              int periods = 1);

// beta(T, v) = sum over T = T' + T'', T' indefinite in (1/N) Sym_2(Z),
// T'' positive definite, of r(T'') rho(T') W*(tr(T'v), 4|det(T'v)|),
// truncated where Delta(T'v) >= Delta_max with a tail certificate below tol.
// pos_rep supplies the positive definite representation numbers r(T'');
// index_factor is the caller's 1/[Gamma_U : Gamma'] normalization.
struct BetaResult {
  double value;
  double err;        // quadrature error + tail certificate
  double delta_max;  // truncation threshold actually used
  long terms;        // nonzero terms accumulated
};
// delta_max_floor widens the truncation window beyond what the tail
// certificate asks for (used by the stability tests).
BetaResult beta_coeff(const SymT& T, const SymT& v,
                      const std::function<double(const SymT&)>& pos_rep,
                      const Lattice11& lat, const Int& N, double tol,
                      const Rat& index_factor = Rat(1),
                      double delta_max_floor = 0.0);

}  // namespace geolink
