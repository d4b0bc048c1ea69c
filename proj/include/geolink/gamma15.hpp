#pragma once

#include <array>
#include <vector>

#include "geolink/bqf.hpp"
#include "geolink/symt.hpp"

namespace geolink {

// Geometry of Gamma' = Gamma_1(5) in PSL2(Z), acting on the ideal hexagon
// fundamental domain F with vertices inf, 0, 1/3, 2/5, 1/2, 1.
//
// Sides are indexed 0..5 in cyclic order:
//   0:(inf,0)  1:(0,1/3)  2:(1/3,2/5)  3:(2/5,1/2)  4:(1/2,1)  5:(1,inf)
// with pairings 0<->5, 1<->4, 2<->3.

struct FundDomain {
  // cusp vertices after infinity: 0, 1/3, 2/5, 1/2, 1
  std::array<Rat, 5> finite_vertices;
  // circle sides (center, radius) for sides 1..4; sides 0 and 5 are the
  // vertical lines Re z = 0 and Re z = 1
  std::array<std::pair<Rat, Rat>, 4> circles;
  // pairing[i] maps side i onto its partner side (as a Moebius map)
  std::array<Mat2, 6> pairing;
};
const FundDomain& fund_domain();

// gamma = +-(1 *; 0 1) mod 5; requires det = 1
bool in_gamma15(const Mat2& g);

// 12 left-coset representatives of PSL2(Z)/Gamma_1(5), identity first
const std::vector<Mat2>& coset_reps();

using HVec = std::array<int, 3>;

// index 0..5 of the boundary arc of dH^2 containing rho; throws on a cusp
// vertex of F ("cusp endpoint")
int arc_index(const QuadIrr& rho);
int arc_index(const ExtReal& rho);

// signed indicator vector of the arc containing rho
HVec h_function(const ExtReal& rho);

// whether the geodesic of an indefinite form meets F: endpoints lie in
// distinct boundary arcs
bool intersects_F(const BQF& q);

// closed-F membership of the point x + iy given (x, y^2), both rational
bool point_in_F(const Rat& x, const Rat& y2);

struct GeodesicCycle {
  std::vector<BQF> forms;    // the translates crossing F, in traversal order
  std::vector<Mat2> steps;   // forms[i+1] = act(forms[i], steps[i]); closes up
  std::array<Int, 3> homology;
  Int disc;
};

// Walks the Gamma_1(5)-class of an indefinite nonsquare-discriminant form
// through F and accumulates the homology vector. Throws "non-closed
// geodesic" when a translate has a = 0 or a root at a cusp vertex.
GeodesicCycle traverse(const BQF& q);

// CM point of a definite form, with orientation sign(a).
struct OrientedPoint {
  BQF form;  // definite; the point is the root of form(z,1) = 0 in H^2
  int sign() const { return sgn(form.a) > 0 ? 1 : -1; }
};

// q' = q.gamma with gamma in Gamma_1(5) and z_{q'} in F (closed), boundary
// representatives normalized toward the smaller side of each pairing.
struct ReducedPoint {
  BQF form;
  Mat2 gamma;
};
ReducedPoint reduce_point_to_F(const OrientedPoint& z);

// Winding number w(x; c') for x the positively oriented point of a definite
// form already reduced into F. Exact value in (1/2)Z; points exactly on a
// circle of the cycle contribute half-multiplicity.
Rat winding(const OrientedPoint& x, const GeodesicCycle& cyc);

// Orbit of a class under the 12 cosets, deduplicated by Gamma'-equivalence:
// for each kept translate q, the reduced-into-F positive forms representing
// x(q) and its oppositely oriented partner x(-tilde(q)).
struct OrbitPoint {
  BQF pos;  // in F; carries weight +1 per unit multiplicity
  BQF neg;  // in F; the -tilde partner, counted with sign -1
};
std::vector<OrbitPoint> class_orbit_points(const FormClass& C);

}  // namespace geolink
