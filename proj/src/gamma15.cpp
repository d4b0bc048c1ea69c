#include "geolink/gamma15.hpp"

#include <algorithm>

namespace geolink {

namespace {

// frozen side pairings, derived once by bounded search over Gamma_1(5)
// matrices mapping each side's endpoint pair onto its partner's
// (0,inf-side) <-> (1,inf-side) is z -> z+1; sides 2,3 pair through the
// parabolic fixing the cusp 2/5
const std::array<Mat2, 6> kPairings = {{
    {1, 1, 0, 1},       // side 0 -> side 5
    {-4, 1, -5, 1},     // side 1 -> side 4
    {-11, 4, -25, 9},   // side 2 -> side 3
    {-9, 4, -25, 11},   // side 3 -> side 2
    {1, -1, 5, -4},     // side 4 -> side 1
    {1, -1, 0, 1},      // side 5 -> side 0
}};

// the four Farey triangles tiling F, as images t_k(inf, 0, 1):
// (inf,0,1), (0,1/2,1), (0,1/3,1/2), (1/3,2/5,1/2)
const std::array<Mat2, 4> kTriangleMaps = {{
    {1, 0, 0, 1},
    {1, 0, 1, 1},
    {1, 0, 2, 1},
    {1, 1, 2, 3},
}};

// order-3 rotation of the base triangle: inf -> 0 -> 1 -> inf
const Mat2 kRho{0, 1, -1, 1};

const std::vector<Mat2> kCosets = {
    {1, 0, 0, 1},  {0, 1, -1, 0},  {1, -1, 1, 0}, {1, 1, -1, 0},
    {2, -1, 1, 0}, {2, 1, -1, 0},  {1, 0, -2, 1}, {1, 0, 2, 1},
    {3, 1, 2, 1},  {3, -1, -2, 1}, {5, 2, 2, 1},  {2, 1, -5, -2},
};

const std::array<HVec, 6> kHValues = {{
    {1, 0, 0},   // (-inf, 0)
    {0, 1, 0},   // (0, 1/3)
    {0, 0, 1},   // (1/3, 2/5)
    {0, 0, -1},  // (2/5, 1/2)
    {0, -1, 0},  // (1/2, 1)
    {-1, 0, 0},  // (1, inf)
}};

const std::array<Rat, 5>& cuts() {
  static const std::array<Rat, 5> c = {Rat(0), Rat(1, 3), Rat(2, 5), Rat(1, 2),
                                       Rat(1)};
  return c;
}

int partner_side(int i) { return 5 - i; }

// Moebius image of a rational point given as (Re z, (Im z)^2).
std::pair<Rat, Rat> moebius_point(const Mat2& g, const Rat& x, const Rat& y2) {
  Rat a(g.a), b(g.b), c(g.c), d(g.d);
  Rat den = (c * x + d) * (c * x + d) + c * c * y2;
  if (sgn(den) == 0) throw std::domain_error("moebius_point: pole");
  Rat nx = ((a * x + b) * (c * x + d) + a * c * y2) / den;
  return {nx, y2 / (den * den)};
}

// Gauss reduction of the rational positive definite form [1, -2x, x^2+y2]
// attached to a point; returns the point map D with D z in F_std, shifted
// right into the base Farey triangle (inf,0,1) when Re < 0.
Mat2 reduce_point_to_base_triangle(Rat x, Rat y2) {
  if (sgn(y2) <= 0) throw std::domain_error("point not in upper half-plane");
  Rat qa(1), qb = -2 * x, qc = x * x + y2;
  Mat2 g = Mat2::identity();
  for (;;) {
    Int k = round_nearest(-qb / (2 * qa));
    if (k != 0) {
      // act by translation on the form
      Rat kk(k);
      qc = qa * kk * kk + qb * kk + qc;
      qb = qb + 2 * qa * kk;
      g = g * Mat2::translation(k);
      continue;
    }
    if (qa > qc) {
      std::swap(qa, qc);
      qb = -qb;
      g = g * Mat2::S();
      continue;
    }
    break;
  }
  Mat2 D = g.inverse();  // point map: D z in F_std
  // F_std splits across the triangles (inf,-1,0) and (inf,0,1)
  if (sgn(-qb / (2 * qa)) < 0) D = Mat2::translation(1) * D;
  return D;
}

// h in Gamma_1(5) (as a point map) with h z in F, for the rational point
// data (x, y2). PSL2(Z) = union of Gamma' t_k rho^i over the 12 pairs.
Mat2 point_map_into_F(const Rat& x, const Rat& y2) {
  Mat2 D = reduce_point_to_base_triangle(x, y2);
  for (const Mat2& tk : kTriangleMaps) {
    Mat2 tr = tk;
    for (int i = 0; i < 3; ++i) {
      Mat2 h = tr * D;
      if (in_gamma15(h)) return h;
      tr = tr * kRho;
    }
  }
  throw std::runtime_error("point_map_into_F: no coset matched");
}

// side of F whose closure contains the point, or -1 for interior
int boundary_side(const Rat& x, const Rat& y2) {
  const auto& fd = fund_domain();
  if (x == 0) return 0;
  if (x == 1) return 5;
  for (int i = 0; i < 4; ++i) {
    const auto& [c, r] = fd.circles[i];
    if ((x - c) * (x - c) + y2 == r * r) return i + 1;
  }
  return -1;
}

std::pair<Rat, Rat> point_of_form(const BQF& q) {
  // z_q = (-b + i sqrt(|d|)) / (2a) for positive definite q
  Rat x = make_rat(-q.b, 2 * q.a);
  Rat y2 = make_rat(-q.disc(), 4 * q.a * q.a);
  return {x, y2};
}

}  // namespace

const FundDomain& fund_domain() {
  static const FundDomain fd = {
      {Rat(0), Rat(1, 3), Rat(2, 5), Rat(1, 2), Rat(1)},
      {{{Rat(1, 6), Rat(1, 6)},
        {Rat(11, 30), Rat(1, 30)},
        {Rat(9, 20), Rat(1, 20)},
        {Rat(3, 4), Rat(1, 4)}}},
      kPairings};
  return fd;
}

bool in_gamma15(const Mat2& g) {
  if (g.det() != 1) throw std::domain_error("in_gamma15: det must be 1");
  auto mod5 = [](const Int& x) {
    Int r;
    mpz_mod_ui(r.get_mpz_t(), x.get_mpz_t(), 5);
    return r;
  };
  for (int s : {1, -1}) {
    if (mod5(s * g.a) == 1 && mod5(s * g.d) == 1 && mod5(s * g.c) == 0)
      return true;
  }
  return false;
}

const std::vector<Mat2>& coset_reps() { return kCosets; }

int arc_index(const QuadIrr& rho) {
  int i = 0;
  for (const Rat& cut : cuts()) {
    int s = qirr_cmp(rho, cut);
    if (s == 0) throw std::domain_error("cusp endpoint");
    if (s < 0) return i;
    ++i;
  }
  return 5;
}

int arc_index(const ExtReal& rho) {
  if (rho.infinite) throw std::domain_error("cusp endpoint");
  return arc_index(rho.value);
}

HVec h_function(const ExtReal& rho) { return kHValues[arc_index(rho)]; }

bool intersects_F(const BQF& q) {
  auto [rp, rm] = roots(q);
  return arc_index(rp) != arc_index(rm);
}

bool point_in_F(const Rat& x, const Rat& y2) {
  if (sgn(x) < 0 || x > 1) return false;
  for (const auto& [c, r] : fund_domain().circles) {
    if ((x - c) * (x - c) + y2 < r * r) return false;
  }
  return true;
}

GeodesicCycle traverse(const BQF& q0) {
  Int d = q0.disc();
  if (sgn(d) <= 0 || is_square(d))
    throw std::domain_error("traverse: discriminant must be positive nonsquare");

  BQF start = q0;
  bool crossing = false;
  try {
    crossing = q0.a != 0 && intersects_F(q0);
  } catch (const std::domain_error&) {
    throw std::domain_error("non-closed geodesic: root at a cusp vertex");
  }
  if (!crossing) {
    // move the geodesic's top point into F by a Gamma' element
    if (q0.a == 0) throw std::domain_error("non-closed geodesic: a = 0");
    Rat x0 = make_rat(-q0.b, 2 * q0.a);
    Rat r2 = make_rat(d, 4 * q0.a * q0.a);
    Mat2 h = point_map_into_F(x0, r2);
    start = act(q0, h.inverse());
    if (start.a == 0 || !intersects_F(start)) {
      // the moved geodesic only touches the closed boundary; one of the
      // neighboring tiles holds a proper chord
      bool found = false;
      for (const Mat2& p : kPairings) {
        for (const Mat2& m : {p, p.inverse()}) {
          BQF cand = act(start, m.inverse());
          if (cand.a != 0 && intersects_F(cand)) {
            start = cand;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) throw std::domain_error("non-closed geodesic: tangent start");
    }
  }

  GeodesicCycle cyc;
  cyc.disc = d;
  std::array<Int, 3> twice_h = {0, 0, 0};
  BQF cur = start;
  constexpr int kMaxSteps = 1 << 20;
  for (int step = 0; step < kMaxSteps; ++step) {
    if (cur.a == 0) throw std::domain_error("non-closed geodesic: a = 0");
    auto [rp, rm] = roots(cur);
    int ap, am;
    try {
      ap = arc_index(rp);
      am = arc_index(rm);
    } catch (const std::domain_error&) {
      throw std::domain_error("non-closed geodesic: root at a cusp vertex");
    }
    cyc.forms.push_back(cur);
    for (int i = 0; i < 3; ++i)
      twice_h[i] += kHValues[am][i] - kHValues[ap][i];
    // exit through the side of the rho^- arc; continue across its pairing
    Mat2 gam = kPairings[am];
    Mat2 stepm = gam.inverse();
    cyc.steps.push_back(stepm);
    cur = act(cur, stepm);
    if (cur == cyc.forms.front()) {
      for (int i = 0; i < 3; ++i) {
        if (twice_h[i] % 2 != 0)
          throw std::runtime_error("traverse: non-integral homology");
        cyc.homology[i] = twice_h[i] / 2;
      }
      return cyc;
    }
  }
  throw std::runtime_error("traverse: walk did not close");
}

ReducedPoint reduce_point_to_F(const OrientedPoint& z) {
  BQF q = z.form;
  if (sgn(q.disc()) >= 0)
    throw std::domain_error("reduce_point_to_F: form not definite");
  bool negd = sgn(q.a) < 0;
  if (negd) q = -q;  // same point; orientation tracked by the caller

  auto [x, y2] = point_of_form(q);
  Mat2 h = point_map_into_F(x, y2);
  Mat2 gamma = h.inverse();
  BQF qf = act(q, gamma);

  // boundary ties: move paired-side representatives to the smaller side
  for (int guard = 0; guard < 4; ++guard) {
    auto [fx, fy2] = point_of_form(qf);
    if (!point_in_F(fx, fy2))
      throw std::runtime_error("reduce_point_to_F: point left F");
    int side = boundary_side(fx, fy2);
    if (side < 3) break;  // interior or already on a side of index 0..2
    Mat2 move = kPairings[side];  // point map side -> smaller partner side
    gamma = gamma * move.inverse();
    qf = act(q, gamma);
  }
  if (negd) {
    // restore the caller's negative-definite coefficients
    return {-qf, gamma};
  }
  return {qf, gamma};
}

Rat winding(const OrientedPoint& x, const GeodesicCycle& cyc) {
  const BQF& pf = x.form;
  if (!pf.positive_definite())
    throw std::domain_error("winding: point form must be positive definite");
  auto [px, py2] = point_of_form(pf);
  if (!point_in_F(px, py2))
    throw std::domain_error("winding: point not reduced into F");
  Rat z2 = make_rat(pf.c, pf.a);  // |z|^2
  Rat rex = make_rat(-pf.b, 2 * pf.a);  // Re z
  Rat total(0);
  for (const BQF& f : cyc.forms) {
    // compare radius^2 = d'/(4a'^2) against |z + b'/(2a')|^2, exactly
    Rat r2 = make_rat(cyc.disc, 4 * f.a * f.a);
    Rat dist2 = z2 + make_rat(f.b, f.a) * rex + make_rat(f.b * f.b, 4 * f.a * f.a);
    int s = r2 == dist2 ? 0 : (r2 > dist2 ? 1 : -1);
    total += Rat(sgn(f.a) * (s + 1), 2);
  }
  return total;
}

std::vector<OrbitPoint> class_orbit_points(const FormClass& C) {
  const BQF& q = C.rep;
  if (sgn(q.disc()) >= 0)
    throw std::domain_error("class_orbit_points: class not definite");
  std::vector<Mat2> auts;
  for (const Mat2& m : automorphisms(q)) auts.push_back(m.psl_normal());
  std::sort(auts.begin(), auts.end(), [](const Mat2& a, const Mat2& b) {
    return a.str() < b.str();
  });
  auts.erase(std::unique(auts.begin(), auts.end()), auts.end());

  std::vector<Mat2> kept;
  for (const Mat2& gj : coset_reps()) {
    bool dup = false;
    for (const Mat2& gi : kept) {
      for (const Mat2& al : auts) {
        if (in_gamma15((gi.inverse() * al * gj))) {
          dup = true;
          break;
        }
      }
      if (dup) break;
    }
    if (!dup) kept.push_back(gj);
  }

  std::vector<OrbitPoint> out;
  out.reserve(kept.size());
  for (const Mat2& g : kept) {
    BQF qg = act(q, g);
    BQF pos = reduce_point_to_F({qg}).form;
    BQF neg = reduce_point_to_F({-tilde(qg)}).form;
    out.push_back({pos, neg});
  }
  return out;
}

}  // namespace geolink
