#include "geolink/symt.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace geolink {

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}
}  // namespace

Mat2 parse_mat2(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4)
    throw std::invalid_argument("matrix literal must be \"a,b,c,d\": " + s);
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]),
          parse_int(parts[3])};
}

SymT parse_symt(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("symmetric matrix literal must be \"t1,t0,t2\": " + s);
  return {parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2])};
}

SymT SymT::conjugate(const Mat2& g) const {
  // columns of g are (a,c) and (b,d); entries of g^T T g
  Rat ga(g.a), gb(g.b), gc(g.c), gd(g.d);
  Rat n1 = t1 * ga * ga + 2 * t0 * ga * gc + t2 * gc * gc;
  Rat n2 = t1 * gb * gb + 2 * t0 * gb * gd + t2 * gd * gd;
  Rat n0 = t1 * ga * gb + t0 * (ga * gd + gb * gc) + t2 * gc * gd;
  return {n1, n0, n2};
}

Delta delta(const SymT& T) {
  Rat rad = T.trace() * T.trace() - 4 * T.det();
  if (sgn(rad) < 0)
    throw std::domain_error("delta: complex eigenvalues (negative radicand)");
  return {rad, std::sqrt(rad.get_d())};
}

ReducedSymT reduce_sym(const SymT& T) {
  if (!T.positive_definite())
    throw std::domain_error("reduce_sym: input not positive definite");
  SymT cur = T;
  Mat2 g = Mat2::identity();
  for (;;) {
    // center: 2|t0| <= t1 via T -> translation
    Int k = round_nearest(-cur.t0 / cur.t1);
    if (k != 0) {
      Mat2 m = Mat2::translation(k);
      cur = cur.conjugate(m);
      g = g * m;
      continue;
    }
    if (cur.t1 > cur.t2) {
      Mat2 m = Mat2::S();
      cur = cur.conjugate(m);
      g = g * m;
      continue;
    }
    if (2 * cur.t0 > cur.t1 || -2 * cur.t0 > cur.t1) {
      // |t0| = t1/2 boundary after rounding ties; renormalize once more
      Mat2 m = Mat2::translation(sgn(cur.t0) > 0 ? Int(-1) : Int(1));
      cur = cur.conjugate(m);
      g = g * m;
      continue;
    }
    break;
  }
  bool flipped = false;
  if (sgn(cur.t0) < 0) {
    cur = cur.flip_t0();
    flipped = true;
  }
  return {cur, g, flipped};
}

}  // namespace geolink
