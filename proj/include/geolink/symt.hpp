#pragma once

#include <utility>

#include "geolink/mat2.hpp"

namespace geolink {

// Symmetric 2x2 matrix (t1 t0; t0 t2) with rational entries.
struct SymT {
  Rat t1, t0, t2;

  SymT() = default;
  SymT(Rat a, Rat b, Rat c) : t1(std::move(a)), t0(std::move(b)), t2(std::move(c)) {}

  Rat det() const { return t1 * t2 - t0 * t0; }
  Rat trace() const { return t1 + t2; }
  bool positive_definite() const { return sgn(t1) > 0 && sgn(det()) > 0; }
  bool indefinite() const { return sgn(det()) < 0; }
  // t1, t2 integers and 2*t0 an integer
  bool half_integral() const {
    return is_integer(t1) && is_integer(t2) && is_integer(Rat(2) * t0);
  }

  // gamma^T T gamma
  SymT conjugate(const Mat2& g) const;

  SymT flip_t0() const { return {t1, -t0, t2}; }

  bool operator==(const SymT& o) const {
    return t1 == o.t1 && t0 == o.t0 && t2 == o.t2;
  }

  std::string str() const {
    return rat_to_string(t1) + "," + rat_to_string(t0) + "," + rat_to_string(t2);
  }
};

SymT parse_symt(const std::string& s);  // "t1,t0,t2"

// Delta(T) = sqrt((tr T)^2 - 4 det T): returns the exact radicand and its
// numerical square root. Throws on negative radicand (complex eigenvalues).
struct Delta {
  Rat radicand;
  double value;
};
Delta delta(const SymT& T);

// Reduction of positive definite T by SL2(Z): returns T_red = g^T T g with
// 2|t0| <= t1 <= t2 and t0 >= 0, where `flipped` records whether a final
// t0 -> -t0 sign normalization was applied (it is not an SL2 move and the
// linking coefficients change sign under it).
struct ReducedSymT {
  SymT reduced;
  Mat2 gamma;
  bool flipped;
};
ReducedSymT reduce_sym(const SymT& T);

}  // namespace geolink
