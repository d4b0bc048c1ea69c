#pragma once

#include "geolink/numeric.hpp"

namespace geolink {

// Exact real quadratic irrational (p + q*sqrt(d)) / r.
// Canonical: r > 0, gcd(p,q,r) = 1, d >= 0 not a perfect square unless 0,
// square factors of d folded into q, and q = 0 implies d = 0.
struct QuadIrr {
  Int p{0}, q{0}, r{1}, d{0};

  QuadIrr() = default;
  QuadIrr(Int p_, Int q_, Int r_, Int d_);

  static QuadIrr from_rat(const Rat& x) {
    return QuadIrr(x.get_num(), 0, x.get_den(), 0);
  }
  static QuadIrr sqrt_of(const Int& d) { return QuadIrr(0, 1, 1, d); }

  bool is_rational() const { return q == 0; }
  Rat rational_part() const { return make_rat(p, r); }

  int sign() const;
  QuadIrr operator-() const { return QuadIrr(-p, -q, r, d); }
  QuadIrr abs() const { return sign() >= 0 ? *this : -*this; }
  // conjugate sqrt(d) -> -sqrt(d)
  QuadIrr conj() const { return QuadIrr(p, -q, r, d); }

  QuadIrr operator+(const QuadIrr& o) const;
  QuadIrr operator-(const QuadIrr& o) const;
  QuadIrr operator*(const QuadIrr& o) const;
  QuadIrr operator*(const Rat& s) const;

  bool operator==(const QuadIrr& o) const {
    return p == o.p && q == o.q && r == o.r && d == o.d;
  }

  double to_double() const;
  std::string str() const;
};

// Exact sign of x - y via integer arithmetic only; handles distinct radicals.
int qirr_cmp(const QuadIrr& x, const QuadIrr& y);

inline int qirr_cmp(const QuadIrr& x, const Rat& y) {
  return qirr_cmp(x, QuadIrr::from_rat(y));
}

// QuadIrr or the symbol +infinity (compares above everything).
struct ExtReal {
  bool infinite{false};
  QuadIrr value;

  static ExtReal inf() { return ExtReal{true, {}}; }
  static ExtReal of(QuadIrr v) { return ExtReal{false, std::move(v)}; }
};

inline int cmp(const ExtReal& x, const ExtReal& y) {
  if (x.infinite) return y.infinite ? 0 : 1;
  if (y.infinite) return -1;
  return qirr_cmp(x.value, y.value);
}

}  // namespace geolink
