#pragma once

#include "geolink/numeric.hpp"

namespace geolink {

// Integer 2x2 matrix (a b; c d).
struct Mat2 {
  Int a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }
  static Mat2 translation(const Int& k) { return {1, k, 0, 1}; }
  static Mat2 S() { return {0, -1, 1, 0}; }

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }

  // inverse for det = +-1 only
  Mat2 inverse() const {
    Int dt = det();
    if (dt == 1) return {d, -b, -c, a};
    if (dt == -1) return {-d, b, c, -a};
    throw std::domain_error("Mat2::inverse requires det = +-1");
  }

  Mat2 transpose() const { return {a, c, b, d}; }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }

  // canonical representative in PSL2: first nonzero of (a,b,c) positive
  Mat2 psl_normal() const {
    if (sgn(a) < 0 || (a == 0 && (sgn(b) < 0 || (b == 0 && sgn(c) < 0))))
      return -*this;
    return *this;
  }

  std::string str() const {
    return a.get_str() + "," + b.get_str() + "," + c.get_str() + "," +
           d.get_str();
  }
};

Mat2 parse_mat2(const std::string& s);  // "a,b,c,d"

}  // namespace geolink
