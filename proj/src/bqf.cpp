#include "geolink/bqf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace geolink {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

void extgcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
}

// exact floor((b + sqrt(d)) / n) for nonsquare d > 0, n != 0
Int floor_shift_sqrt(const Int& b, const Int& d, const Int& n) {
  Int s = isqrt(d);  // s < sqrt(d) < s+1
  if (sgn(n) > 0) return floor_div(b + s, n);
  // negative n: value in ((b+s+1)/n, (b+s)/n)
  Int f = floor_div(b + s, n);
  if ((b + s) % n == 0) f -= 1;
  return f;
}

}  // namespace

BQF parse_bqf(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("form literal must be \"a,b,c\": " + s);
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
}

BQF act(const BQF& q, const Mat2& h) {
  Int na = q.value(h.a, h.c);
  Int nc = q.value(h.b, h.d);
  Int nb = 2 * q.a * h.a * h.b + q.b * (h.a * h.d + h.b * h.c) +
           2 * q.c * h.c * h.d;
  return {na, nb, nc};
}

std::pair<QuadIrr, QuadIrr> roots(const BQF& q) {
  if (q.a == 0)
    throw std::domain_error("roots: a = 0, geodesic through infinity");
  Int d = q.disc();
  if (sgn(d) <= 0) throw std::domain_error("roots: form not indefinite");
  return {QuadIrr(-q.b, 1, 2 * q.a, d), QuadIrr(-q.b, -1, 2 * q.a, d)};
}

ReducedBQF reduce_posdef(const BQF& q) {
  if (!q.positive_definite())
    throw std::domain_error("reduce_posdef: form not positive definite");
  BQF cur = q;
  Mat2 g = Mat2::identity();
  for (;;) {
    Int k = round_nearest(make_rat(-cur.b, 2 * cur.a));
    if (k != 0) {
      Mat2 m = Mat2::translation(k);
      cur = act(cur, m);
      g = g * m;
    }
    if (cur.a > cur.c) {
      cur = act(cur, Mat2::S());
      g = g * Mat2::S();
      continue;
    }
    if (cur.b > cur.a || -cur.b > cur.a) continue;  // re-center after tie
    break;
  }
  if (sgn(cur.b) < 0 && (-cur.b == cur.a || cur.a == cur.c)) {
    Mat2 m = (-cur.b == cur.a) ? Mat2::translation(1) : Mat2::S();
    cur = act(cur, m);
    g = g * m;
  }
  return {cur, g};
}

const std::vector<FormClass>& classes(const Int& d) {
  static std::mutex mu;
  static std::map<Int, std::vector<FormClass>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  if (sgn(d) >= 0) throw std::domain_error("classes: discriminant must be negative");
  Int m4;
  mpz_mod_ui(m4.get_mpz_t(), d.get_mpz_t(), 4);
  if (m4 != 0 && m4 != 1)
    throw std::domain_error("classes: d must be 0 or 1 mod 4");

  std::vector<FormClass> out;
  Int bmax = isqrt(Int(-d / 3));
  for (Int b = -bmax; b <= bmax; ++b) {
    if ((b - d) % 2 != 0) continue;
    Int n = (b * b - d) / 4;
    Int ab = b < 0 ? Int(-b) : b;
    for (Int a = std::max(ab, Int(1)); a * a <= n; ++a) {
      if (n % a != 0) continue;
      Int c = n / a;
      if (sgn(b) < 0 && (-b == a || a == c)) continue;  // mirror duplicate
      BQF q{a, b, c};
      out.push_back({q, d, q.content()});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FormClass& x, const FormClass& y) { return x.rep < y.rep; });
  return cache.emplace(d, std::move(out)).first->second;
}

FormClass compose(const BQF& q1, const BQF& q2) {
  Int d = q1.disc();
  if (q2.disc() != d)
    throw std::domain_error("compose: mismatched discriminants");
  if (!q1.is_primitive() || !q2.is_primitive())
    throw std::domain_error("compose: imprimitive input");
  if (!q1.positive_definite() || !q2.positive_definite())
    throw std::domain_error("compose: forms must be positive definite");

  // replace q2 by an equivalent form whose leading coefficient is coprime
  // to a1 (primitive forms represent such values on primitive vectors)
  BQF f2 = q2;
  if (gcd(q1.a, q2.a) != 1) {
    bool found = false;
    for (Int box = 1; box <= 64 && !found; ++box) {
      for (Int x = -box; x <= box && !found; ++x) {
        for (Int y = -box; y <= box && !found; ++y) {
          if ((x < 0 ? -x : x) != box && (y < 0 ? -y : y) != box) continue;
          if (gcd(x < 0 ? Int(-x) : x, y < 0 ? Int(-y) : y) != 1) continue;
          Int v = q2.value(x, y);
          if (v == 0 || gcd(v, q1.a) != 1) continue;
          Int g, s, t;
          extgcd(x, y, g, s, t);
          Mat2 m{x, -t, y, s};
          f2 = act(q2, m);
          found = true;
        }
      }
    }
    if (!found) throw std::runtime_error("compose: no coprime representative found");
  }
  // CRT: B = b1 mod 2a1, B = b2' mod 2a2'  (solvable: b1 = b2' = d mod 2)
  Int a1 = q1.a, a2 = f2.a;
  Int g, u, v;
  extgcd(2 * a1, 2 * a2, g, u, v);
  Int diff = f2.b - q1.b;
  if (diff % g != 0) throw std::runtime_error("compose: CRT failure");
  Int A = a1 * a2;
  Int mod = 4 * a1 * a2 / g;
  Int B = q1.b + 2 * a1 * u * (diff / g);
  mpz_mod(B.get_mpz_t(), B.get_mpz_t(), mod.get_mpz_t());
  Int C4 = B * B - d;
  if (C4 % (4 * A) != 0) throw std::runtime_error("compose: invalid composite");
  BQF out{A, B, C4 / (4 * A)};
  return {reduce_posdef(out).reduced, d, 1};
}

FormClass double_inverse(const BQF& q0) {
  if (!q0.positive_definite())
    throw std::domain_error("double_inverse: form not positive definite");
  if (!q0.is_primitive())
    throw std::domain_error("double_inverse: imprimitive input");
  const Int &a = q0.a, &b = q0.b, &c = q0.c;
  Int d = q0.disc();

  // generators of the ideal square in the basis (1, w), w = (-b+sqrt(d))/2
  std::array<std::array<Int, 2>, 3> rows = {{{a * a, 0}, {0, a}, {-c * a, -b}}};

  // Hermite basis ((e, f), (0, h)) of the row span
  auto reduce_pair = [](std::array<Int, 2>& r0, std::array<Int, 2>& r1) {
    while (r1[0] != 0) {
      Int k = floor_div(r0[0], r1[0]);
      r0 = {r0[0] - k * r1[0], r0[1] - k * r1[1]};
      std::swap(r0, r1);
    }
  };
  reduce_pair(rows[0], rows[1]);
  reduce_pair(rows[0], rows[2]);
  // now rows[1][0] == rows[2][0] == 0 possible only after also clearing rows[2]
  Int g, x, y;
  extgcd(rows[1][1], rows[2][1], g, x, y);
  std::array<Int, 2> b1 = rows[0];
  std::array<Int, 2> b2 = {0, g};
  if (b1[0] < 0) b1 = {-b1[0], -b1[1]};
  if (b2[1] < 0) b2 = {0, -b2[1]};

  // positively oriented w.r.t. the (1, w) frame
  if (sgn(b1[0] * b2[1] - b1[1] * b2[0]) < 0) b2 = {-b2[0], -b2[1]};

  // norm form N(u + v w) = u^2 - b uv + ac v^2, divided by a^2
  auto norm = [&](const std::array<Int, 2>& v) -> Int {
    return v[0] * v[0] - b * v[0] * v[1] + a * c * v[1] * v[1];
  };
  Int A = norm(b1), C = norm(b2);
  Int Bc = norm({b1[0] + b2[0], b1[1] + b2[1]}) - A - C;
  Int a2 = a * a;
  if (A % a2 != 0 || Bc % a2 != 0 || C % a2 != 0)
    throw std::runtime_error("double_inverse: norm form not divisible by a^2");
  BQF nf{A / a2, Bc / a2, C / a2};
  if (nf.disc() != d) throw std::runtime_error("double_inverse: wrong discriminant");
  return {reduce_posdef(nf).reduced, d, 1};
}

std::vector<std::array<Int, 2>> represent_solutions(const BQF& q, const Int& n) {
  std::vector<std::array<Int, 2>> out;
  if (sgn(n) < 0) return out;
  if (n == 0) {
    out.push_back({0, 0});
    return out;
  }
  Int d = q.disc();  // < 0
  Int ybound = isqrt(4 * q.a * n / -d);
  for (Int yy = -ybound; yy <= ybound; ++yy) {
    // a x^2 + (b y) x + (c y^2 - n) = 0
    Int D = q.b * q.b * yy * yy - 4 * q.a * (q.c * yy * yy - n);
    if (sgn(D) < 0) continue;
    Int sD = isqrt(D);
    if (sD * sD != D) continue;
    for (int s : {1, -1}) {
      if (sD == 0 && s < 0) continue;
      Int num = -q.b * yy + s * sD;
      if (num % (2 * q.a) != 0) continue;
      out.push_back({num / (2 * q.a), yy});
    }
  }
  return out;
}

std::vector<Mat2> automorphisms(const BQF& q) {
  if (sgn(q.disc()) >= 0)
    throw std::domain_error("automorphisms: form not definite");
  BQF f = sgn(q.a) > 0 ? q : -q;
  std::vector<Mat2> out;
  auto cols1 = represent_solutions(f, f.a);
  auto cols2 = represent_solutions(f, f.c);
  for (const auto& u : cols1) {
    for (const auto& v : cols2) {
      if (u[0] * v[1] - u[1] * v[0] != 1) continue;
      if (f.bilinear(u, v) != f.b) continue;
      out.push_back({u[0], v[0], u[1], v[1]});
    }
  }
  return out;
}

namespace {

bool indef_reduced(const BQF& q, const Int& d) {
  // 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b
  if (sgn(q.b) <= 0) return false;
  Int a2 = 2 * (q.a < 0 ? Int(-q.a) : q.a);
  // b < sqrt(d)  <=>  b^2 < d
  if (q.b * q.b >= d) return false;
  // sqrt(d) - b < 2|a|  <=>  d < (2|a| + b)^2
  if ((a2 + q.b) * (a2 + q.b) <= d) return false;
  // 2|a| < sqrt(d) + b  <=>  (2|a| - b)^2 < d  (when 2|a| > b; else trivially true)
  if (a2 > q.b && (a2 - q.b) * (a2 - q.b) >= d) return false;
  return true;
}

// one reduction step q -> q.(0,-1;1,m), recorded in g
BQF indef_rho(const BQF& q, const Int& d, Mat2& g) {
  Int m = floor_shift_sqrt(q.b, d, 2 * q.c);
  if (sgn(q.c) < 0) m += 1;
  Mat2 step{0, -1, 1, m};
  g = g * step;
  return act(q, step);
}

}  // namespace

std::optional<Mat2> equivalent_psl2z(const BQF& q1, const BQF& q2) {
  if (q1.disc() != q2.disc()) return std::nullopt;
  Int d = q1.disc();
  if (sgn(d) < 0) {
    BQF f1 = q1, f2 = q2;
    bool negd = sgn(q1.a) < 0;
    if (negd != (sgn(q2.a) < 0)) return std::nullopt;
    if (negd) {
      f1 = -f1;
      f2 = -f2;
    }
    auto r1 = reduce_posdef(f1), r2 = reduce_posdef(f2);
    if (!(r1.reduced == r2.reduced)) return std::nullopt;
    return r1.gamma * r2.gamma.inverse();
  }
  if (d == 0 || is_square(d))
    throw std::domain_error("equivalent_psl2z: square discriminant rejected");

  auto reduce_indef = [&](BQF q, Mat2& g) {
    int guard = 0;
    while (!indef_reduced(q, d)) {
      q = indef_rho(q, d, g);
      if (++guard > 10000)
        throw std::runtime_error("indefinite reduction did not terminate");
    }
    return q;
  };
  Mat2 g1 = Mat2::identity(), g2 = Mat2::identity();
  BQF r1 = reduce_indef(q1, g1);
  BQF r2 = reduce_indef(q2, g2);
  // walk the cycle of r1 looking for r2
  BQF cur = r1;
  Mat2 walk = Mat2::identity();
  int guard = 0;
  do {
    if (cur == r2) return g1 * walk * g2.inverse();
    cur = indef_rho(cur, d, walk);
    if (++guard > 200000)
      throw std::runtime_error("indefinite cycle walk did not close");
  } while (!(cur == r1));
  return std::nullopt;
}

LatticeLq lattice_Lq(const BQF& q) {
  if (!q.is_primitive())
    throw std::domain_error("lattice_Lq: imprimitive input");
  if (!q.positive_definite())
    throw std::domain_error("lattice_Lq: form not positive definite");
  const Int &a = q.a, &b = q.b, &c = q.c;
  // kernel of (x,y,z) -> b x + a y - c z on Z^3 (coefficients coprime)
  Int l1 = b, l2 = a, l3 = -c;
  Int g1, s, t;
  extgcd(l1, l2, g1, s, t);
  Int g2, u, w;
  extgcd(g1, l3, g2, u, w);
  if (g2 != 1 && g2 != -1)
    throw std::runtime_error("lattice_Lq: linear form not primitive");
  std::array<Int, 3> k1 = {-l2 / g1, l1 / g1, 0};
  std::array<Int, 3> k2 = {-s * l3, -t * l3, g1};

  auto quad = [](const std::array<Int, 3>& v) -> Int {  // Q = x^2 + yz on L'
    return v[0] * v[0] + v[1] * v[2];
  };
  auto bil = [&](const std::array<Int, 3>& v, const std::array<Int, 3>& w2) -> Int {
    return quad({v[0] + w2[0], v[1] + w2[1], v[2] + w2[2]}) - quad(v) - quad(w2);
  };
  // orientation: det(k1, k2, X_q) > 0 with X_q = (b, -2c, 2a) in (x,y,z)
  std::array<Int, 3> xq = {b, -2 * c, 2 * a};
  Int det = k1[0] * (k2[1] * xq[2] - k2[2] * xq[1]) -
            k1[1] * (k2[0] * xq[2] - k2[2] * xq[0]) +
            k1[2] * (k2[0] * xq[1] - k2[1] * xq[0]);
  if (sgn(det) < 0) k2 = {-k2[0], -k2[1], -k2[2]};

  BQF gram{quad(k1), bil(k1, k2), quad(k2)};
  if (gram.disc() != q.disc())
    throw std::runtime_error("lattice_Lq: gram discriminant mismatch");
  return {k1, k2, gram};
}

}  // namespace geolink
