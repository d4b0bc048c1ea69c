#include "geolink/completion.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace geolink {

namespace {

constexpr double kPi = 3.14159265358979323846;

// adaptive Simpson with absolute tolerance and a recursion floor
struct Adaptive {
  const std::function<double(double)>& f;
  double tol;
  double err = 0.0;
  int max_depth;

  double run(double a, double b) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
      err += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double& err_out) {
  Adaptive ad{f, tol, 0.0, 40};
  double v = ad.run(a, b);
  err_out = ad.err;
  return v;
}

// memoized scaled Bessel values, keyed on the argument's bit pattern
class K0Cache {
 public:
  bool lookup(double x, double tol, double& val, double& err) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key(x));
    if (it == map_.end() || it->second.err > tol) return false;
    val = it->second.val;
    err = it->second.err;
    return true;
  }
  void store(double x, double val, double err) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.try_emplace(key(x), Entry{val, err});
    if (!inserted && err < it->second.err) it->second = {val, err};
  }

 private:
  struct Entry {
    double val, err;
  };
  static uint64_t key(double x) {
    uint64_t k;
    static_assert(sizeof(k) == sizeof(x));
    std::memcpy(&k, &x, sizeof(k));
    return k;
  }
  std::mutex mu_;
  std::unordered_map<uint64_t, Entry> map_;
};

K0Cache& k0_cache() {
  static K0Cache cache;
  return cache;
}

}  // namespace

RealTol bessel_k0_scaled(double x, double tol) {
  if (!(x > 0)) throw std::domain_error("bessel_k0: requires x > 0");
  if (!(tol > 0)) throw std::domain_error("bessel_k0: requires tol > 0");
  double val, err;
  if (k0_cache().lookup(x, tol, val, err)) return {val, err};

  // integrand g(t) = exp(-x (cosh t - 1)); cut where the unscaled integrand
  // falls below tol*x/10 and the closed-form tail bound
  // exp(-x(cosh T - 1)) / (x sinh T) is below tol/2
  double L = std::log(10.0 / (tol * x)) / x;  // cosh T - 1 >= max(L, ...)
  double T = std::acosh(1.0 + std::max(L, 1.0));
  for (int i = 0; i < 60; ++i) {
    double tail = std::exp(-x * (std::cosh(T) - 1.0)) / (x * std::sinh(T));
    if (tail < 0.5 * tol) break;
    T += 0.5;
  }
  double tail_bound = std::exp(-x * (std::cosh(T) - 1.0)) / (x * std::sinh(T));

  std::function<double(double)> g = [x](double t) {
    return std::exp(-x * (std::cosh(t) - 1.0));
  };
  double qerr = 0.0;
  val = integrate(g, 0.0, T, 0.25 * tol, qerr);
  err = qerr + tail_bound;
  k0_cache().store(x, val, err);
  return {val, err};
}

RealTol bessel_k0(double x, double tol) {
  double scale = std::exp(-x);
  if (scale == 0.0) return {0.0, tol};
  RealTol s = bessel_k0_scaled(x, tol / scale);
  return {scale * s.value, scale * s.err};
}

RealTol w_star(double x1, double x2, double tol) {
  if (!(x2 > 0)) throw std::domain_error("w_star: requires x2 > 0");
  if (!(tol > 0)) throw std::domain_error("w_star: requires tol > 0");
  double delta = std::sqrt(x1 * x1 + x2);
  double mu = 2.0 * kPi * (delta - x1);  // > 0 since delta > |x1|
  double pref = 0.5 * std::sqrt(x2);

  // exp(2 pi t x1) K0(2 pi t delta) <= exp(-mu t) / (2 sqrt(t delta)):
  // integrate the bound in closed form to certify the outer cut
  auto tail = [&](double tm) {
    return pref * std::exp(-mu * tm) / (2.0 * std::sqrt(tm * delta) * mu);
  };
  double tmax = 1.0;
  while (tail(tmax) >= 0.25 * tol && tmax < 1e7) tmax *= 1.5;

  // integrand via the scaled Bessel: exp(-mu t) * K0e(2 pi t delta)
  double inner_tol = 0.25 * tol / (pref * std::max(tmax - 1.0, 1e-9));
  std::function<double(double)> f = [&](double t) {
    RealTol k = bessel_k0_scaled(2.0 * kPi * t * delta, inner_tol);
    return std::exp(-mu * t) * k.value;
  };
  double qerr = 0.0;
  double v = integrate(f, 1.0, tmax, 0.25 * tol / pref, qerr);
  double err = pref * (qerr + inner_tol * (tmax - 1.0)) + tail(tmax);
  return {pref * v, err};
}

int epsilon_sign(const Vec2& X1, const Vec2& X2) {
  return sgn(X1[0] * X2[1] - X1[1] * X2[0]);
}

void Lattice11::validate() const {
  if (sgn(gram.det()) >= 0)
    throw std::domain_error("Lattice11: gram must be indefinite (det < 0)");
  if (is_square(Rat(-4) * gram.det()))
    throw std::domain_error("Lattice11: lattice must be anisotropic over Q");
  if (automorph.det() != 1)
    throw std::domain_error("Lattice11: automorph must have det 1");
  if (automorph.trace() <= 2)
    throw std::domain_error("Lattice11: automorph must have trace > 2");
  // gamma^T P gamma = P, exactly
  Rat a(automorph.a), b(automorph.b), c(automorph.c), d(automorph.d);
  Rat p11 = gram.t1, p12 = gram.t0, p22 = gram.t2;
  Rat n11 = p11 * a * a + 2 * p12 * a * c + p22 * c * c;
  Rat n12 = p11 * a * b + p12 * (a * d + b * c) + p22 * c * d;
  Rat n22 = p11 * b * b + 2 * p12 * b * d + p22 * d * d;
  if (n11 != p11 || n12 != p12 || n22 != p22)
    throw std::domain_error("Lattice11: gamma^T P gamma != P");
}

namespace {

struct EigenData {
  Int disc;            // (tr gamma)^2 - 4, nonsquare
  QuadIrr u1, u2;      // expanding left eigenrow (u1, u2)
  QuadIrr lambda;      // eigenvalue > 1
  Rat kappa;           // Q(x) = kappa * xi(x) * eta(x)
};

EigenData eigen_data(const Lattice11& lat) {
  const Mat2& g = lat.automorph;
  Int s = g.trace();
  Int D = s * s - 4;
  if (is_square(D))
    throw std::domain_error("rho_indef: automorph with rational eigenvalues");
  // left eigenrow for lambda: (c, lambda - a); c != 0 by anisotropy
  if (g.c == 0)
    throw std::domain_error("rho_indef: triangular automorph (isotropic)");
  EigenData e;
  e.disc = D;
  e.lambda = QuadIrr(s, 1, 2, D);
  e.u1 = QuadIrr::from_rat(Rat(g.c));
  e.u2 = QuadIrr(s - 2 * g.a, 1, 2, D);
  // Q(e1) = p11 = kappa * xi(e1) * eta(e1) = kappa * c^2
  e.kappa = lat.gram.t1 / Rat(g.c * g.c);
  if (sgn(e.kappa) == 0)
    throw std::domain_error("rho_indef: p11 = 0 (isotropic basis vector)");
  return e;
}

QuadIrr xi_of(const EigenData& e, const Rat& x1, const Rat& x2) {
  return e.u1 * x1 + e.u2 * x2;
}

// rational roots of q2 y^2 + q1 y + q0 = 0 (q2 != 0)
std::vector<Rat> rational_roots(const Rat& q2, const Rat& q1, const Rat& q0) {
  std::vector<Rat> out;
  Rat disc = q1 * q1 - 4 * q2 * q0;
  if (sgn(disc) < 0) return out;
  auto sq = sqrt_exact(disc);
  if (!sq) return out;
  out.push_back((-q1 + *sq) / (2 * q2));
  if (sgn(*sq) != 0) out.push_back((-q1 - *sq) / (2 * q2));
  return out;
}

Int lcm_den(const SymT& T) {
  Int l;
  mpz_lcm(l.get_mpz_t(), T.t1.get_den().get_mpz_t(),
          T.t2.get_den().get_mpz_t());
  Int l2;
  mpz_lcm(l2.get_mpz_t(), l.get_mpz_t(), Rat(2 * T.t0).get_den().get_mpz_t());
  return l2;
}

}  // namespace

Int rho_indef(const Lattice11& lat, const SymT& T, int window_start,
              int periods) {
  lat.validate();
  if (periods < 1) throw std::domain_error("rho_indef: periods must be >= 1");
  if (sgn(T.det()) >= 0) return 0;  // degenerate or definite
  const Rat &t1 = T.t1, &t0 = T.t0, &t2 = T.t2;
  if (sgn(t1) == 0) return 0;  // anisotropic: no nonzero vector of norm 0

  EigenData e = eigen_data(lat);
  const Rat &p11 = lat.gram.t1, &p12 = lat.gram.t0, &p22 = lat.gram.t2;
  auto quad = [&](const Rat& x, const Rat& y) -> Rat {
    return p11 * x * x + 2 * p12 * x * y + p22 * y * y;
  };

  // window bounds lambda^w0 <= |xi| < lambda^(w0+periods)
  QuadIrr lam_lo = QuadIrr::from_rat(Rat(1));
  QuadIrr lam_inv = e.lambda.conj();  // lambda^{-1}, since det gamma = 1
  for (int i = 0; i < std::abs(window_start); ++i)
    lam_lo = lam_lo * (window_start > 0 ? e.lambda : lam_inv);
  QuadIrr lam_hi = lam_lo;
  for (int i = 0; i < periods; ++i) lam_hi = lam_hi * e.lambda;

  // numeric box bound on integer coordinates of X1
  Rat pi1 = t1 / e.kappa;  // xi * eta product
  double xhi = lam_hi.to_double();
  double ehi = std::fabs(pi1.get_d()) / lam_lo.to_double();
  double u11 = e.u1.to_double(), u12 = e.u2.to_double();
  double u21 = u11, u22 = e.u2.conj().to_double();
  double duf = u11 * u22 - u12 * u21;
  double B1d = (std::fabs(u22) * xhi + std::fabs(u12) * ehi) / std::fabs(duf);
  double B2d = (std::fabs(u21) * xhi + std::fabs(u11) * ehi) / std::fabs(duf);
  if (B1d > 2e8 || B2d > 2e8)
    throw std::domain_error(
        "rho_indef: window too far from the fundamental domain for direct "
        "enumeration (coordinates grow like lambda^shift)");
  const Vec2& sh1 = lat.shift[0];
  const Vec2& sh2 = lat.shift[1];
  Int B1(static_cast<long>(B1d * 1.01 + std::fabs(sh1[0].get_d()) + 2));
  Int B2(static_cast<long>(B2d * 1.01 + std::fabs(sh1[1].get_d()) + 2));

  Int total = 0;
  Rat alpha = t0 / t1;
  for (Int n1 = -B1; n1 <= B1; ++n1) {
    Rat x1 = Rat(n1) + sh1[0];
    // Q(x1, y) = t1 as a quadratic in y
    Rat q2 = p22;
    Rat q1 = 2 * p12 * x1;
    Rat q0 = p11 * x1 * x1 - t1;
    std::vector<Rat> ys;
    if (sgn(q2) == 0) {
      if (sgn(q1) == 0) continue;  // p22 = 0 and p12 x1 = 0: no y solves
      ys.push_back(-q0 / q1);
    } else {
      ys = rational_roots(q2, q1, q0);
    }
    for (const Rat& y : ys) {
      if (!is_integer(y - sh1[1])) continue;
      Rat x2 = y;
      // window membership, exact
      QuadIrr ax = xi_of(e, x1, x2).abs();
      if (qirr_cmp(ax, lam_lo) < 0 || qirr_cmp(ax, lam_hi) >= 0) continue;
      // X2 = alpha X1 + beta w, with w spanning the kernel of X1^T P
      Rat r1 = p11 * x1 + p12 * x2;
      Rat r2 = p12 * x1 + p22 * x2;
      // integer primitive kernel vector of the row (r1, r2)
      Int den = r1.get_den() * r2.get_den();
      Int k1 = Rat(-r2 * den).get_num();
      Int k2 = Rat(r1 * den).get_num();
      Int gg = gcd(k1 < 0 ? Int(-k1) : k1, k2 < 0 ? Int(-k2) : k2);
      if (gg == 0) continue;
      k1 /= gg;
      k2 /= gg;
      Rat qw = quad(Rat(k1), Rat(k2));
      Rat beta2 = (t2 - alpha * alpha * t1) / qw;
      if (sgn(beta2) < 0) continue;
      auto beta = sqrt_exact(beta2);
      if (!beta) continue;
      int nsigns = sgn(*beta) == 0 ? 1 : 2;
      for (int si = 0; si < nsigns; ++si) {
        Rat b = si == 0 ? *beta : -*beta;
        Rat y1 = alpha * x1 + b * Rat(k1);
        Rat y2 = alpha * x2 + b * Rat(k2);
        if (!is_integer(y1 - sh2[0]) || !is_integer(y2 - sh2[1])) continue;
        total += sgn(x1 * y2 - x2 * y1);
      }
    }
  }
  if (total % periods != 0)
    throw std::runtime_error("rho_indef: window count not divisible by period span");
  return total / periods;
}

BetaResult beta_coeff(const SymT& T, const SymT& v,
                      const std::function<double(const SymT&)>& pos_rep,
                      const Lattice11& lat, const Int& N, double tol,
                      const Rat& index_factor, double delta_max_floor) {
  if (!v.positive_definite())
    throw std::domain_error("beta_coeff: v must be positive definite");
  if (sgn(N) <= 0) throw std::domain_error("beta_coeff: N must be positive");
  if (!(tol > 0)) throw std::domain_error("beta_coeff: tol must be positive");
  lat.validate();

  double v1 = v.t1.get_d(), v0 = v.t0.get_d(), v2 = v.t2.get_d();
  double vdet = v1 * v2 - v0 * v0;
  // entries of v^{-1}, bounding |T'_11| <= Delta w11 and |T'_22| <= Delta w22
  double w11 = v2 / vdet, w22 = v1 / vdet;
  double x1max = Rat(T.t1 * v.t1 + 2 * T.t0 * v.t0 + T.t2 * v.t2).get_d();
  if (x1max < 0) x1max = 0;
  double nd = N.get_d();

  // shell count x exponential decay, as in the convergence argument
  auto tail_bound = [&](double dmax) {
    double sum = 0.0;
    for (double k = std::floor(dmax); k < dmax + 400.0; k += 1.0) {
      double cnt = std::pow(2.0 * (k + 1.0) * nd * (w11 + w22) + 3.0, 3.0);
      double w = std::exp(-2.0 * kPi * (k - x1max));
      sum += cnt * w;
      if (cnt * w < 1e-300) break;
    }
    return sum;
  };
  double delta_max = x1max + 2.0;
  while (tail_bound(delta_max) >= 0.5 * tol && delta_max < 1e6)
    delta_max *= 1.5;
  if (delta_max < delta_max_floor) delta_max = delta_max_floor;

  long B1 = static_cast<long>(nd * delta_max * w11) + 1;
  long B2 = static_cast<long>(nd * delta_max * w22) + 1;
  double Tt1 = T.t1.get_d(), Tt0 = T.t0.get_d(), Tt2 = T.t2.get_d();

  // integer model of T over the common denominator 2 D N: the definiteness
  // filters below run entirely on machine integers
  Int Dden = lcm_den(T);
  if (Dden > 1000000 || N > 1000000)
    throw std::domain_error("beta_coeff: denominators too large");
  long Dl = static_cast<long>(Dden.get_si());
  long Nl = static_cast<long>(N.get_si());
  auto scaled = [&](const Rat& x) {
    Rat r = x * Dden;
    return static_cast<long>(r.get_num().get_si());
  };
  const long a1 = scaled(T.t1), a0 = scaled(2 * T.t0), a2 = scaled(T.t2);

  double acc = 0.0, err = 0.0;
  long terms = 0;
  double envelope = 1.0;
  for (long s1 = -B1; s1 <= B1; ++s1) {
    Rat tp1 = Rat(s1) / Rat(N);
    if (tp1 >= T.t1) continue;  // T'' needs t''_1 > 0
    for (long s2 = -B2; s2 <= B2; ++s2) {
      Rat tp2 = Rat(s2) / Rat(N);
      if (tp2 >= T.t2) continue;
      // s0 window from Delta(T'v)^2 <= delta_max^2, a quadratic in s0:
      //   (A + B s0)^2 + (det v / N^2) s0^2 - 4 det v s1 s2 / N^2 <= dmax^2
      double A = (s1 * v1 + s2 * v2) / nd;
      double B = v0 / nd;
      double qa = B * B + vdet / (nd * nd);
      double qb = 2.0 * A * B;
      double qc = A * A - 4.0 * vdet * double(s1) * double(s2) / (nd * nd) -
                  delta_max * delta_max;
      double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0) continue;
      double root = std::sqrt(disc);
      long lo = static_cast<long>(std::floor((-qb - root) / (2.0 * qa))) - 1;
      long hi = static_cast<long>(std::ceil((-qb + root) / (2.0 * qa))) + 1;
      for (long s0 = lo; s0 <= hi; ++s0) {
        // exact integer filters: T' indefinite and T'' positive definite
        using I128 = __int128;
        if (I128(4) * s1 * s2 >= I128(s0) * s0) continue;
        const I128 u1 = I128(2) * Nl * a1 - I128(2) * Dl * s1;
        const I128 u0 = I128(Nl) * a0 - I128(Dl) * s0;
        const I128 u2 = I128(2) * Nl * a2 - I128(2) * Dl * s2;
        if (u1 <= 0 || u1 * u2 - u0 * u0 <= 0) continue;
        // numeric truncation cut, before any bignum work
        double p1 = s1 / nd, p0 = s0 / (2.0 * nd), p2 = s2 / nd;
        double x1 = p1 * v1 + 2.0 * p0 * v0 + p2 * v2;
        double dtv = (p1 * p2 - p0 * p0) * vdet;
        double dl = std::sqrt(x1 * x1 - 4.0 * dtv);
        if (dl > delta_max) continue;
        SymT Tp{tp1, make_rat(Int(s0), 2 * N), tp2};
        SymT Tpp{T.t1 - Tp.t1, T.t0 - Tp.t0, T.t2 - Tp.t2};
        double r = pos_rep(Tpp);
        if (r == 0.0) continue;
        Int rho = rho_indef(lat, Tp);
        if (rho == 0) continue;
        double x2 = 4.0 * std::fabs(dtv);
        RealTol w = w_star(x1, x2, tol * 0.1);
        double term = r * rho.get_d() * w.value;
        acc += term;
        err += std::fabs(r * rho.get_d()) * w.err;
        envelope = std::max(envelope, std::fabs(r * rho.get_d()));
        ++terms;
      }
    }
  }
  double fin = index_factor.get_d();
  return {fin * acc, fin * (err + envelope * tail_bound(delta_max)), delta_max,
          terms};
}

}  // namespace geolink
