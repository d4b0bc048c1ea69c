#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace geolink {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt of negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Int& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Rational squares: num and den both perfect squares (canonical mpq).
inline bool is_square(const Rat& x) {
  return sgn(x) >= 0 && is_square(x.get_num()) && is_square(x.get_den());
}

inline std::optional<Rat> sqrt_exact(const Rat& x) {
  if (!is_square(x)) return std::nullopt;
  return Rat(isqrt(x.get_num()), isqrt(x.get_den()));
}

// Nearest integer to a rational; ties round toward +infinity.
inline Int round_nearest(const Rat& x) {
  Int q, r;
  Int num = x.get_num(), den = x.get_den();
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;
  return q;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// mpq_class(n, d) does not canonicalize; always build ratios through this.
inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Serialization: "p/q", or "p" when q=1.
std::string rat_to_string(const Rat& x);

// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

Int parse_int(const std::string& s);

}  // namespace geolink
