#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geolink/quadirr.hpp"
#include "geolink/symt.hpp"

using namespace geolink;

TEST_CASE("rational arithmetic and serialization") {
  Rat half(1, 2);
  CHECK(half + half == Rat(1));
  CHECK(parse_rat("2/4") == half);
  CHECK(rat_to_string(parse_rat("2/4")) == "1/2");
  CHECK(parse_rat("377/2") * 2 == Rat(377));
  CHECK(rat_to_string(Rat(7)) == "7");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}

TEST_CASE("quadratic irrational comparisons") {
  QuadIrr golden(1, 1, 2, 5);  // (1+sqrt5)/2
  CHECK(qirr_cmp(golden, Rat(2)) == -1);
  CHECK(qirr_cmp(golden, Rat(1)) == 1);

  // sqrt(12)/6 vs 1/3: (sqrt12/6)^2 = 1/3 > 1/9
  QuadIrr x(0, 1, 6, 12);
  CHECK(qirr_cmp(x, Rat(1, 3)) == 1);
  CHECK(qirr_cmp(x, x) == 0);

  // sqrt(12) canonicalizes to 2 sqrt(3)
  CHECK(x.d == 3);
  CHECK(x == QuadIrr(0, 2, 6, 3));

  // mixed radicals: sqrt(2)+1 vs sqrt(5)
  QuadIrr a(1, 1, 1, 2), b(0, 1, 1, 5);
  CHECK(qirr_cmp(a, b) == 1);   // 2.414 > 2.236
  CHECK(qirr_cmp(b, a) == -1);
  QuadIrr c(3, 0, 1, 0);        // rational 3
  CHECK(qirr_cmp(b, c) == -1);
  CHECK(QuadIrr(2, 7, 1, 0) == QuadIrr(2, 0, 1, 0));  // sqrt(0) term drops
}

TEST_CASE("qirr_cmp is a strict total order on random values") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coef(-20, 20), den(1, 12), rad(0, 30);
  auto rand_q = [&]() {
    return QuadIrr(coef(rng), coef(rng), den(rng), rad(rng));
  };
  for (int i = 0; i < 200; ++i) {
    QuadIrr x = rand_q(), y = rand_q(), z = rand_q();
    int xy = qirr_cmp(x, y), yx = qirr_cmp(y, x);
    CHECK(xy == -yx);  // antisymmetry
    if (xy == 0) CHECK(x == y);  // canonical reps make equality literal
    // transitivity on the sampled triple
    if (xy <= 0 && qirr_cmp(y, z) <= 0) CHECK(qirr_cmp(x, z) <= 0);
    // consistency with doubles away from ties
    double dx = x.to_double(), dy = y.to_double();
    if (std::fabs(dx - dy) > 1e-9) CHECK(xy == (dx > dy ? 1 : -1));
  }
}

TEST_CASE("ExtReal infinity dominates") {
  CHECK(cmp(ExtReal::inf(), ExtReal::of(QuadIrr(1000, 0, 1, 0))) == 1);
  CHECK(cmp(ExtReal::of(QuadIrr(0, 1, 1, 2)), ExtReal::inf()) == -1);
  CHECK(cmp(ExtReal::inf(), ExtReal::inf()) == 0);
}

TEST_CASE("delta of a symmetric matrix") {
  CHECK(delta(SymT{Rat(1), Rat(0), Rat(1)}).radicand == Rat(0));
  CHECK(delta(SymT{Rat(3), Rat(0), Rat(1)}).value == doctest::Approx(2.0));
  SymT T{Rat(2), Rat(1, 2), Rat(3)};
  CHECK(delta(T).radicand == Rat(2));
  CHECK(delta(T).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // symmetric matrices always have a nonnegative radicand
  CHECK(delta(SymT{Rat(0), Rat(1), Rat(0)}).radicand == Rat(4));
}

TEST_CASE("reduce_sym examples") {
  SymT id{Rat(1), Rat(0), Rat(1)};
  auto r = reduce_sym(id);
  CHECK(r.reduced == id);
  CHECK(r.gamma == Mat2::identity());
  CHECK(!r.flipped);

  auto r2 = reduce_sym(SymT{Rat(3), Rat(1, 2), Rat(2)});
  CHECK(r2.reduced == SymT{Rat(2), Rat(1, 2), Rat(3)});

  auto r3 = reduce_sym(SymT{Rat(2), Rat(5, 2), Rat(4)});
  CHECK(2 * r3.reduced.t0 <= r3.reduced.t1);
  CHECK(r3.reduced.t1 <= r3.reduced.t2);
  CHECK(sgn(r3.reduced.t0) >= 0);
}

TEST_CASE("reduce_sym preserves det, shrinks trace, lands in SL2") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> num(-8, 8), den(1, 4);
  int done = 0;
  while (done < 40) {
    SymT T{make_rat(num(rng) + 9, den(rng)), make_rat(num(rng), 2 * den(rng)),
           make_rat(num(rng) + 9, den(rng))};
    if (!T.positive_definite()) continue;
    ++done;
    auto r = reduce_sym(T);
    CHECK(r.gamma.det() == 1);
    CHECK(r.reduced.det() == T.det());
    CHECK(r.reduced.trace() <= T.trace());
    // reconstruct: conjugate then optional flip
    SymT back = T.conjugate(r.gamma);
    if (r.flipped) back = back.flip_t0();
    CHECK(back == r.reduced);
  }
}
