#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "geolink/bqf.hpp"

using namespace geolink;

namespace {

std::mt19937_64 rng(424242);

Mat2 random_sl2(int len = 8) {
  std::uniform_int_distribution<int> pick(0, 2);
  Mat2 g = Mat2::identity();
  for (int i = 0; i < len; ++i) {
    switch (pick(rng)) {
      case 0: g = g * Mat2::translation(1); break;
      case 1: g = g * Mat2::translation(-1); break;
      default: g = g * Mat2::S(); break;
    }
  }
  return g;
}

BQF random_posdef(int lim = 12) {
  std::uniform_int_distribution<int> coef(1, lim), mid(-lim, lim);
  for (;;) {
    BQF q{coef(rng), mid(rng), coef(rng)};
    if (q.positive_definite()) return q;
  }
}

}  // namespace

TEST_CASE("right action basics") {
  BQF q{1, 0, 1};
  CHECK(act(q, Mat2::identity()) == q);
  CHECK(act(q, Mat2::S()) == q);  // rotation fixes x^2+y^2
  BQF r{2, 2, -1};
  CHECK(act(r, Mat2::translation(1)) == BQF{2, 6, 3});
}

TEST_CASE("act is a right action and scales disc by det^2") {
  std::uniform_int_distribution<int> e(-5, 5);
  for (int i = 0; i < 50; ++i) {
    BQF q{e(rng), e(rng), e(rng)};
    Mat2 h1 = random_sl2(), h2 = random_sl2();
    CHECK(act(act(q, h1), h2) == act(q, h1 * h2));
    Mat2 h{e(rng), e(rng), e(rng), e(rng)};
    CHECK(act(q, h).disc() == h.det() * h.det() * q.disc());
  }
}

TEST_CASE("tilde involution") {
  BQF q{1, 0, 1};
  CHECK(tilde(q) == BQF{-1, 0, -1});
  BQF r{3, -1, 2};
  CHECK(tilde(tilde(r)) == r);
  CHECK(tilde(r) == BQF{-3, -1, -2});
  CHECK(tilde(r).disc() == r.disc());
  CHECK(r.positive_definite());
  CHECK(tilde(r).negative_definite());
}

TEST_CASE("roots of indefinite forms") {
  auto [rp, rm] = roots(BQF{2, 2, -1});
  CHECK(rp == QuadIrr(-1, 1, 2, 3));  // (-2+sqrt12)/4 = (-1+sqrt3)/2
  CHECK(rm == QuadIrr(-1, -1, 2, 3));
  auto [sp, sm] = roots(BQF{1, 0, -3});
  CHECK(sp == QuadIrr(0, 1, 1, 3));
  CHECK(sm == QuadIrr(0, -1, 1, 3));
  auto [tp, tm] = roots(BQF{1, 0, -1});  // square disc: rational roots
  CHECK(tp == QuadIrr(1, 0, 1, 0));
  CHECK(tm == QuadIrr(-1, 0, 1, 0));
  CHECK_THROWS_AS(roots(BQF{0, 1, -1}), std::domain_error);
}

TEST_CASE("Gauss reduction of positive definite forms") {
  CHECK(reduce_posdef(BQF{1, 0, 1}).reduced == BQF{1, 0, 1});
  auto r = reduce_posdef(BQF{6, 5, 2});
  CHECK((r.reduced == BQF{2, -1, 3} || r.reduced == BQF{2, 1, 3}));
  CHECK(act(BQF{6, 5, 2}, r.gamma) == r.reduced);
  CHECK(r.gamma.det() == 1);
  CHECK(reduce_posdef(BQF{3, -1, 2}).reduced == BQF{2, 1, 3});
  for (int i = 0; i < 60; ++i) {
    BQF q = random_posdef();
    auto red = reduce_posdef(q);
    CHECK(act(q, red.gamma) == red.reduced);
    const BQF& f = red.reduced;
    CHECK(f.b <= f.a);
    CHECK(-f.b <= f.a);
    CHECK(f.a <= f.c);
    if (f.b < 0) CHECK((-f.b < f.a && f.a < f.c));
  }
}

TEST_CASE("class lists") {
  CHECK(classes(Int(-23)).size() == 3);
  CHECK(classes(Int(-3)).size() == 1);
  CHECK(classes(Int(-3))[0].rep == BQF{1, 1, 1});
  CHECK(classes(Int(-4)).size() == 1);
  auto c12 = classes(Int(-12));
  CHECK(c12.size() == 2);
  CHECK(c12[0].rep == BQF{1, 0, 3});
  CHECK(c12[0].primitive());
  CHECK(c12[1].rep == BQF{2, 2, 2});
  CHECK(c12[1].content == 2);
  CHECK_THROWS_AS(classes(Int(5)), std::domain_error);
  CHECK_THROWS_AS(classes(Int(-5)), std::domain_error);  // -5 = 3 mod 4
}

TEST_CASE("classes partition forms of the discriminant") {
  for (Int d : {Int(-23), Int(-47), Int(-56)}) {
    const auto& reps = classes(d);
    for (int i = 0; i < 25; ++i) {
      BQF q = act(reps[i % reps.size()].rep, random_sl2());
      int hits = 0;
      for (const auto& C : reps)
        if (equivalent_psl2z(C.rep, q)) ++hits;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("composition group law") {
  Int d(-23);
  const auto& cls = classes(d);
  BQF principal{1, 1, 6}, g{2, 1, 3}, gi{2, -1, 3};
  for (const auto& C : cls)
    CHECK(compose(principal, C.rep).rep == C.rep);
  CHECK(compose(g, gi).rep == principal);
  CHECK(compose(g, g).rep == gi);  // order 3
  CHECK(compose(gi, gi).rep == g);
  CHECK_THROWS_AS(compose(BQF{1, 0, 1}, g), std::domain_error);

  for (Int dd : {Int(-23), Int(-47), Int(-71)}) {
    std::vector<BQF> prim;
    for (const auto& C : classes(dd))
      if (C.primitive()) prim.push_back(C.rep);
    // closure + associativity + identity/inverse over the full table
    BQF id = prim.front();  // reduced principal form sorts first (a=1)
    CHECK(id.a == 1);
    for (const auto& x : prim) {
      CHECK(compose(id, x).rep == x);
      CHECK(compose(x, class_inverse(x)).rep == id);
      for (const auto& y : prim) {
        BQF xy = compose(x, y).rep;
        CHECK(std::count_if(prim.begin(), prim.end(),
                            [&](const BQF& z) { return z == xy; }) == 1);
        for (const auto& z : prim) {
          CHECK(compose(compose(x, y).rep, z).rep ==
                compose(x, compose(y, z).rep).rep);
        }
      }
    }
  }
}

TEST_CASE("double_inverse examples") {
  CHECK(double_inverse(BQF{1, 1, 6}).rep == BQF{1, 1, 6});
  CHECK(double_inverse(BQF{2, 1, 3}).rep == BQF{2, 1, 3});  // -2g = g, order 3
  BQF q = reduce_posdef(BQF{3, -1, 2}).reduced;
  auto via_compose = [](const BQF& f) {
    BQF sq = compose(f, f).rep;
    return reduce_posdef(class_inverse(sq)).reduced;
  };
  CHECK(double_inverse(q).rep == via_compose(q));
  CHECK_THROWS_AS(double_inverse(BQF{2, 2, 2}), std::domain_error);
}

TEST_CASE("three-way agreement of -2[q]") {
  // ideal-square HNF vs Gauss composition vs the kernel-lattice Gram
  std::uniform_int_distribution<int> av(1, 10), bv(-10, 10);
  int done = 0;
  while (done < 30) {
    BQF q{av(rng), bv(rng), av(rng)};
    if (!q.positive_definite() || !q.is_primitive()) continue;
    Int d = q.disc();
    if (d >= -4 || d < -400) continue;
    ++done;
    BQF route1 = double_inverse(q).rep;
    BQF sq = compose(q, q).rep;
    BQF route2 = reduce_posdef(class_inverse(sq)).reduced;
    BQF route3 = reduce_posdef(lattice_Lq(q).gram).reduced;
    CHECK(route1 == route2);
    CHECK(route1 == route3);
  }
}

TEST_CASE("automorphism counts 2/4/6") {
  CHECK(automorphisms(BQF{1, 0, 1}).size() == 4);
  CHECK(automorphisms(BQF{1, 1, 1}).size() == 6);
  CHECK(automorphisms(BQF{2, 1, 3}).size() == 2);
  for (const Mat2& m : automorphisms(BQF{2, 1, 3}))
    CHECK((m == Mat2::identity() || m == -Mat2::identity()));
  CHECK_THROWS_AS(automorphisms(BQF{1, 0, -1}), std::domain_error);
}

TEST_CASE("equivalence tests") {
  BQF q{2, 1, 3};
  auto w = equivalent_psl2z(q, q);
  REQUIRE(w.has_value());
  CHECK(act(q, *w) == q);

  BQF big{6, 5, 2};
  auto r = reduce_posdef(big);
  auto g = equivalent_psl2z(big, r.reduced);
  REQUIRE(g.has_value());
  CHECK(act(big, *g) == r.reduced);

  CHECK(!equivalent_psl2z(BQF{2, 1, 3}, BQF{2, -1, 3}).has_value());

  // indefinite: translates are recognized, square disc rejected
  BQF ind{2, 2, -1};
  for (int i = 0; i < 10; ++i) {
    Mat2 g2 = random_sl2();
    auto e = equivalent_psl2z(ind, act(ind, g2));
    REQUIRE(e.has_value());
    CHECK(act(ind, *e) == act(ind, g2));
  }
  CHECK(!equivalent_psl2z(BQF{1, 0, -3}, BQF{1, 1, -3}).has_value());
  CHECK_THROWS_AS(equivalent_psl2z(BQF{1, 0, -1}, BQF{1, 0, -1}),
                  std::domain_error);
}

TEST_CASE("kernel lattice L_q") {
  auto l1 = lattice_Lq(BQF{1, 0, 1});
  CHECK(l1.gram.disc() == -4);
  CHECK(reduce_posdef(l1.gram).reduced == BQF{1, 0, 1});

  auto l2 = lattice_Lq(BQF{2, 1, 3});
  CHECK(reduce_posdef(l2.gram).reduced == double_inverse(BQF{2, 1, 3}).rep);

  auto l3 = lattice_Lq(reduce_posdef(BQF{3, -1, 2}).reduced);
  CHECK(l3.gram.disc() == -23);
  CHECK_THROWS_AS(lattice_Lq(BQF{2, 2, 2}), std::domain_error);
}
