#include <doctest.h>

#include "iwa/elliptic.hpp"

using namespace iwa;

namespace {
CurveQ E1() { return CurveQ(0, 0, 0, 1, -10, "e1"); }
CurveQ E2() { return CurveQ(0, 0, 0, -584, 5444, "e2"); }
CurveQ J11() { return CurveQ(0, -1, 1, -10, -20, "11a1"); }
}  // namespace

TEST_CASE("model invariants") {
  CurveQ e = E1();
  CHECK(e.disc() == Int(-256) * 169);  // -2^8 * 13^2
  CHECK(1728 * e.disc() == e.c4() * e.c4() * e.c4() - e.c6() * e.c6());
  CHECK_THROWS_AS(CurveQ(0, 0, 0, 0, 0), input_error);
}

TEST_CASE("count_points") {
  CHECK(count_points(E1(), 5) == 2);    // #E(F_5) = 4
  CHECK(count_points(E1(), 7) == -2);   // Euler factor 1 + 2X + 7X^2
  CHECK(count_points(E1(), 3) == 0);
  CHECK(count_points(CurveQ(0, 0, 0, 1, 0), 3) == 0);  // supersingular
  // conductor-11 newform coefficients
  CHECK(count_points(J11(), 2) == -2);
  CHECK(count_points(J11(), 3) == -1);
  CHECK(count_points(J11(), 5) == 1);
  CHECK(count_points(J11(), 7) == -2);
  CHECK(count_points(J11(), 13) == 4);
  CHECK_THROWS(count_points(E1(), 13));  // bad reduction
  CHECK_THROWS(count_points(E1(), Int(7), 5));  // bound exceeded
}

TEST_CASE("Hasse bound on every computed a_l") {
  for (const CurveQ& e : {E1(), E2(), J11()}) {
    for (long l : primes_up_to(100)) {
      if (mod_floor(e.disc(), l) == 0) continue;
      Int a = count_points(e, l);
      CHECK(a * a <= 4 * l);
    }
  }
}

TEST_CASE("classify_reduction") {
  LocalData d = classify_reduction(E1(), 2);
  CHECK(d.type == ReductionType::additive);
  d = classify_reduction(E1(), 13);
  CHECK(d.type == ReductionType::nonsplit_mult);
  CHECK(d.a_ell == -1);
  d = classify_reduction(E2(), 7);
  CHECK(d.type == ReductionType::split_mult);
  CHECK(d.a_ell == 1);
  d = classify_reduction(E2(), 13);
  CHECK(d.type == ReductionType::nonsplit_mult);
  d = classify_reduction(E2(), 2);
  CHECK(d.type == ReductionType::additive);
  d = classify_reduction(J11(), 11);
  CHECK(d.type == ReductionType::split_mult);

  // good primes carry the count_points Euler polynomial
  for (long l : {3L, 5L, 7L, 11L}) {
    LocalData g = classify_reduction(E1(), l);
    if (g.type != ReductionType::good) continue;
    CHECK(g.e1 == -count_points(E1(), l));
    CHECK(g.e2 == l);
  }

  // non-minimal model refused with instruction
  CurveQ scaled(0, 0, 0, 16, -640);  // E1 scaled by u = 2
  CHECK_THROWS_AS(classify_reduction(scaled, 2), input_error);
}

TEST_CASE("is_ordinary") {
  OrdinaryData o = is_ordinary(E1(), 5, 4);
  CHECK(o.ordinary);
  CHECK(!o.anomalous);  // a_5 = 2, not 1 mod 5
  CHECK(mod_floor(o.alpha->residue(), 5) == 2);
  // supersingular
  OrdinaryData s = is_ordinary(CurveQ(0, 0, 0, 1, 0), 3, 2);
  CHECK(!s.ordinary);
  // multiplicative: alpha = a_p
  OrdinaryData m = is_ordinary(J11(), 11, 3);
  CHECK(m.ordinary);
  CHECK(m.alpha->residue() == 1);
  // additive at p refused
  CHECK_THROWS_AS(is_ordinary(E1(), 2, 2), hypothesis_error);
}

TEST_CASE("quadratic twist") {
  CurveQ e = E1();
  CurveQ t1 = quadratic_twist(e, 1);
  CHECK(t1.c4() == e.c4());
  CHECK(t1.c6() == e.c6());

  // a_l(twist) = chi_d(l) a_l(E) for good l not dividing 2d
  for (Int d : {Int(-3), Int(5), Int(-7)}) {
    CurveQ tw = quadratic_twist(e, d);
    CHECK(tw.c4() == d * d * e.c4());
    CHECK(tw.c6() == d * d * d * e.c6());
    for (long l : primes_up_to(60)) {
      Int L(l);
      if (mod_floor(Int(2) * d * e.disc(), L) == 0) continue;
      int chi = kronecker(d, L);
      CHECK(count_points(tw, L) == chi * count_points(e, L));
    }
  }
  CHECK_THROWS(quadratic_twist(e, 12));  // not squarefree
}

TEST_CASE("twist of the conductor-11 curve stays minimal at 11 and c-primes") {
  CurveQ tw = quadratic_twist(J11(), -7);
  CHECK(tw.minimal_at(11));
  CHECK(tw.minimal_at(7));
  LocalData d11 = classify_reduction(tw, 11);
  // (-7 | 11) = 1: split stays split
  CHECK(d11.type == ReductionType::split_mult);
  LocalData d7 = classify_reduction(tw, 7);
  CHECK(d7.type == ReductionType::additive);

  CurveQ tw3 = quadratic_twist(J11(), -3);
  LocalData e11 = classify_reduction(tw3, 11);
  // (-3 | 11) = -1: becomes nonsplit
  CHECK(e11.type == ReductionType::nonsplit_mult);
}

TEST_CASE("curve parse round trip") {
  CurveQ e = CurveQ::parse("0, -1, 1, -10, -20");
  CHECK(e.disc() == J11().disc());
  CHECK_THROWS_AS(CurveQ::parse("1,2,3"), input_error);
}

TEST_CASE("multiplicative type agrees with the smooth-point count oracle") {
  // smooth locus of a multiplicative fibre: l - 1 points if split (G_m),
  // l + 1 if nonsplit (its twist); both equal l - a_l with a_l = +-1
  auto smooth_count = [](const CurveQ& e, long l) {
    auto md = [&](const Int& a) { return ((a.get_si() % l) + l) % l; };
    long A1 = md(e.a1()), A2 = md(e.a2()), A3 = md(e.a3()), A4 = md(e.a4()), A6 = md(e.a6());
    long count = 1;  // infinity is always smooth
    for (long x = 0; x < l; ++x)
      for (long y = 0; y < l; ++y) {
        long F = ((y * y + A1 * x * y + A3 * y) % l -
                  (((x + A2) * x % l + A4) % l * x % l + A6) % l + 2 * l) % l;
        if (F != 0) continue;
        long Fx = ((A1 * y - (3 * x * x + 2 * A2 * x + A4)) % l + 2 * l * l) % l;
        long Fy = ((2 * y + A1 * x + A3) % l + l) % l;
        if (Fx != 0 || Fy != 0) ++count;
      }
    return count;
  };
  struct Case { CurveQ e; long l; };
  std::vector<Case> cases{
      {CurveQ(1, 0, 1, 4, -6, "14a1"), 2},   // multiplicative at 2
      {CurveQ(1, 1, 1, -10, -10, "15a1"), 3},
      {CurveQ(1, 1, 1, -10, -10, "15a1"), 5},
      {J11(), 11},
      {E1(), 13},
      {E2(), 7},
      {E2(), 13},
  };
  for (auto& c : cases) {
    LocalData d = classify_reduction(c.e, c.l);
    REQUIRE((d.type == ReductionType::split_mult || d.type == ReductionType::nonsplit_mult));
    CHECK(smooth_count(c.e, c.l) == c.l - d.a_ell.get_si());
  }
}
