#include <doctest.h>

#include "iwa/padic.hpp"

#include <random>

using namespace iwa;

TEST_CASE("valuation on integers") {
  // 7^4 - 1 = 2400 = 2^5 * 3 * 5^2
  CHECK(valuation(pow_int(Int(7), 4) - 1, Int(5)) == 2);
  CHECK(valuation(Int(1), Int(5)) == 0);
  // 2^4 - 1 = 15 = 3 * 5
  CHECK(valuation(pow_int(Int(2), 4) - 1, Int(5)) == 1);
  CHECK_THROWS(valuation(Int(0), Int(5)));
}

TEST_CASE("padic valuation signals indeterminate at precision") {
  PadicNumber x(Int(5), 2, Int(25));  // = 0 mod 5^2
  CHECK(!x.valuation().has_value());
  PadicNumber y(Int(5), 3, Int(25));
  CHECK(y.valuation() == 2);
}

TEST_CASE("teichmuller") {
  PadicNumber t = teichmuller(Int(2), Int(5), 2);
  CHECK(t.residue() == 7);  // 2^5 = 32 = 7 mod 25
  CHECK(teichmuller(Int(1), Int(5), 4).residue() == 1);
  CHECK(teichmuller(Int(7), Int(5), 2).residue() == 7);
  CHECK_THROWS(teichmuller(Int(10), Int(5), 2));

  // omega(a)^(p-1) = 1 for a range of a, k
  for (long a : {2, 3, 5, 11, 23}) {
    for (long k : {1, 3, 8}) {
      PadicNumber w = teichmuller(Int(a), Int(7), k);
      CHECK(w.pow(Int(6)).residue() == 1);
    }
  }
}

TEST_CASE("plog basics") {
  PadicNumber one(Int(5), 8, Int(1));
  CHECK(plog(one).is_zero());
  PadicNumber u(Int(5), 8, Int(6));  // 1 + p
  auto v = plog(u).valuation();
  REQUIRE(v.has_value());
  CHECK(*v == 1);
  CHECK_THROWS(plog(PadicNumber(Int(5), 4, Int(2))));
}

TEST_CASE("plog is a homomorphism on principal units") {
  std::mt19937 rng(17);
  Int p(7);
  long k = 10;
  Int m = pow_int(p, (unsigned long)k);
  for (int trial = 0; trial < 25; ++trial) {
    Int a = 1 + p * Int(rng() % 1000000);
    Int b = 1 + p * Int(rng() % 1000000);
    PadicNumber u(p, k, a), v(p, k, b);
    CHECK(plog(u * v) == plog(u) + plog(v));
    CHECK(plog(u * u) == plog(u) + plog(u));
  }
}

TEST_CASE("hensel unit root") {
  CHECK(hensel_unit_root(Int(2), Int(5), 1).residue() == 2);
  CHECK(hensel_unit_root(Int(2), Int(5), 2).residue() == 12);
  CHECK_THROWS(hensel_unit_root(Int(10), Int(5), 3));
  // r (a_p - r) = p mod p^k
  for (long a : {2, 3, 4, 6, 9}) {
    for (long k : {1, 4, 9}) {
      PadicNumber r = hensel_unit_root(Int(a), Int(5), k);
      PadicNumber check = r * (PadicNumber(Int(5), k, a) - r);
      CHECK(check == PadicNumber(Int(5), k, 5));
      CHECK(r.is_unit());
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(99);
  Int p(13);
  long k = 6;
  for (int trial = 0; trial < 40; ++trial) {
    PadicNumber a(p, k, Int(rng()));
    PadicNumber b(p, k, Int(rng()));
    PadicNumber c(p, k, Int(rng()));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("precision is pessimistic and division by p costs a digit") {
  PadicNumber a(Int(5), 8, Int(123));
  PadicNumber b(Int(5), 3, Int(4));
  CHECK((a * b).precision() == 3);
  PadicNumber c(Int(5), 5, Int(50));
  PadicNumber d = c.div_by_p();
  CHECK(d.precision() == 4);
  CHECK(d.residue() == 10);
  CHECK_THROWS(PadicNumber(Int(5), 5, Int(3)).div_by_p());
  CHECK_THROWS(PadicNumber(Int(5), 1, Int(0)).div_by_p());
}

TEST_CASE("rational embedding requires p-prime denominator") {
  PadicNumber h = PadicNumber::from_rational(Int(5), 3, Rat(1, 2));
  CHECK((h + h).residue() == 1);
  CHECK_THROWS(PadicNumber::from_rational(Int(5), 3, Rat(1, 10)));
}
