#include <doctest.h>

#include "iwa/series.hpp"

#include <random>

using namespace iwa;

namespace {

const Int P5(5);

IwasawaSeries from_ints(const Int& p, long k, std::vector<long> cs) {
  std::vector<PadicNumber> v;
  for (long c : cs) v.emplace_back(p, k, Int(c));
  return IwasawaSeries(p, std::move(v));
}

IwasawaSeries random_series(std::mt19937& rng, const Int& p, long k, long n,
                            bool unit_lead = false) {
  std::vector<PadicNumber> v;
  for (long i = 0; i < n; ++i) v.emplace_back(p, k, Int(rng() % 1000000));
  if (unit_lead && v[0].residue() % p == 0) v[0] = v[0] + PadicNumber(p, k, 1);
  return IwasawaSeries(p, std::move(v));
}

}  // namespace

TEST_CASE("mul matches a schoolbook convolution oracle") {
  CHECK(mul(from_ints(P5, 8, {1, 1}), from_ints(P5, 8, {1, -1})) ==
        from_ints(P5, 8, {1, 0, -1}).truncated(2));
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    IwasawaSeries f = random_series(rng, P5, 10, 12);
    IwasawaSeries g = random_series(rng, P5, 10, 12);
    IwasawaSeries h = mul(f, g);
    Int m = pow_int(P5, 10);
    for (long idx = 0; idx < 12; ++idx) {
      Int acc = 0;
      for (long i = 0; i <= idx; ++i) acc += f.coeff(i).residue() * g.coeff(idx - i).residue();
      CHECK(h.coeff(idx).residue() == mod_floor(acc, m));
    }
  }
}

TEST_CASE("invariants: Weierstrass degree detection") {
  // p^2 (1 + T): mu=2, lambda=0
  IwasawaSeries f = from_ints(P5, 8, {25, 25, 0, 0});
  auto inv = invariants(f);
  CHECK(inv.certified);
  CHECK(inv.mu == 2);
  CHECK(inv.lambda == 0);

  // T^3 + p T: mu=0, lambda=3
  IwasawaSeries g = from_ints(P5, 8, {0, 5, 0, 1, 0, 0});
  inv = invariants(g);
  CHECK(inv.certified);
  CHECK(inv.mu == 0);
  CHECK(inv.lambda == 3);

  CHECK_THROWS_AS(invariants(IwasawaSeries::zero(P5, 4, 3)), precision_error);

  // mixed valuations with mu read through the precision floor
  IwasawaSeries w = from_ints(P5, 2, {5, 5, 5});
  auto iv = invariants(w);
  CHECK(iv.mu == 1);
  CHECK(iv.certified);

  // margin cap: unit appears only beyond the cap -> uncertified
  IwasawaSeries h = from_ints(P5, 8, {5, 10, 15, 1, 0});
  auto capped = invariants(h, 3);
  CHECK(!capped.certified);
  auto full = invariants(h);
  CHECK(full.certified);
  CHECK(full.mu == 0);
  CHECK(full.lambda == 3);
}

TEST_CASE("mu/lambda additivity under products") {
  std::mt19937 rng(11);
  for (int t = 0; t < 12; ++t) {
    IwasawaSeries f = random_series(rng, P5, 12, 20);
    IwasawaSeries g = random_series(rng, P5, 12, 20);
    auto fi = invariants(f);
    auto gi = invariants(g);
    if (!fi.certified || !gi.certified) continue;
    if (fi.lambda + gi.lambda >= 20) continue;
    auto hi = invariants(mul(f, g));
    CHECK(hi.certified);
    CHECK(hi.mu == fi.mu + gi.mu);
    CHECK(hi.lambda == fi.lambda + gi.lambda);
  }
}

TEST_CASE("invariants unchanged by unit-series multiplication") {
  std::mt19937 rng(23);
  for (int t = 0; t < 10; ++t) {
    IwasawaSeries f = random_series(rng, P5, 10, 16);
    IwasawaSeries u = random_series(rng, P5, 10, 16, /*unit_lead=*/true);
    auto fi = invariants(f);
    if (!fi.certified || fi.lambda >= 12) continue;
    auto gi = invariants(mul(f, u));
    CHECK(gi.certified);
    CHECK(gi.mu == fi.mu);
    CHECK(gi.lambda == fi.lambda);
  }
}

TEST_CASE("binomial power") {
  CHECK(binomial_power(PadicNumber(P5, 8, 0), 6) == IwasawaSeries::one(P5, 6, 8));
  IwasawaSeries f = binomial_power(PadicNumber(P5, 8, 5), 7);
  long expect[] = {1, 5, 10, 10, 5, 1, 0};
  for (long i = 0; i < 7; ++i) CHECK(f.coeff(i) == PadicNumber(P5, f.precision(), expect[i]));

  // group law: (1+T)^f (1+T)^{-f} = 1
  std::mt19937 rng(31);
  for (int t = 0; t < 8; ++t) {
    PadicNumber e(P5, 10, Int(rng()));
    IwasawaSeries a = binomial_power(e, 10);
    IwasawaSeries b = binomial_power(-e, 10);
    CHECK(mul(a, b) == IwasawaSeries::one(P5, 10, a.precision()));
  }
}

TEST_CASE("involution") {
  std::mt19937 rng(41);
  IwasawaSeries t = from_ints(P5, 10, {0, 1, 0, 0, 0, 0});
  IwasawaSeries it = involution(t);
  // -T + T^2 - T^3 + ...
  for (long i = 1; i < 6; ++i)
    CHECK(it.coeff(i) == PadicNumber(P5, it.precision(), (i % 2) ? -1 : 1));
  CHECK(it.coeff(0).is_zero());

  for (int trial = 0; trial < 8; ++trial) {
    IwasawaSeries f = random_series(rng, P5, 10, 12);
    CHECK(involution(involution(f)) == f);
    auto fi = invariants(f);
    auto gi = invariants(involution(f));
    if (fi.certified && fi.lambda < 10) {
      CHECK(gi.mu == fi.mu);
      CHECK(gi.lambda == fi.lambda);
    }
  }
}

TEST_CASE("generator substitution preserves invariants") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    IwasawaSeries f = random_series(rng, P5, 10, 14);
    Int s = Int(rng() % 1000);
    if (s % 5 == 0) s += 1;  // unit exponent
    IwasawaSeries g = substitute_generator(f, PadicNumber(P5, 10, s));
    auto fi = invariants(f);
    auto gi = invariants(g);
    if (fi.certified && fi.lambda < 11) {
      CHECK(gi.certified);
      CHECK(gi.mu == fi.mu);
      CHECK(gi.lambda == fi.lambda);
    }
  }
}

TEST_CASE("eval at zero and congruence witness") {
  CHECK(eval_at_zero(from_ints(P5, 6, {1, 1})).residue() == 1);

  std::mt19937 rng(67);
  IwasawaSeries f = random_series(rng, P5, 8, 10);
  IwasawaSeries g = random_series(rng, P5, 8, 10);
  IwasawaSeries fp = f + g * Int(5);
  auto w = congruent_mod_p(f, fp, true);
  CHECK(w.congruent);
  CHECK(w.unit == 1);
  auto w2 = congruent_mod_p(f * Int(2), f, true);
  CHECK(w2.congruent);
  CHECK(w2.unit == 2);
  auto w3 = congruent_mod_p(f * Int(2), f, false);
  CHECK(!w3.congruent);
}

TEST_CASE("series JSON round-trip") {
  std::mt19937 rng(71);
  IwasawaSeries f = random_series(rng, P5, 9, 6);
  IwasawaSeries g = IwasawaSeries::from_json(f.to_json());
  CHECK(f == g);
  CHECK(g.precision() == f.precision());
  CHECK(g.degree() == f.degree());
}

TEST_CASE("f * involution(f) is involution-symmetric") {
  std::mt19937 rng(83);
  for (int t = 0; t < 6; ++t) {
    IwasawaSeries f = random_series(rng, P5, 10, 12);
    IwasawaSeries sym = mul(f, involution(f));
    // applying the involution permutes the factors: the product is fixed
    CHECK(involution(sym) == sym);
  }
}
