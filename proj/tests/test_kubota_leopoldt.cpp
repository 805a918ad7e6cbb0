#include <doctest.h>

#include "iwa/kubota_leopoldt.hpp"

#include "test_util.hpp"

using namespace iwa;

namespace {

GammaLevelElement d_branch(const DirichletCharacter& psi, const Int& p, long n, long k) {
  return stickelberger_level(psi.inverse(), WildSign::inverse, p, n, k);
}

}  // namespace

TEST_CASE("stickelberger value at the trivial character matches Bernoulli") {
  Int p(5);
  for (long c : {3L, 7L}) {
    DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(c);
    for (long n : {1L, 2L}) {
      GammaLevelElement e = d_branch(psi, p, n, 10);
      PadicNumber total(p, e.precision(), 0);
      for (long g = 0; g < e.size(); ++g) total = total + e.coeff(g);
      // evaluation at the trivial character: -(1 - psi(p)) B_{1,psi}
      Rat b1 = bernoulli_b1_rational(psi);
      Rat expected = -(Rat(1) - Rat(psi.quadratic_value(p))) * b1;
      CHECK(total == PadicNumber::from_rational(p, total.precision(), expected));
    }
  }
}

TEST_CASE("distribution relation is exact level by level") {
  Int p(5);
  DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(3);
  for (auto sign : {WildSign::direct, WildSign::inverse}) {
    GammaLevelElement e3 = stickelberger_level(psi, sign, p, 3, 8);
    GammaLevelElement e2 = stickelberger_level(psi, sign, p, 2, 8);
    GammaLevelElement e1 = stickelberger_level(psi, sign, p, 1, 8);
    CHECK(e3.project() == e2);
    CHECK(e2.project() == e1);
  }
}

TEST_CASE("classical lambda for small imaginary quadratic characters") {
  Int p(5);
  // 5 inert in Q(sqrt(-3)) and Q(sqrt(-7)): lambda = 0, certified quickly
  for (long c : {3L, 7L}) {
    DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(c);
    ClassicalInvariants ci = classical_lambda(psi, p, 10);
    CHECK(ci.certified);
    CHECK(ci.mu == 0);
    CHECK(ci.lambda == 0);
    CHECK(ci.duality_checked);
    CHECK(ci.lambda_dual == ci.lambda);
  }
}

TEST_CASE("lambda pinned by the exact interpolation-value oracle") {
  // lambda of the inverse branch equals the (zeta_25 - 1)-adic valuation of
  // the exact value at a wild character with zeta of order 25 (reliable for
  // lambda < phi(25) = 20).  psi quadratic keeps the value inside Q(zeta_25).
  Int p(5);
  for (long c : {3L, 4L, 7L}) {
    DirichletCharacter psi = (c == 4) ? DirichletCharacter::kronecker(-4)
                                      : DirichletCharacter::imaginary_quadratic(c);
    ClassicalInvariants ci = classical_lambda(psi, p, 10, 3);
    REQUIRE(ci.certified);
    long f = psi.modulus().get_si();
    long M = f * 125;
    long m = 25;
    WildLogTable logs(p, 2);
    CycQ acc(m);
    for (long a = 1; a < M; ++a) {
      if (a % 5 == 0) continue;
      int pv = psi.quadratic_value(Int(a));
      if (pv == 0) continue;
      long g = logs.log_of(Int(a));
      acc = acc + CycQ::zeta_power(m, -g) * Rat(pv * a);
    }
    acc = acc * Rat(1, M);  // B_{1, psi rho^{-1}} up to sign
    CHECK(ci.lambda == iwa_test::pi_valuation(acc, m, p));
  }
}

TEST_CASE("mu is zero on every computed series") {
  Int p(5);
  for (long c : {3L, 4L, 7L, 8L}) {
    DirichletCharacter psi = (c == 4)   ? DirichletCharacter::kronecker(-4)
                             : (c == 8) ? DirichletCharacter::kronecker(-8)
                                        : DirichletCharacter::imaginary_quadratic(c);
    ClassicalInvariants ci = classical_lambda(psi, p, 8);
    CHECK(ci.mu == 0);
  }
}

TEST_CASE("nonprimitive product: lambda additivity and strip values") {
  Int p(5);
  long n = 2, k = 10;
  DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(7);
  DirichletCharacter triv = DirichletCharacter::trivial(1);
  EisensteinFactors fac = eisenstein_factors(triv, psi, p, n, k);

  // empty Sigma0: identity
  GammaLevelElement same = strip_c_side(fac.lc, triv, psi, {});
  CHECK(same == fac.lc);

  std::vector<Int> sigma0{Int(11), Int(7)};
  GammaLevelElement c_str = strip_c_side(fac.lc, triv, psi, sigma0);
  GammaLevelElement d_str = strip_d_side(fac.ld, triv, psi, sigma0);
  GammaLevelElement prod = eisenstein_product(fac, triv, psi, sigma0, p, n, k);
  {
    // the product carries the gamma^{log<f_psi>} measure normalization
    WildLogTable logs(p, n);
    GammaLevelElement shift(p, n, k);
    shift.set_coeff(logs.log_of(psi.modulus()) % shift.size(), PadicNumber(p, k, 1));
    CHECK(prod == c_str.convolve(d_str).convolve(shift));
  }

  long margin = level_margin(p, n);
  auto lam = [&](const GammaLevelElement& e) {
    return invariants(e.to_series(margin + 1), margin);
  };
  InvariantPair ic = lam(c_str), id = lam(d_str), ip = lam(prod);
  REQUIRE(ic.certified);
  REQUIRE(id.certified);
  REQUIRE(ip.certified);
  CHECK(ic.mu == 0);
  CHECK(id.mu == 0);
  CHECK(ip.lambda == ic.lambda + id.lambda);

  // the l = 7 factor is trivial (psi ramified at 7): stripping at 7 only
  CHECK(strip_c_side(fac.lc, triv, psi, {Int(7)}) == fac.lc);

  // value of the C-side multiplier at the trivial wild character is 1 - psi(l)
  GammaLevelElement c11 = strip_c_side(fac.lc, triv, psi, {Int(11)});
  PadicNumber tot_c11(p, k, 0), tot_c(p, k, 0);
  for (long g = 0; g < c11.size(); ++g) tot_c11 = tot_c11 + c11.coeff(g);
  for (long g = 0; g < fac.lc.size(); ++g) tot_c = tot_c + fac.lc.coeff(g);
  PadicNumber expect = tot_c * (PadicNumber(p, k, 1) - psi.value_padic(Int(11), p, k));
  CHECK(tot_c11 == expect);

  // p in Sigma0 refused
  CHECK_THROWS_AS(strip_c_side(fac.lc, triv, psi, {Int(5)}), hypothesis_error);
}

TEST_CASE("level budget produces an honest refusal") {
  Int p(5);
  DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(3);
  ClassicalInvariants ci = classical_lambda(psi, p, 8, 3, /*term_budget=*/10);
  CHECK(!ci.certified);
}

TEST_CASE("lambda reading is stable under raising the level") {
  Int p(5);
  for (long c : {3L, 4L}) {
    DirichletCharacter psi = (c == 4) ? DirichletCharacter::kronecker(-4)
                                      : DirichletCharacter::imaginary_quadratic(c);
    GammaLevelElement e1 = stickelberger_level(psi.inverse(), WildSign::inverse, p, 1, 10);
    GammaLevelElement e2 = stickelberger_level(psi.inverse(), WildSign::inverse, p, 2, 10);
    InvariantPair i1 = invariants(e1.to_series(level_margin(p, 1) + 1), level_margin(p, 1));
    InvariantPair i2 = invariants(e2.to_series(level_margin(p, 2) + 1), level_margin(p, 2));
    REQUIRE(i1.certified);
    REQUIRE(i2.certified);
    CHECK(i1.lambda == i2.lambda);
    CHECK(i1.mu == i2.mu);
  }
}
