#pragma once

// Classical side: generalized Bernoulli numbers, finite-level Stickelberger
// branch elements in Z_p[Gamma_n], classical lambda invariants, and the
// non-primitive products feeding the Eisenstein congruence.

#include "iwa/cyclotomic.hpp"
#include "iwa/dirichlet.hpp"
#include "iwa/gamma_level.hpp"

namespace iwa {

// B_{1,chi} = (1/f) sum_a chi(a) a, exact in Q(zeta_ord).  chi nontrivial.
CycQ bernoulli_b1(const DirichletCharacter& chi);
// order <= 2 shortcut
Rat bernoulli_b1_rational(const DirichletCharacter& chi);

// Which way the wild part of the evaluated character runs: with 'direct'
// the element evaluates at rho to L_M(weight * rho, 0), with 'inverse' to
// L_M(weight * rho^{-1}, 0).
enum class WildSign { direct, inverse };

// Level-n branch element: coefficient of gamma^g is
//   -(1/M) * sum { weight(a) * a : a unit mod M, sign*wildlog(a) = g },
// M = f' p^{n+1} with f' the prime-to-p part of the weight's modulus.
// Coefficients must come out p-integral (asserted).
GammaLevelElement stickelberger_level(const DirichletCharacter& weight, WildSign sign,
                                      const Int& p, long n, long k);

struct ClassicalInvariants {
  DirichletCharacter character;  // the psi handed in
  long lambda = 0;
  long mu = 0;
  bool certified = false;
  long lambda_lower_bound = 0;   // meaningful when not certified
  long level_used = 0;
  long lambda_dual = -1;         // lambda of the omega*psi^{-1} branch, when computed
  bool duality_checked = false;
  IwasawaSeries series;
};

// lambda_psi via the branch with interpolation (1/2) L(psi rho^{-1}, 0);
// also computes the dual branch (interpolation L(psi rho, 0)) and checks
// the two lambda-invariants agree.  Raises the level until certified or
// the term budget is exhausted (then certified=false with a lower bound).
ClassicalInvariants classical_lambda(const DirichletCharacter& psi, const Int& p,
                                     long k, long max_level = 3,
                                     long term_budget = 50'000'000);

// The two Kubota-Leopoldt level elements attached to (chi, psi):
// lc interpolates L(chi psi^{-1} rho, 0), ld interpolates
// (1/2) L(chi^{-1} psi^{-1} rho^{-1}, 0).
struct EisensteinFactors {
  GammaLevelElement lc, ld;
};
EisensteinFactors eisenstein_factors(const DirichletCharacter& chi,
                                     const DirichletCharacter& psi, const Int& p,
                                     long n, long k);

// Multiplies the Sigma0 Euler factors into the two sides and convolves:
// lc gets 1 - chi psi^{-1}(l) gamma^{f_l}, ld gets 1 - chi psi(l) l^{-1} gamma^{f_l}.
GammaLevelElement eisenstein_product(const EisensteinFactors& factors,
                                     const DirichletCharacter& chi,
                                     const DirichletCharacter& psi,
                                     const std::vector<Int>& sigma0, const Int& p,
                                     long n, long k);

// Strip factors alone (for the lambda-additivity checks): applies the
// C-side or D-side multipliers for each l in sigma0.
GammaLevelElement strip_c_side(const GammaLevelElement& lc, const DirichletCharacter& chi,
                               const DirichletCharacter& psi, const std::vector<Int>& sigma0);
GammaLevelElement strip_d_side(const GammaLevelElement& ld, const DirichletCharacter& chi,
                               const DirichletCharacter& psi, const std::vector<Int>& sigma0);

}  // namespace iwa
