#pragma once

// Weight-2 modular symbols for Gamma0(N) over Q: Manin-symbol presentation
// of H_1(X0(N), cusps; Q), boundary map, star involution, Hecke operators
// via the coset action on paths, rational eigen-functionals, integral
// normalization, and twisted L-values.
//
// A generator is a class (c:d) in P^1(Z/N) standing for the path
// {g.0 -> g.inf} of any SL2(Z)-lift g with bottom row (c, d).  Relations
// x + xS = 0 and x + xT + xT^2 = 0 are solved over Q; paths {inf -> r}
// expand into generators by the continued-fraction trick.

#include "iwa/cyclotomic.hpp"
#include "iwa/dirichlet.hpp"
#include "iwa/elliptic.hpp"

#include <functional>
#include <memory>

namespace iwa {

using QVec = std::vector<Rat>;
using QMatrix = std::vector<QVec>;       // row-major
using SparseQ = std::vector<std::pair<long, Rat>>;

struct SymbolSpace {
  Int N;
  long n_gens = 0;                        // |P^1(Z/N)|
  std::vector<std::pair<long, long>> gens;  // canonical (c,d) per generator
  std::vector<int32_t> lookup;            // (c*N+d) -> generator index
  std::vector<std::array<long, 4>> lifts; // SL2 lift (a,b,c,d) per generator

  long dim = 0;                           // dim_Q of the relation quotient
  std::vector<long> basis_gen;            // basis i -> generator index
  std::vector<SparseQ> expand;            // generator -> expression in basis

  long n_cusps = 0;
  std::vector<std::pair<Int, Int>> cusp_reps;
  std::vector<long> cusp_pos, cusp_neg;   // generator -> cusp class of g.inf / g.0
  std::vector<long> star_map;             // generator -> generator of (-c:d)

  long cuspidal_dim = 0;                  // dim ker(boundary) = 2 genus

  long index(long c, long d) const;       // P^1 lookup (inputs any residues)
  // append the expansion of {inf -> a/b} as (generator, +-1) pairs
  void path_infinity(const Int& a, const Int& b,
                     std::vector<std::pair<long, int>>& out) const;
};

std::shared_ptr<const SymbolSpace> build_space(const Int& N, long budget = 2000);

// Action of T_q (q prime, q not dividing N) or U_q (q | N) on the basis:
// result column j = image of basis element j, as a dense dim-vector.
QMatrix hecke_matrix(const SymbolSpace& S, const Int& q);
QMatrix star_matrix(const SymbolSpace& S);

struct EigenSymbol {
  std::shared_ptr<const SymbolSpace> space;
  int sign = +1;
  QVec gen_values;           // functional on every generator
  Rat scale = 1;             // scale applied by normalize_integral
  std::vector<std::pair<Int, Int>> eigenvalues;  // (q, a_q) used to isolate

  // Phi({inf -> a/b})
  Rat value(const Int& a, const Int& b) const;
  // Phi(T_q path) == a Phi(path) on all generators (cheap verification)
  bool hecke_eigen_check(const Int& q, const Int& a) const;
};

// Solve for the one-dimensional sign-eigenspace of functionals with the
// given Hecke eigenvalues.  target(q) supplies a_q for primes as needed;
// throws when the supplied operators cannot isolate a line.
EigenSymbol hecke_eigensymbol(std::shared_ptr<const SymbolSpace> space,
                              const std::function<Int(const Int&)>& target,
                              int sign, long max_operator_prime = 50);

// Rescale so the values on H_1(X0(N); Z) (integer kernel of the boundary)
// generate exactly Z, sign fixed so [0] > 0 when nonzero (else the first
// nonzero kernel value is positive).  Idempotent.
void normalize_integral(EigenSymbol& eig);

// Birch sum: sum_{a mod m} chi^{-1}(a) [a/m]^{sign(chi)}, exact in
// Q(zeta_ord(chi)); equals tau(chi^{-1}) L(E,chi,1)/Omega under the
// normalization contract.
CycQ twisted_lvalue(const EigenSymbol& plus, const EigenSymbol& minus,
                    const DirichletCharacter& chi);

// Gauss sum tau(chi) = sum_a chi(a) zeta_f^a in Q(zeta_lcm(f,ord)).
CycQ gauss_sum(const DirichletCharacter& chi);

}  // namespace iwa
