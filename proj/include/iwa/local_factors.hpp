#pragma once

// Local correction calculus at primes l != p: the splitting count s_l, the
// root multiplicity d_l, the Lambda-element P_l(T) built from the Euler
// polynomial by gamma_l -> (1+T)^{f_l}, the resulting sigma = s_l * d_l,
// and the reducible-case corank bookkeeping t_l.

#include "iwa/elliptic.hpp"
#include "iwa/gamma_level.hpp"
#include "iwa/series.hpp"

namespace iwa {

class DirichletCharacter;  // dirichlet.hpp

struct SigmaRecord {
  Int ell;
  Int s_ell = 1;       // a power of p
  long d_ell = 0;
  long sigma = 0;      // s_l * d_l
  IwasawaSeries euler_element;  // P_l(T)
  PadicNumber f_ell;
  bool ambiguous_corank = false;  // good l = 1, a_l = 2 mod p (double root)
  std::string str() const;
};

struct TLRecord {
  Int ell;
  int corank_phi = 0;
  int corank_psi = 0;
  int corank_torsion = 0;
  long t_ell = 0;
  bool flagged = false;  // ambiguous good-reduction double-root case
};

// s_l = p^(v_p(l^{p-1} - 1) - 1), the number of primes of Q_infty over l.
Int s_ell(const Int& ell, const Int& p);

// Multiplicity of X = l^{-1} mod p as a root of the Euler polynomial mod p.
long d_ell(const LocalData& local, const Int& p);

// f_l = log<l> / log(1+p) in Z_p, the gamma-exponent of Frobenius at l.
PadicNumber frobenius_exponent(const Int& ell, const Int& p, long k);

// P_l(T) = P_l(l^{-1} (1+T)^{f_l}), truncated.
IwasawaSeries euler_element(const LocalData& local, const Int& p, const Precision& prec);

// Same element at finite level n: P_l(l^{-1} gamma^{f_l mod p^n}).
GammaLevelElement euler_element_level(const LocalData& local, const Int& p, long n, long k);

// Assembles s, d, sigma, P_l and cross-checks lambda(P_l) = s_l * d_l.
SigmaRecord sigma_record(const CurveQ& E, const Int& ell, const Int& p,
                         const Precision& prec);
SigmaRecord sigma_record(const LocalData& local, const Int& p, const Precision& prec);

// Corank of A_theta((Q_infty)_eta) for a character theta of prime-to-p
// order: 1 iff theta is unramified at l and theta(l) = 1.
int character_local_corank(const DirichletCharacter& theta, const Int& ell, const Int& p);

// t_l for the reducible case phi * psi = omega (psi odd unramified at p).
TLRecord t_ell(const CurveQ& E, const DirichletCharacter& phi,
               const DirichletCharacter& psi, const Int& ell, const Int& p);

}  // namespace iwa
