#pragma once

// Mazur-Tate elements: level-n group-ring data built from modular-symbol
// values [a/p^(m+1)], alpha-stabilized so that consecutive levels are
// norm-compatible, projected to the wild (tame-trivial) branch as elements
// of Z_p[Gamma_m].  Analytic lambda/mu readings, Sigma0-stripping, and the
// two finite-level congruence checks live here.

#include "iwa/gamma_level.hpp"
#include "iwa/kubota_leopoldt.hpp"
#include "iwa/local_factors.hpp"
#include "iwa/modular_symbols.hpp"

namespace iwa {

struct MazurTateElement {
  Int p;
  long level = 0;            // n
  PadicNumber alpha;         // unit eigenvalue used for stabilization
  bool multiplicative_at_p = false;
  bool trivial_zero = false; // split multiplicative at p
  bool distribution_checked = false;

  // raw symbol values at the top level, indexed by a mod p^(n+1)
  std::vector<Rat> raw_plus, raw_minus;
  // stabilized wild-branch elements, levels 0..n
  std::vector<GammaLevelElement> stabilized;

  const GammaLevelElement& top() const { return stabilized.back(); }
  IwasawaSeries series(long degree = 0) const;  // default: level-margin cap
  std::string to_json() const;  // map a -> raw value at the stated level
};

// Builds the element; requires E ordinary and not anomalous at p.
// The plus symbol drives the wild branch; the minus symbol only feeds the
// exported raw map (its wild-branch projection cancels).
MazurTateElement mazur_tate(const EigenSymbol& plus, const EigenSymbol* minus,
                            const CurveQ& E, const Int& p, long n, long k);

// Sigma0-stripped level-m element: convolve with the finite-level Euler
// factors of the given local data.
GammaLevelElement mt_stripped(const MazurTateElement& mt, long m,
                              const std::vector<LocalData>& sigma0);

// a_q provider for eigenspace isolation: U_q eigenvalue at bad q, point
// count at good q.
std::function<Int(const Int&)> curve_eigenvalues(const CurveQ& E, long count_bound = 1000000);

struct AnalyticResult {
  MazurTateElement element;
  InvariantPair primitive;   // mu^anal, lambda^anal
  InvariantPair corrected;   // with the Sigma0 Euler factors multiplied in
  long sigma_sum = 0;        // sum of sigma_E^(l) over Sigma0
  std::vector<SigmaRecord> sigma_table;
  std::vector<LocalData> sigma0_data;
  bool trivial_zero = false;
};

// Full analytic pipeline at symbol level N (the conductor, supplied by the
// caller; conductor computation is out of scope).  sigma0_data, when given,
// supplies the local data structurally (twist models can be non-minimal at
// primes outside Sigma0 and classify_reduction would refuse them).
AnalyticResult analytic_invariants(const CurveQ& E, const Int& N, const Int& p,
                                   const std::vector<Int>& sigma0, long level,
                                   const Precision& prec,
                                   const std::function<Int(const Int&)>* eigenvalue_override = nullptr,
                                   const std::vector<LocalData>* sigma0_data = nullptr);

struct LevelCongruence {
  bool congruent = false;
  Int unit = 1;     // scalar witness in (Z/p)^*
  long level = 0;
};

// coefficientwise f = u g mod p over Z_p[Gamma_n]
LevelCongruence congruent_mod_p_level(const GammaLevelElement& f, const GammaLevelElement& g);

// Congruence of the Sigma0-stripped stabilized elements of two curves (each
// result carries its own Sigma0 local data from analytic_invariants).
LevelCongruence verify_congruence_pair(const AnalyticResult& a1, const AnalyticResult& a2,
                                       long level);

// Congruence of a reducible curve's element against the Eisenstein product
// of the two classical factors.
LevelCongruence verify_congruence_eisenstein(const AnalyticResult& ar,
                                             const DirichletCharacter& psi,
                                             const std::vector<Int>& sigma0, long level,
                                             const Int& p, long k);

}  // namespace iwa
