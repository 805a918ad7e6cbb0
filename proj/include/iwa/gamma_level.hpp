#pragma once

// Finite-level arithmetic in Z_p[Gamma/Gamma^{p^n}] with the generator
// convention kappa(gamma) = 1 + p.  Elements are dense coefficient vectors
// indexed by the exponent of gamma in [0, p^n).  The natural projection to
// level n-1, the sum-over-preimages lift, cyclic convolution, and the
// expansion gamma^g -> (1+T)^g into an IwasawaSeries live here.

#include "iwa/series.hpp"

namespace iwa {

// Discrete logs in (1 + pZ_p)/(1 + p^{n+1}Z_p) with base 1+p: wild_log(u)
// is the g in [0, p^n) with (1+p)^g = <u> mod p^{n+1}, where <u> is the
// principal-unit part u * omega(u)^{-1}.
class WildLogTable {
 public:
  WildLogTable(const Int& p, long n);
  long level() const { return n_; }
  const Int& prime() const { return p_; }
  // u a unit mod p^{n+1}
  long log_of(const Int& u) const;

 private:
  Int p_;
  long n_;
  Int mod_;                 // p^{n+1}
  long pn_;                 // p^n as machine int (levels are desk-scale)
  std::vector<long> logs_;  // indexed by residue of <u> mod p^{n+1}, -1 if unused
};

class GammaLevelElement {
 public:
  GammaLevelElement(const Int& p, long n, long k_prec);

  const Int& prime() const { return p_; }
  long level() const { return n_; }
  long size() const { return (long)c_.size(); }  // p^n
  long precision() const { return k_; }

  const PadicNumber& coeff(long g) const { return c_[(size_t)g]; }
  void add_to(long g, const PadicNumber& v);
  void set_coeff(long g, const PadicNumber& v);

  GammaLevelElement operator+(const GammaLevelElement& o) const;
  GammaLevelElement operator-(const GammaLevelElement& o) const;
  GammaLevelElement operator*(const PadicNumber& c) const;
  bool operator==(const GammaLevelElement& o) const;

  // Cyclic convolution: the product in Z_p[Gamma_n].
  GammaLevelElement convolve(const GammaLevelElement& o) const;

  // Projection Z_p[Gamma_n] -> Z_p[Gamma_{n-1}], gamma^g -> gamma^(g mod p^{n-1}).
  GammaLevelElement project() const;

  // Lift Z_p[Gamma_{n-1}] -> Z_p[Gamma_n] summing each element over its p preimages.
  GammaLevelElement lift_sum() const;

  // Expand sum c_g gamma^g as sum c_g (1+T)^g, truncated.
  IwasawaSeries to_series(long degree) const;

  // Reduce coefficients mod p (for congruence checks).
  std::vector<Int> mod_p_vector() const;

  std::string to_json() const;

 private:
  Int p_;
  long n_;
  long k_;
  std::vector<PadicNumber> c_;
};

// 1 - c * gamma^f viewed at level n (f reduced mod p^n): the building block
// of Euler-factor multipliers.
GammaLevelElement linear_euler_factor(const Int& p, long n, long k,
                                      const PadicNumber& c, long f_mod_pn);

// Finite-level lambda/mu margin: readings below p^n - p^(n-1) are stable
// under raising the level.
long level_margin(const Int& p, long n);

}  // namespace iwa
