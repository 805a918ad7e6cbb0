#pragma once

// Truncated arithmetic in Lambda = Z_p[[T]]: products, mu/lambda extraction
// via Weierstrass-degree detection, the involution T -> (1+T)^{-1} - 1,
// binomial powers (1+T)^f with f in Z_p, and mod-p congruence testing.

#include "iwa/padic.hpp"

namespace iwa {

struct InvariantPair {
  long mu = 0;
  long lambda = 0;
  bool certified = false;
  std::string detail;  // why certification failed, when it did
};

class IwasawaSeries {
 public:
  IwasawaSeries(const Int& p, long degree, long k_prec);
  IwasawaSeries(const Int& p, std::vector<PadicNumber> coeffs);

  static IwasawaSeries one(const Int& p, long degree, long k);
  static IwasawaSeries zero(const Int& p, long degree, long k) {
    return IwasawaSeries(p, degree, k);
  }

  const Int& prime() const { return p_; }
  long degree() const { return (long)c_.size(); }
  long precision() const { return k_; }
  const PadicNumber& coeff(long i) const { return c_[i]; }
  void set_coeff(long i, const PadicNumber& v);

  IwasawaSeries operator+(const IwasawaSeries& g) const;
  IwasawaSeries operator-(const IwasawaSeries& g) const;
  IwasawaSeries operator*(const Int& c) const;
  IwasawaSeries operator*(const PadicNumber& c) const;
  bool operator==(const IwasawaSeries& g) const;

  IwasawaSeries truncated(long degree) const;

  std::string str() const;
  std::string to_json() const;                   // {"p","k","n","coeffs":[...]}
  static IwasawaSeries from_json(const std::string& text);

 private:
  Int p_;
  long k_;
  std::vector<PadicNumber> c_;
};

// Truncated product at degree min(deg f, deg g); precision is the min.
IwasawaSeries mul(const IwasawaSeries& f, const IwasawaSeries& g);

// Weierstrass data: mu = min coefficient valuation, lambda = index of the
// first unit coefficient of f / p^mu.  certified=false (with detail) when
// mu is indistinguishable from the working precision or no unit coefficient
// appears below the given margin (margin <= 0 means the full truncation).
InvariantPair invariants(const IwasawaSeries& f, long margin = 0);

// (1+T)^f for f in Z_p, via generalized binomials C(f, j) (p-integral).
IwasawaSeries binomial_power(const PadicNumber& f_exponent, long degree);

// Substitute T -> (1+T)^{-1} - 1.
IwasawaSeries involution(const IwasawaSeries& f);

// Substitute T -> (1+T)^s - 1; for unit s this is a change of the
// topological generator and must preserve mu and lambda.
IwasawaSeries substitute_generator(const IwasawaSeries& f, const PadicNumber& s);

PadicNumber eval_at_zero(const IwasawaSeries& f);

// True iff f = u * g mod p for a scalar unit u (u searched over (Z/p)^*
// when unit_allowed, otherwise only u = 1).  Returns the witness.
struct CongruenceWitness {
  bool congruent = false;
  Int unit = 1;
};
CongruenceWitness congruent_mod_p(const IwasawaSeries& f, const IwasawaSeries& g,
                                  bool unit_allowed);

}  // namespace iwa
