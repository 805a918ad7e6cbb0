#pragma once

// Exact arithmetic in Q(zeta_m): elements are rational polynomials in
// zeta_m reduced modulo the m-th cyclotomic polynomial.  Small m only
// (twist conductors and p-power orders at desk scale).

#include "iwa/arith.hpp"

namespace iwa {

// Phi_m(x), exact integer coefficients (computed by dividing x^m - 1 by the
// cyclotomic polynomials of the proper divisors).
std::vector<Int> cyclotomic_polynomial(long m);

class CycQ {
 public:
  explicit CycQ(long m);                      // zero of Q(zeta_m)
  CycQ(long m, const Rat& constant);
  static CycQ zeta_power(long m, long e);     // zeta_m^e

  long root_order() const { return m_; }
  long degree() const { return (long)c_.size(); }
  const Rat& coeff(long i) const { return c_[(size_t)i]; }

  CycQ operator+(const CycQ& o) const;
  CycQ operator-(const CycQ& o) const;
  CycQ operator*(const CycQ& o) const;
  CycQ operator*(const Rat& r) const;
  bool operator==(const CycQ& o) const;
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;   // requires is_rational()

  // Galois action zeta -> zeta^j, gcd(j, m) = 1.
  CycQ galois(long j) const;

  std::string str() const;

 private:
  long m_;
  std::vector<Rat> c_;  // length deg(Phi_m), basis 1, zeta, ..., zeta^(deg-1)
  void reduce(std::vector<Rat>& raw);  // length-m vector -> basis
};

}  // namespace iwa
