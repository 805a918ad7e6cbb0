#pragma once

// Dirichlet characters with exact values: each character stores its modulus,
// order o, and a table a -> exponent of zeta_o (or "zero" on non-units).
// Characters of order dividing p-1 embed p-adically through a fixed
// Teichmuller image of zeta_{p-1}; all characters evaluate exactly in Q(zeta_o).

#include "iwa/padic.hpp"

#include <optional>

namespace iwa {

class DirichletCharacter {
 public:
  // principal character mod m
  static DirichletCharacter trivial(const Int& modulus = 1);
  // quadratic character attached to a fundamental discriminant D (Kronecker symbol)
  static DirichletCharacter kronecker(const Int& D);
  // quadratic character of Q(sqrt(-c)), c > 0 squarefree: kronecker(disc)
  static DirichletCharacter imaginary_quadratic(const Int& c);
  // omega^j at p (order (p-1)/gcd(j, p-1))
  static DirichletCharacter teichmuller_power(const Int& p, long j);
  // CLI syntax: "trivial", "kronecker:D", "teichmuller^j@p", products with '*'
  static DirichletCharacter parse(const std::string& spec, const Int& p);

  const Int& modulus() const { return f_; }
  long order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }
  bool is_quadratic() const { return order_ == 2; }
  bool even() const { return parity_ == 1; }
  bool odd() const { return parity_ == -1; }
  bool ramified_at(const Int& ell) const { return mod_floor(f_, ell) == 0; }
  std::vector<Int> ramified_primes() const;

  // exponent e with chi(a) = zeta_order^e, or nullopt when gcd(a, f) > 1
  std::optional<long> exponent(const Int& a) const;
  // +-1 or 0 values for order <= 2 characters
  int quadratic_value(const Int& a) const;
  // chi(a) in Z_p via the fixed Teichmuller embedding; requires order | p-1
  PadicNumber value_padic(const Int& a, const Int& p, long k) const;

  // product (defined mod lcm of moduli, then reduced to its conductor)
  DirichletCharacter operator*(const DirichletCharacter& o) const;
  DirichletCharacter inverse() const;

  std::string str() const;

 private:
  DirichletCharacter() = default;
  void finish();  // compute order, parity from the table
  Int f_ = 1;
  long order_ = 1;
  int parity_ = 1;
  std::vector<long> expo_;  // size f_, exponent mod order_, -1 on non-units
  Int kron_D_ = 0;          // lazy Kronecker mode for large quadratic moduli
};

}  // namespace iwa
