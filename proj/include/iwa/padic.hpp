#pragma once

// Exact arithmetic in Z/p^k with explicit precision tracking, plus the
// p-adic primitives (valuation, Teichmuller lift, log, Hensel lifting).
//
// A PadicNumber is an element of Z_p known modulo p^k.  Arithmetic
// propagates precision pessimistically: a result never claims digits
// beyond the minimum precision of its operands.  Division by p is a
// separate operation that costs one digit of precision; ordinary
// division requires a unit divisor.

#include "iwa/arith.hpp"

#include <optional>

namespace iwa {

struct Precision {
  long padic_digits = 16;  // k: values are known mod p^k
  long series_degree = 32; // n: truncation degree for Lambda = Z_p[[T]]

  Precision() = default;
  Precision(long k, long n) : padic_digits(k), series_degree(n) {
    if (k < 1 || n < 1) throw input_error("precision requires k >= 1 and n >= 1");
  }
};

class PadicNumber {
 public:
  PadicNumber() : p_(0), k_(0), r_(0) {}
  PadicNumber(const Int& p, long k, const Int& value);

  // Embeds a rational with p-prime denominator.
  static PadicNumber from_rational(const Int& p, long k, const Rat& x);

  const Int& prime() const { return p_; }
  long precision() const { return k_; }
  const Int& residue() const { return r_; }
  Int modulus() const { return pow_int(p_, (unsigned long)k_); }

  bool is_zero() const { return r_ == 0; }  // zero at the known precision
  bool is_unit() const { return k_ >= 1 && r_ % p_ != 0; }

  // v_p of the residue; nullopt means "indeterminate, valuation >= k".
  std::optional<long> valuation() const;

  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-(const PadicNumber& o) const;
  PadicNumber operator-() const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber operator*(const Int& c) const;
  bool operator==(const PadicNumber& o) const;

  PadicNumber inv() const;                   // requires a unit
  PadicNumber div(const PadicNumber& o) const;  // o a unit
  PadicNumber div_by_p(long e = 1) const;    // requires v >= e, loses e digits
  PadicNumber pow(const Int& e) const;       // e >= 0, or e < 0 on a unit

  // Truncate to fewer digits.
  PadicNumber at_precision(long k) const;

  std::string str() const;  // decimal residue, e.g. "12 mod 5^2"

 private:
  Int p_;
  long k_;
  Int r_;  // reduced mod p^k
  void check_same(const PadicNumber& o) const;
};

// v_p(x) for a nonzero integer.
long valuation(const Int& x, const Int& p);

// Teichmuller lift: the unique (p-1)-st root of unity congruent to a mod p.
// Requires p odd and p not dividing a.
PadicNumber teichmuller(const Int& a, const Int& p, long k);

// p-adic logarithm of a principal unit u = 1 mod p, certified to the
// precision of u (terms (u-1)^i/i vanish mod p^k once i - floor(log_p i)
// >= k, and the division by i costs v_p(i) digits, which the PadicNumber
// arithmetic tracks).
PadicNumber plog(const PadicNumber& u);

// Unit root of x^2 - a_p x + p, lifted by Newton iteration from a_p mod p.
// Requires p odd and p not dividing a_p.
PadicNumber hensel_unit_root(const Int& a_p, const Int& p, long k);

}  // namespace iwa
