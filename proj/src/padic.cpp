#include "iwa/padic.hpp"

#include <cmath>
#include <sstream>

namespace iwa {

PadicNumber::PadicNumber(const Int& p, long k, const Int& value) : p_(p), k_(k) {
  if (k < 1) throw input_error("padic precision must be >= 1");
  r_ = mod_floor(value, pow_int(p, (unsigned long)k));
}

PadicNumber PadicNumber::from_rational(const Int& p, long k, const Rat& x) {
  const Int& den = x.get_den();
  if (den % p == 0) throw std::domain_error("rational has p in denominator");
  Int m = pow_int(p, (unsigned long)k);
  Int r = mod_floor(x.get_num(), m) * inv_mod(mod_floor(den, m), m);
  return PadicNumber(p, k, r);
}

void PadicNumber::check_same(const PadicNumber& o) const {
  if (p_ != o.p_) throw std::domain_error("prime mismatch");
}

std::optional<long> PadicNumber::valuation() const {
  if (r_ == 0) return std::nullopt;
  return valuation_int(r_, p_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  check_same(o);
  long k = std::min(k_, o.k_);
  return PadicNumber(p_, k, r_ + o.r_);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const {
  check_same(o);
  long k = std::min(k_, o.k_);
  return PadicNumber(p_, k, r_ - o.r_);
}

PadicNumber PadicNumber::operator-() const { return PadicNumber(p_, k_, -r_); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  check_same(o);
  long k = std::min(k_, o.k_);
  return PadicNumber(p_, k, r_ * o.r_);
}

PadicNumber PadicNumber::operator*(const Int& c) const {
  return PadicNumber(p_, k_, r_ * c);
}

bool PadicNumber::operator==(const PadicNumber& o) const {
  if (p_ != o.p_) return false;
  long k = std::min(k_, o.k_);
  Int m = pow_int(p_, (unsigned long)k);
  return mod_floor(r_, m) == mod_floor(o.r_, m);
}

PadicNumber PadicNumber::inv() const {
  if (!is_unit()) throw std::domain_error("inverse of non-unit");
  return PadicNumber(p_, k_, inv_mod(r_, modulus()));
}

PadicNumber PadicNumber::div(const PadicNumber& o) const {
  return *this * o.inv();
}

PadicNumber PadicNumber::div_by_p(long e) const {
  if (k_ <= e) throw precision_error("division by p exhausts precision");
  Int pe = pow_int(p_, (unsigned long)e);
  if (r_ % pe != 0) throw std::domain_error("division by p of a value with v_p < e");
  return PadicNumber(p_, k_ - e, r_ / pe);
}

PadicNumber PadicNumber::pow(const Int& e) const {
  if (e < 0) return inv().pow(-e);
  return PadicNumber(p_, k_, pow_mod(r_, e, modulus()));
}

PadicNumber PadicNumber::at_precision(long k) const {
  if (k > k_) throw precision_error("cannot raise precision");
  return PadicNumber(p_, k, r_);
}

std::string PadicNumber::str() const {
  std::ostringstream os;
  os << r_ << " mod " << p_ << "^" << k_;
  return os.str();
}

long valuation(const Int& x, const Int& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  return valuation_int(x, p);
}

PadicNumber teichmuller(const Int& a, const Int& p, long k) {
  if (p < 3 || !is_prime(p)) throw input_error("teichmuller requires an odd prime");
  if (a % p == 0) throw std::domain_error("teichmuller of a multiple of p");
  Int m = pow_int(p, (unsigned long)k);
  Int x = mod_floor(a, m);
  // x -> x^p converges to the fixed point, one digit per step
  for (long i = 0; i < k; ++i) {
    Int nx = pow_mod(x, p, m);
    if (nx == x) break;
    x = nx;
  }
  return PadicNumber(p, k, x);
}

PadicNumber plog(const PadicNumber& u) {
  const Int& p = u.prime();
  long k = u.precision();
  if (mod_floor(u.residue() - 1, p) != 0) throw std::domain_error("log domain: u != 1 mod p");
  // sum (-1)^(i+1) (u-1)^i / i, accumulated exactly mod p^k; the 1/i for
  // p | i is taken inside Z (v_p((u-1)^i) >= i covers it), so work at an
  // integer precision K large enough that all i <= I contribute exactly.
  long I = k;  // terms with i > k have v_p >= i - log_p(i) >= k for i > k, p >= 3
  while (I - (long)(std::log((double)I) / std::log(p.get_d())) < k) ++I;
  long K = k;
  for (long i = 1; i <= I; ++i) K = std::max(K, k + valuation_int(Int(i), p));
  Int m = pow_int(p, (unsigned long)K);
  Int t = mod_floor(u.residue() - 1, m);
  Int term = 1, acc = 0;
  for (long i = 1; i <= I; ++i) {
    term = mod_floor(term * t, m);
    // term = (u-1)^i mod p^K; v_p(term-true value) >= K, and v_p((u-1)^i) >= i,
    // so term/i is determined mod p^(K - v_p(i)) >= p^k.
    long vi = valuation_int(Int(i), p);
    Int pe = pow_int(p, (unsigned long)vi);
    Int unit_i = Int(i) / pe;
    Int contrib = term / pe;  // exact: i <= I ensures v_p(term) >= vi
    contrib = mod_floor(contrib * inv_mod(unit_i, m), m);
    if (i % 2 == 0) acc -= contrib; else acc += contrib;
  }
  return PadicNumber(p, k, acc);
}

PadicNumber hensel_unit_root(const Int& a_p, const Int& p, long k) {
  if (p < 3 || !is_prime(p)) throw input_error("hensel_unit_root requires an odd prime");
  if (a_p % p == 0) throw std::domain_error("not ordinary: p | a_p");
  Int m = pow_int(p, (unsigned long)k);
  Int x = mod_floor(a_p, m);  // root of x^2 - a x + p mod p is x = a
  for (long i = 0; i < k + 1; ++i) {
    Int f = mod_floor(x * x - a_p * x + p, m);
    if (f == 0) break;
    Int fp = mod_floor(2 * x - a_p, m);  // = a mod p, a unit
    x = mod_floor(x - f * inv_mod(fp, m), m);
  }
  return PadicNumber(p, k, x);
}

}  // namespace iwa
