#pragma once

// Shared test oracles.

#include "iwa/cyclotomic.hpp"

namespace iwa_test {

using namespace iwa;

// (zeta_m - 1)-adic valuation of a nonzero element of Q(zeta_m) with p-free
// denominators, m a power of the odd prime p (totally ramified, so global
// divisibility by zeta - 1 is the valuation).  Used as an independent
// finite-level lambda oracle: for a series with mu = 0 and first unit
// coefficient at lambda < phi(m), the value at zeta - 1 has valuation lambda.
inline long pi_valuation(CycQ x, long m, const Int& p) {
  Int den = 1;
  for (long i = 0; i < x.degree(); ++i)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.coeff(i).get_den().get_mpz_t());
  if (mod_floor(den, p) == 0) throw std::logic_error("pi_valuation: p in denominator");
  x = x * Rat(den);
  if (x.is_zero()) throw std::logic_error("pi_valuation of zero");

  CycQ pi = CycQ::zeta_power(m, 1) - CycQ(m, Rat(1));
  // invert pi by solving pi * y = 1 in the Q-algebra
  long deg = pi.degree();
  std::vector<std::vector<Rat>> Mt((size_t)deg, std::vector<Rat>((size_t)deg + 1, Rat(0)));
  for (long j = 0; j < deg; ++j) {
    CycQ col = pi * CycQ::zeta_power(m, j);
    for (long i = 0; i < deg; ++i) Mt[(size_t)i][(size_t)j] = col.coeff(i);
  }
  Mt[0][(size_t)deg] = 1;
  for (long c = 0, r = 0; c < deg && r < deg; ++c) {
    long pr = -1;
    for (long i = r; i < deg; ++i)
      if (Mt[(size_t)i][(size_t)c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(Mt[(size_t)r], Mt[(size_t)pr]);
    Rat inv = Rat(1) / Mt[(size_t)r][(size_t)c];
    for (long cc = 0; cc <= deg; ++cc) Mt[(size_t)r][(size_t)cc] *= inv;
    for (long i = 0; i < deg; ++i) {
      if (i == r) continue;
      Rat f = Mt[(size_t)i][(size_t)c];
      if (f == 0) continue;
      for (long cc = 0; cc <= deg; ++cc) Mt[(size_t)i][(size_t)cc] -= f * Mt[(size_t)r][(size_t)cc];
    }
    ++r;
  }
  CycQ pinv(m);
  for (long i = 0; i < deg; ++i)
    pinv = pinv + CycQ::zeta_power(m, i) * Mt[(size_t)i][(size_t)deg];
  if (!(pi * pinv == CycQ(m, Rat(1)))) throw std::logic_error("pi inverse failed");

  long v = 0;
  for (;;) {
    CycQ y = x * pinv;
    bool integral = true;
    for (long i = 0; i < y.degree() && integral; ++i)
      if (y.coeff(i).get_den() != 1) integral = false;
    if (!integral) return v;
    x = y;
    ++v;
    if (v > 500) throw std::logic_error("pi_valuation runaway");
  }
}

}  // namespace iwa_test
