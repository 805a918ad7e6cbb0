#pragma once

// Small exact number-theory helpers shared by all modules.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwa {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a stated theorem hypothesis fails; CLI maps this to exit code 2.
struct hypothesis_error : std::runtime_error {
  explicit hypothesis_error(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a result cannot be certified at the working precision/level;
// CLI maps this to exit code 3.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};

// Malformed user input; CLI maps this to exit code 4.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

// strict integer parse for user-facing inputs
Int parse_int(const std::string& text);

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Inverse of a mod m; requires gcd(a, m) = 1.
Int inv_mod(const Int& a, const Int& m);

Int pow_mod(Int base, Int e, const Int& m);

// Largest e with p^e | n.  n must be nonzero.
long valuation_int(Int n, const Int& p);

bool is_prime(const Int& n);

// Trial-division factorization, distinct primes with exponents.
std::vector<std::pair<Int, long>> factor(Int n);

bool is_squarefree(const Int& n);

// Kronecker symbol (a|n), fully general.
int kronecker(const Int& a, const Int& n);

// Primes up to bound, ascending.
std::vector<long> primes_up_to(long bound);

// [SL2(Z) : Gamma0(N)] = N * prod_{l|N} (1 + 1/l).
Int gamma0_index(const Int& N);

// Genus of X0(N) by the standard formula.
long genus_x0(const Int& N);

// Number of cusps of X0(N): sum_{d|N} phi(gcd(d, N/d)).
long cusp_count_x0(const Int& N);

// Sturm bound for weight-2 forms on Gamma0(N): ceil(index / 6).
long sturm_bound(const Int& N);

Int euler_phi(const Int& n);

}  // namespace iwa
