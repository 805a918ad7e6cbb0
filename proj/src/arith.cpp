#include "iwa/arith.hpp"

namespace iwa {

Int parse_int(const std::string& text) {
  Int v;
  if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0)
    throw input_error("not an integer: '" + text + "'");
  return v;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("inv_mod: not invertible");
  return r;
}

Int pow_mod(Int base, Int e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

long valuation_int(Int n, const Int& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  long v = 0;
  Int q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    n = q;
    ++v;
  }
}

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<std::pair<Int, long>> factor(Int n) {
  std::vector<std::pair<Int, long>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      long e = 0;
      while (n % d == 0) { n /= d; ++e; }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

int kronecker(const Int& a, const Int& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> comp(bound + 1, false);
  for (long i = 2; i <= bound; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (long j = 2 * i; j <= bound; j += i) comp[j] = true;
    }
  }
  return out;
}

Int gamma0_index(const Int& N) {
  Int idx = N;
  for (auto& [p, e] : factor(N)) idx = idx / p * (p + 1);
  return idx;
}

long genus_x0(const Int& N) {
  Int mu = gamma0_index(N);
  auto fs = factor(N);
  // nu2: number of elliptic points of order 2
  Int nu2 = 1;
  if (N % 4 == 0) {
    nu2 = 0;
  } else {
    for (auto& [p, e] : fs) {
      if (p == 2) continue;
      int k = kronecker(Int(-1), p);
      if (k == -1) { nu2 = 0; break; }
      nu2 *= 2;
    }
  }
  // nu3: elliptic points of order 3
  Int nu3 = 1;
  if (N % 9 == 0) {
    nu3 = 0;
  } else {
    for (auto& [p, e] : fs) {
      if (p == 3) continue;
      int k = kronecker(Int(-3), p);
      if (k == -1) { nu3 = 0; break; }
      nu3 *= 2;
    }
  }
  long nuinf = cusp_count_x0(N);
  // g = 1 + mu/12 - nu2/4 - nu3/3 - nuinf/2, always an integer
  Int twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nuinf;
  Int g = twelve_g / 12;
  return g.get_si();
}

long cusp_count_x0(const Int& N) {
  long total = 0;
  for (Int d = 1; d * d <= N; ++d) {
    if (N % d != 0) continue;
    Int e = N / d;
    Int g1, g2;
    mpz_gcd(g1.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
    total += euler_phi(g1).get_si();
    if (d != e) {
      mpz_gcd(g2.get_mpz_t(), e.get_mpz_t(), d.get_mpz_t());
      total += euler_phi(g2).get_si();
    }
  }
  return total;
}

long sturm_bound(const Int& N) {
  Int idx = gamma0_index(N);
  Int b = (idx + 5) / 6;
  return b.get_si();
}

Int euler_phi(const Int& n) {
  Int r = n;
  for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace iwa
