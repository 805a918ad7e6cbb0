#include "iwa/dirichlet.hpp"

#include <numeric>
#include <sstream>

namespace iwa {

static long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

void DirichletCharacter::finish() {
  // order = lcm of exponent orders; renormalize exponents to that order
  long f = f_.get_si();
  long o = 1;
  for (long a = 0; a < f; ++a) {
    if (expo_[(size_t)a] < 0) continue;
    long e = expo_[(size_t)a];
    if (e == 0) continue;
    long g = std::gcd(e, order_);
    o = lcm_long(o, order_ / g);
  }
  if (o != order_) {
    long scale = order_ / o;
    for (auto& e : expo_)
      if (e > 0) e /= scale;
    order_ = o;
  }
  Int minus1 = f_ - 1;
  if (f_ == 1) { parity_ = 1; return; }
  long em = expo_[(size_t)minus1.get_si()];
  parity_ = (em == 0) ? 1 : -1;  // chi(-1) = zeta^em is +-1; em is 0 or order/2
}

DirichletCharacter DirichletCharacter::trivial(const Int& modulus) {
  DirichletCharacter chi;
  chi.f_ = modulus;
  long f = modulus.get_si();
  chi.order_ = 1;
  chi.expo_.assign((size_t)f, -1);
  Int m = modulus;
  for (long a = 0; a < f; ++a) {
    Int g;
    mpz_gcd(g.get_mpz_t(), Int(a).get_mpz_t(), m.get_mpz_t());
    if (g == 1) chi.expo_[(size_t)a] = 0;
  }
  if (f == 1) chi.expo_.assign(1, 0);
  chi.finish();
  return chi;
}

DirichletCharacter DirichletCharacter::kronecker(const Int& D) {
  // D a fundamental discriminant (1 allowed for the trivial character)
  if (D == 1) return trivial(1);
  // validate fundamentality
  {
    Int m4 = mod_floor(D, 4);
    bool ok = (m4 == 1 && is_squarefree(D)) ||
              (m4 == 0 && [&] {
                Int q = D / 4;
                Int qm4 = mod_floor(q, 4);
                return (qm4 == 2 || qm4 == 3) && is_squarefree(q);
              }());
    if (!ok) throw input_error("kronecker: " + D.get_str() + " is not a fundamental discriminant");
  }
  Int f = D > 0 ? D : -D;
  if (f > 100000) {
    // large modulus: evaluate the symbol on demand instead of tabulating
    DirichletCharacter chi;
    chi.f_ = f;
    chi.order_ = 2;
    chi.parity_ = D > 0 ? 1 : -1;
    chi.kron_D_ = D;
    return chi;
  }
  DirichletCharacter chi;
  chi.f_ = f;
  chi.order_ = 2;
  long fl = f.get_si();
  chi.expo_.assign((size_t)fl, -1);
  for (long a = 0; a < fl; ++a) {
    int v = iwa::kronecker(D, Int(a));
    if (v == 1) chi.expo_[(size_t)a] = 0;
    else if (v == -1) chi.expo_[(size_t)a] = 1;
  }
  chi.finish();
  if (chi.order_ != 2)
    throw input_error("kronecker: " + D.get_str() + " is not a fundamental discriminant");
  return chi;
}

DirichletCharacter DirichletCharacter::imaginary_quadratic(const Int& c) {
  if (c <= 0 || !is_squarefree(c)) throw input_error("imaginary_quadratic: c must be positive squarefree");
  Int D = mod_floor(-c, 4) == 1 ? Int(-c) : Int(-4 * c);
  return kronecker(D);
}

DirichletCharacter DirichletCharacter::teichmuller_power(const Int& p, long j) {
  if (p < 3 || !is_prime(p)) throw input_error("teichmuller character requires an odd prime");
  long pl = p.get_si();
  long pm1 = pl - 1;
  j = ((j % pm1) + pm1) % pm1;
  if (j == 0) return trivial(p);
  // discrete logs via a primitive root
  long g = 2;
  for (;; ++g) {
    bool prim = true;
    for (auto& [q, e] : factor(Int(pm1)))
      if (pow_mod(Int(g), Int(pm1) / q, p) == 1) { prim = false; break; }
    if (prim) break;
  }
  std::vector<long> dlog((size_t)pl, -1);
  Int x = 1;
  for (long i = 0; i < pm1; ++i) {
    dlog[(size_t)x.get_si()] = i;
    x = mod_floor(x * g, p);
  }
  DirichletCharacter chi;
  chi.f_ = p;
  chi.order_ = pm1;
  chi.expo_.assign((size_t)pl, -1);
  for (long a = 1; a < pl; ++a)
    chi.expo_[(size_t)a] = (long)((__int128)dlog[(size_t)a] * j % pm1);
  chi.finish();
  return chi;
}

std::optional<long> DirichletCharacter::exponent(const Int& a) const {
  if (kron_D_ != 0) {
    int v = iwa::kronecker(kron_D_, a);
    if (v == 0) return std::nullopt;
    return v == 1 ? 0 : 1;
  }
  long e = expo_[(size_t)mod_floor(a, f_).get_si()];
  if (e < 0) return std::nullopt;
  return e;
}

int DirichletCharacter::quadratic_value(const Int& a) const {
  if (order_ > 2) throw std::domain_error("quadratic_value on a character of order > 2");
  auto e = exponent(a);
  if (!e) return 0;
  return *e == 0 ? 1 : -1;
}

PadicNumber DirichletCharacter::value_padic(const Int& a, const Int& p, long k) const {
  if ((p - 1) % order_ != 0)
    throw hypothesis_error("character order must divide p-1 for a p-adic embedding");
  auto e = exponent(a);
  if (!e) return PadicNumber(p, k, 0);
  if (*e == 0) return PadicNumber(p, k, 1);
  // fixed embedding: zeta_order = omega(g)^((p-1)/order) for the least
  // primitive root g mod p
  long pl = p.get_si();
  long g = 2;
  for (;; ++g) {
    bool prim = true;
    for (auto& [q, ex] : factor(Int(pl - 1)))
      if (pow_mod(Int(g), Int(pl - 1) / q, p) == 1) { prim = false; break; }
    if (prim) break;
  }
  PadicNumber zeta = teichmuller(Int(g), p, k).pow(Int((pl - 1) / order_));
  return zeta.pow(Int(*e));
}

std::vector<Int> DirichletCharacter::ramified_primes() const {
  std::vector<Int> out;
  for (auto& [q, e] : factor(f_)) out.push_back(q);
  return out;
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
  if (kron_D_ != 0 || o.kron_D_ != 0) {
    if (is_trivial()) return o;
    if (o.is_trivial()) return *this;
    throw input_error("products with large lazy characters are not supported");
  }
  Int F;
  mpz_lcm(F.get_mpz_t(), f_.get_mpz_t(), o.f_.get_mpz_t());
  long Fl = F.get_si();
  long O = lcm_long(order_, o.order_);
  DirichletCharacter out;
  out.f_ = F;
  out.order_ = O;
  out.expo_.assign((size_t)Fl, -1);
  for (long a = 0; a < Fl; ++a) {
    auto e1 = exponent(Int(a));
    auto e2 = o.exponent(Int(a));
    if (!e1 || !e2) continue;
    long v = (long)(((__int128)(*e1) * (O / order_) + (__int128)(*e2) * (O / o.order_)) % O);
    out.expo_[(size_t)a] = v;
  }
  out.finish();
  // reduce to the conductor: smallest divisor F' of F such that the value
  // is constant on every residue class mod F' (over units mod F)
  Int best = out.f_;
  for (Int d = 1; d * d <= out.f_; ++d) {
    if (out.f_ % d != 0) continue;
    Int other = out.f_ / d;
    for (const Int& cand : std::vector<Int>{d, other}) {
      if (cand >= best) continue;
      long cl = cand.get_si();
      std::vector<long> cls((size_t)cl, -2);  // -2: unseen
      bool ok = true;
      for (long a = 0; ok && a < Fl; ++a) {
        if (out.expo_[(size_t)a] < 0) continue;
        long r = a % cl;
        if (cls[(size_t)r] == -2) cls[(size_t)r] = out.expo_[(size_t)a];
        else if (cls[(size_t)r] != out.expo_[(size_t)a]) ok = false;
      }
      if (ok) best = cand;
    }
  }
  if (best != out.f_) {
    DirichletCharacter red;
    red.f_ = best;
    red.order_ = out.order_;
    long bl = best.get_si();
    red.expo_.assign((size_t)bl, -1);
    for (long a = 0; a < Fl; ++a) {
      if (out.expo_[(size_t)a] < 0) continue;
      red.expo_[(size_t)(a % bl)] = out.expo_[(size_t)a];
    }
    red.finish();
    return red;
  }
  return out;
}

DirichletCharacter DirichletCharacter::inverse() const {
  DirichletCharacter out = *this;  // quadratic lazy characters are self-inverse
  for (auto& e : out.expo_)
    if (e > 0) e = order_ - e;
  return out;
}

DirichletCharacter DirichletCharacter::parse(const std::string& spec, const Int& p) {
  // split on '*'
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == '*') { parts.push_back(cur); cur.clear(); }
    else if (!isspace((unsigned char)ch)) cur.push_back(ch);
  }
  parts.push_back(cur);
  DirichletCharacter acc = trivial(1);
  for (auto& s : parts) {
    if (s.empty()) throw input_error("empty character factor");
    if (s == "trivial") continue;
    if (s.rfind("kronecker:", 0) == 0) {
      acc = acc * kronecker(parse_int(s.substr(10)));
    } else if (s.rfind("teichmuller", 0) == 0) {
      long j = 1;
      auto caret = s.find('^');
      if (caret != std::string::npos) {
        Int jv = parse_int(s.substr(caret + 1));
        if (!jv.fits_slong_p()) throw input_error("teichmuller exponent too large");
        j = jv.get_si();
      }
      acc = acc * teichmuller_power(p, j);
    } else {
      throw input_error("unknown character spec: " + s);
    }
  }
  return acc;
}

std::string DirichletCharacter::str() const {
  std::ostringstream os;
  os << "chi(mod " << f_ << ", order " << order_ << ", " << (even() ? "even" : "odd") << ")";
  return os.str();
}

}  // namespace iwa
