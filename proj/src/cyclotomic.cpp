#include "iwa/cyclotomic.hpp"

#include <map>
#include <sstream>

namespace iwa {

// exact division of integer polynomials, quotient returned
static std::vector<Int> poly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> q(num.size() - den.size() + 1, Int(0));
  for (long i = (long)q.size() - 1; i >= 0; --i) {
    Int c = num[(size_t)i + den.size() - 1] / den.back();
    q[(size_t)i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j)
        num[(size_t)i + j] -= c * den[j];
  }
  for (auto& x : num)
    if (x != 0) throw std::logic_error("poly_divexact: nonzero remainder");
  return q;
}

std::vector<Int> cyclotomic_polynomial(long m) {
  static std::map<long, std::vector<Int>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for all proper divisors d
  std::vector<Int> num((size_t)m + 1, Int(0));
  num[0] = -1;
  num[(size_t)m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = poly_divexact(std::move(num), cyclotomic_polynomial(d));
  }
  cache[m] = num;
  return num;
}

CycQ::CycQ(long m) : m_(m) {
  c_.assign(cyclotomic_polynomial(m).size() - 1, Rat(0));
}

CycQ::CycQ(long m, const Rat& constant) : CycQ(m) { c_[0] = constant; }

CycQ CycQ::zeta_power(long m, long e) {
  CycQ z(m);
  e = ((e % m) + m) % m;
  std::vector<Rat> raw((size_t)m, Rat(0));
  raw[(size_t)e] = 1;
  z.reduce(raw);
  return z;
}

void CycQ::reduce(std::vector<Rat>& raw) {
  // fold zeta^i for i >= deg via x^deg = -(Phi - x^deg): long division by Phi_m
  std::vector<Int> phi = cyclotomic_polynomial(m_);
  long deg = (long)phi.size() - 1;
  for (long i = (long)raw.size() - 1; i >= deg; --i) {
    Rat c = raw[(size_t)i];
    if (c == 0) continue;
    raw[(size_t)i] = 0;
    for (long j = 0; j < deg; ++j)
      raw[(size_t)(i - deg + j)] -= c * Rat(phi[(size_t)j]);
  }
  for (long i = 0; i < deg; ++i) c_[(size_t)i] = raw[(size_t)i];
}

CycQ CycQ::operator+(const CycQ& o) const {
  if (m_ != o.m_) throw std::domain_error("cyclotomic order mismatch");
  CycQ out(m_);
  for (long i = 0; i < degree(); ++i) out.c_[(size_t)i] = c_[(size_t)i] + o.c_[(size_t)i];
  return out;
}

CycQ CycQ::operator-(const CycQ& o) const {
  if (m_ != o.m_) throw std::domain_error("cyclotomic order mismatch");
  CycQ out(m_);
  for (long i = 0; i < degree(); ++i) out.c_[(size_t)i] = c_[(size_t)i] - o.c_[(size_t)i];
  return out;
}

CycQ CycQ::operator*(const CycQ& o) const {
  if (m_ != o.m_) throw std::domain_error("cyclotomic order mismatch");
  CycQ out(m_);
  std::vector<Rat> raw((size_t)(2 * degree()), Rat(0));
  for (long i = 0; i < degree(); ++i) {
    if (c_[(size_t)i] == 0) continue;
    for (long j = 0; j < degree(); ++j)
      raw[(size_t)(i + j)] += c_[(size_t)i] * o.c_[(size_t)j];
  }
  out.reduce(raw);
  return out;
}

CycQ CycQ::operator*(const Rat& r) const {
  CycQ out(m_);
  for (long i = 0; i < degree(); ++i) out.c_[(size_t)i] = c_[(size_t)i] * r;
  return out;
}

bool CycQ::operator==(const CycQ& o) const {
  if (m_ != o.m_) return false;
  for (long i = 0; i < degree(); ++i)
    if (c_[(size_t)i] != o.c_[(size_t)i]) return false;
  return true;
}

bool CycQ::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycQ::is_rational() const {
  for (long i = 1; i < degree(); ++i)
    if (c_[(size_t)i] != 0) return false;
  return true;
}

Rat CycQ::rational_part() const {
  if (!is_rational()) throw std::domain_error("not a rational element");
  return c_[0];
}

CycQ CycQ::galois(long j) const {
  CycQ out(m_);
  std::vector<Rat> raw((size_t)m_ * 2, Rat(0));
  for (long i = 0; i < degree(); ++i) {
    long e = (long)(((__int128)i * j) % m_);
    if (e < 0) e += m_;
    raw[(size_t)e] += c_[(size_t)i];
  }
  out.reduce(raw);
  return out;
}

std::string CycQ::str() const {
  std::ostringstream os;
  os << "(";
  for (long i = 0; i < degree(); ++i) {
    if (i) os << ", ";
    os << c_[(size_t)i].get_str();
  }
  os << ") in Q(zeta_" << m_ << ")";
  return os.str();
}

}  // namespace iwa
