#include "iwa/series.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace iwa {

using nlohmann::json;

IwasawaSeries::IwasawaSeries(const Int& p, long degree, long k_prec)
    : p_(p), k_(k_prec) {
  if (degree < 1) throw input_error("series degree must be >= 1");
  c_.assign((size_t)degree, PadicNumber(p, k_prec, 0));
}

IwasawaSeries::IwasawaSeries(const Int& p, std::vector<PadicNumber> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  if (c_.empty()) throw input_error("series needs at least one coefficient");
  k_ = c_[0].precision();
  for (auto& x : c_) {
    if (x.prime() != p_) throw std::domain_error("prime mismatch in series");
    k_ = std::min(k_, x.precision());
  }
  for (auto& x : c_) x = x.at_precision(k_);
}

IwasawaSeries IwasawaSeries::one(const Int& p, long degree, long k) {
  IwasawaSeries f(p, degree, k);
  f.set_coeff(0, PadicNumber(p, k, 1));
  return f;
}

void IwasawaSeries::set_coeff(long i, const PadicNumber& v) {
  if (v.prime() != p_) throw std::domain_error("prime mismatch");
  c_.at((size_t)i) = v.precision() > k_ ? v.at_precision(k_) : v;
  if (v.precision() < k_) {
    // a lower-precision coefficient drags the whole series down
    k_ = v.precision();
    for (auto& x : c_) x = x.at_precision(k_);
  }
}

IwasawaSeries IwasawaSeries::operator+(const IwasawaSeries& g) const {
  if (p_ != g.p_) throw std::domain_error("prime mismatch");
  long n = std::min(degree(), g.degree());
  std::vector<PadicNumber> out;
  out.reserve((size_t)n);
  for (long i = 0; i < n; ++i) out.push_back(c_[i] + g.c_[i]);
  return IwasawaSeries(p_, std::move(out));
}

IwasawaSeries IwasawaSeries::operator-(const IwasawaSeries& g) const {
  if (p_ != g.p_) throw std::domain_error("prime mismatch");
  long n = std::min(degree(), g.degree());
  std::vector<PadicNumber> out;
  out.reserve((size_t)n);
  for (long i = 0; i < n; ++i) out.push_back(c_[i] - g.c_[i]);
  return IwasawaSeries(p_, std::move(out));
}

IwasawaSeries IwasawaSeries::operator*(const Int& c) const {
  std::vector<PadicNumber> out;
  out.reserve(c_.size());
  for (auto& x : c_) out.push_back(x * c);
  return IwasawaSeries(p_, std::move(out));
}

IwasawaSeries IwasawaSeries::operator*(const PadicNumber& c) const {
  std::vector<PadicNumber> out;
  out.reserve(c_.size());
  for (auto& x : c_) out.push_back(x * c);
  return IwasawaSeries(p_, std::move(out));
}

bool IwasawaSeries::operator==(const IwasawaSeries& g) const {
  if (p_ != g.p_) return false;
  long n = std::min(degree(), g.degree());
  for (long i = 0; i < n; ++i)
    if (!(c_[i] == g.c_[i])) return false;
  return true;
}

IwasawaSeries IwasawaSeries::truncated(long degree) const {
  if (degree >= this->degree()) return *this;
  std::vector<PadicNumber> out(c_.begin(), c_.begin() + degree);
  return IwasawaSeries(p_, std::move(out));
}

std::string IwasawaSeries::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].residue();
  }
  os << "] mod " << p_ << "^" << k_;
  return os.str();
}

std::string IwasawaSeries::to_json() const {
  json j;
  j["p"] = p_.get_str();
  j["k"] = k_;
  j["n"] = degree();
  json arr = json::array();
  for (auto& x : c_) arr.push_back(x.residue().get_str());
  j["coeffs"] = arr;
  return j.dump();
}

IwasawaSeries IwasawaSeries::from_json(const std::string& text) {
  json j = json::parse(text);
  Int p(j.at("p").get<std::string>());
  long k = j.at("k").get<long>();
  std::vector<PadicNumber> coeffs;
  for (auto& s : j.at("coeffs")) coeffs.emplace_back(p, k, Int(s.get<std::string>()));
  if ((long)coeffs.size() != j.at("n").get<long>())
    throw input_error("series JSON: coefficient count does not match n");
  return IwasawaSeries(p, std::move(coeffs));
}

IwasawaSeries mul(const IwasawaSeries& f, const IwasawaSeries& g) {
  if (f.prime() != g.prime()) throw std::domain_error("prime mismatch");
  long n = std::min(f.degree(), g.degree());
  long k = std::min(f.precision(), g.precision());
  const Int& p = f.prime();
  Int m = pow_int(p, (unsigned long)k);
  std::vector<Int> acc((size_t)n, Int(0));
  for (long i = 0; i < n; ++i) {
    const Int& a = f.coeff(i).residue();
    if (a == 0) continue;
    for (long j = 0; i + j < n && j < g.degree(); ++j) {
      acc[(size_t)(i + j)] += a * g.coeff(j).residue();
    }
  }
  std::vector<PadicNumber> out;
  out.reserve((size_t)n);
  for (long i = 0; i < n; ++i) out.emplace_back(p, k, mod_floor(acc[(size_t)i], m));
  return IwasawaSeries(p, std::move(out));
}

InvariantPair invariants(const IwasawaSeries& f, long margin) {
  InvariantPair out;
  long k = f.precision();
  long n = f.degree();
  long cap = (margin > 0) ? std::min(margin, n) : n;
  long mu = k;
  for (long i = 0; i < n; ++i) {
    auto v = f.coeff(i).valuation();
    if (v && *v < mu) mu = *v;
  }
  if (mu >= k) throw precision_error("insufficient precision: series is 0 mod p^k");
  out.mu = mu;
  long lambda = -1;
  for (long i = 0; i < cap; ++i) {
    auto v = f.coeff(i).valuation();
    if (v && *v == mu) { lambda = i; break; }
  }
  if (lambda < 0) {
    out.certified = false;
    out.lambda = cap;
    out.detail = "no unit coefficient of f/p^mu below index " + std::to_string(cap) +
                 "; raise level or truncation";
    return out;
  }
  out.lambda = lambda;
  // mu is certain once a coefficient of exact valuation mu exists; lambda is
  // certain because every earlier coefficient has valuation > mu exactly
  // (each is known mod p^k with k > mu).
  out.certified = true;
  return out;
}

IwasawaSeries binomial_power(const PadicNumber& f_exponent, long degree) {
  const Int& p = f_exponent.prime();
  long k = f_exponent.precision();
  // C(f, j) = f(f-1)...(f-j+1)/j!.  With f known mod p^k, the Vandermonde
  // identity C(f + p^k t, j) = sum_i C(f, j-i) C(p^k t, i) bounds the loss:
  // C(f, j) is certified mod p^(k - floor(log_p j)).  The division by j! is
  // made exact by accumulating the numerator at inflated precision.
  long extra = 0;
  {
    Int fact_v = 0;
    Int pe = p;
    while (pe < degree) { fact_v += (degree - 1) / pe; pe *= p; }
    extra = (long)fact_v.get_si();
  }
  long K = k + extra;
  Int m = pow_int(p, (unsigned long)K);
  Int f = mod_floor(f_exponent.residue(), m);

  std::vector<PadicNumber> out;
  out.reserve((size_t)degree);
  out.emplace_back(p, k, 1);
  Int num = 1;  // f(f-1)...(f-j+1) mod p^K
  Int jfact_unit = 1;
  long jfact_val = 0;
  long logp_j = 0;
  Int p_power = p;
  for (long j = 1; j < degree; ++j) {
    if (p_power <= j) { ++logp_j; p_power *= p; }
    num = mod_floor(num * (f - (j - 1)), m);
    long vj = valuation_int(Int(j), p);
    jfact_val += vj;
    jfact_unit = mod_floor(jfact_unit * (Int(j) / pow_int(p, (unsigned long)vj)), m);
    Int pe = pow_int(p, (unsigned long)jfact_val);
    if (num % pe != 0)
      throw std::logic_error("binomial_power: non-integral binomial coefficient");
    Int b = mod_floor((num / pe) * inv_mod(jfact_unit, m), m);
    long kj = std::max<long>(1, k - logp_j);
    out.emplace_back(p, kj, b);
  }
  return IwasawaSeries(p, std::move(out));
}

// f(S) for a series S with S(0) = 0, by Horner from the top coefficient.
static IwasawaSeries compose(const IwasawaSeries& f, const IwasawaSeries& S) {
  long n = std::min(f.degree(), S.degree());
  const Int& p = f.prime();
  long k = std::min(f.precision(), S.precision());
  IwasawaSeries acc(p, n, k);
  for (long i = n - 1; i >= 0; --i) {
    acc = mul(acc, S);
    acc.set_coeff(0, acc.coeff(0) + f.coeff(i).at_precision(acc.precision()));
  }
  return acc;
}

IwasawaSeries involution(const IwasawaSeries& f) {
  const Int& p = f.prime();
  long n = f.degree();
  long k = f.precision();
  // (1+T)^{-1} - 1 = -T + T^2 - T^3 + ...
  IwasawaSeries S(p, n, k);
  for (long i = 1; i < n; ++i) S.set_coeff(i, PadicNumber(p, k, (i % 2) ? -1 : 1));
  return compose(f, S);
}

IwasawaSeries substitute_generator(const IwasawaSeries& f, const PadicNumber& s) {
  IwasawaSeries S = binomial_power(s, f.degree());
  S.set_coeff(0, S.coeff(0) - PadicNumber(f.prime(), S.precision(), 1));
  return compose(f, S);
}

PadicNumber eval_at_zero(const IwasawaSeries& f) { return f.coeff(0); }

CongruenceWitness congruent_mod_p(const IwasawaSeries& f, const IwasawaSeries& g,
                                  bool unit_allowed) {
  if (f.prime() != g.prime() || f.degree() != g.degree())
    throw input_error("congruent_mod_p requires matching prime and truncation");
  const Int& p = f.prime();
  long n = f.degree();
  auto red = [&](const IwasawaSeries& h, long i) { return mod_floor(h.coeff(i).residue(), p); };
  long pivot = -1;
  for (long i = 0; i < n; ++i)
    if (red(g, i) != 0) { pivot = i; break; }
  CongruenceWitness w;
  if (pivot < 0) {
    // g = 0 mod p: congruent iff f = 0 mod p
    for (long i = 0; i < n; ++i)
      if (red(f, i) != 0) return w;
    w.congruent = true;
    return w;
  }
  Int u = mod_floor(red(f, pivot) * inv_mod(red(g, pivot), p), p);
  if (u == 0) return w;  // f has higher valuation at the pivot: not congruent
  if (!unit_allowed && u != 1) return w;
  for (long i = 0; i < n; ++i)
    if (red(f, i) != mod_floor(u * red(g, i), p)) return w;
  w.congruent = true;
  w.unit = u;
  return w;
}

}  // namespace iwa
