#include "iwa/gamma_level.hpp"

#include <nlohmann/json.hpp>

namespace iwa {

WildLogTable::WildLogTable(const Int& p, long n) : p_(p), n_(n) {
  mod_ = pow_int(p, (unsigned long)(n + 1));
  Int pn = pow_int(p, (unsigned long)n);
  if (!pn.fits_slong_p()) throw input_error("level too large");
  pn_ = pn.get_si();
  if (!mod_.fits_slong_p()) throw input_error("level too large");
  logs_.assign((size_t)mod_.get_si(), -1);
  Int base = mod_floor(Int(1 + p), mod_);
  Int x = 1;
  for (long g = 0; g < pn_; ++g) {
    logs_[(size_t)x.get_si()] = g;
    x = mod_floor(x * base, mod_);
  }
}

long WildLogTable::log_of(const Int& u) const {
  if (u % p_ == 0) throw std::domain_error("wild log of a non-unit");
  // principal-unit part <u> = u * omega(u)^{-1}
  Int t = teichmuller(u, p_, n_ + 1).residue();
  Int pr = mod_floor(mod_floor(u, mod_) * inv_mod(t, mod_), mod_);
  long g = logs_[(size_t)pr.get_si()];
  if (g < 0) throw std::logic_error("wild log table miss");
  return g;
}

GammaLevelElement::GammaLevelElement(const Int& p, long n, long k_prec)
    : p_(p), n_(n), k_(k_prec) {
  Int pn = pow_int(p, (unsigned long)n);
  if (!pn.fits_slong_p()) throw input_error("level too large");
  c_.assign((size_t)pn.get_si(), PadicNumber(p, k_prec, 0));
}

void GammaLevelElement::add_to(long g, const PadicNumber& v) {
  c_.at((size_t)g) = c_[(size_t)g] + v;
  k_ = std::min(k_, c_[(size_t)g].precision());
}

void GammaLevelElement::set_coeff(long g, const PadicNumber& v) {
  c_.at((size_t)g) = v;
  k_ = std::min(k_, v.precision());
}

GammaLevelElement GammaLevelElement::operator+(const GammaLevelElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw std::domain_error("level mismatch");
  GammaLevelElement out(p_, n_, std::min(k_, o.k_));
  for (long g = 0; g < size(); ++g) out.c_[(size_t)g] = c_[(size_t)g] + o.c_[(size_t)g];
  return out;
}

GammaLevelElement GammaLevelElement::operator-(const GammaLevelElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw std::domain_error("level mismatch");
  GammaLevelElement out(p_, n_, std::min(k_, o.k_));
  for (long g = 0; g < size(); ++g) out.c_[(size_t)g] = c_[(size_t)g] - o.c_[(size_t)g];
  return out;
}

GammaLevelElement GammaLevelElement::operator*(const PadicNumber& s) const {
  GammaLevelElement out(p_, n_, std::min(k_, s.precision()));
  for (long g = 0; g < size(); ++g) out.c_[(size_t)g] = c_[(size_t)g] * s;
  return out;
}

bool GammaLevelElement::operator==(const GammaLevelElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) return false;
  for (long g = 0; g < size(); ++g)
    if (!(c_[(size_t)g] == o.c_[(size_t)g])) return false;
  return true;
}

GammaLevelElement GammaLevelElement::convolve(const GammaLevelElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw std::domain_error("level mismatch");
  long N = size();
  long k = std::min(k_, o.k_);
  Int m = pow_int(p_, (unsigned long)k);
  std::vector<Int> acc((size_t)N, Int(0));
  for (long i = 0; i < N; ++i) {
    const Int& a = c_[(size_t)i].residue();
    if (a == 0) continue;
    for (long j = 0; j < N; ++j) {
      long t = i + j;
      if (t >= N) t -= N;
      acc[(size_t)t] += a * o.c_[(size_t)j].residue();
    }
  }
  GammaLevelElement out(p_, n_, k);
  for (long g = 0; g < N; ++g) out.c_[(size_t)g] = PadicNumber(p_, k, mod_floor(acc[(size_t)g], m));
  return out;
}

GammaLevelElement GammaLevelElement::project() const {
  if (n_ == 0) throw std::domain_error("cannot project below level 0");
  GammaLevelElement out(p_, n_ - 1, k_);
  long M = out.size();
  for (long g = 0; g < size(); ++g) out.add_to(g % M, c_[(size_t)g]);
  return out;
}

GammaLevelElement GammaLevelElement::lift_sum() const {
  GammaLevelElement out(p_, n_ + 1, k_);
  long M = size();
  long N = out.size();
  for (long g = 0; g < N; ++g) out.set_coeff(g, c_[(size_t)(g % M)]);
  return out;
}

IwasawaSeries GammaLevelElement::to_series(long degree) const {
  // sum_g c_g (1+T)^g: expand with exact integer binomials mod p^k
  long N = size();
  Int m = pow_int(p_, (unsigned long)k_);
  std::vector<Int> acc((size_t)degree, Int(0));
  // row of binomials C(g, j) mod p^k, updated g -> g+1 in place
  std::vector<Int> binom((size_t)degree, Int(0));
  binom[0] = 1;
  for (long g = 0; g < N; ++g) {
    const Int& cg = c_[(size_t)g].residue();
    if (cg != 0)
      for (long j = 0; j < degree && j <= g; ++j)
        acc[(size_t)j] = mod_floor(acc[(size_t)j] + cg * binom[(size_t)j], m);
    // C(g+1, j) = C(g, j) + C(g, j-1)
    for (long j = std::min<long>(degree - 1, g + 1); j >= 1; --j)
      binom[(size_t)j] = mod_floor(binom[(size_t)j] + binom[(size_t)j - 1], m);
  }
  std::vector<PadicNumber> coeffs;
  coeffs.reserve((size_t)degree);
  for (long j = 0; j < degree; ++j) coeffs.emplace_back(p_, k_, acc[(size_t)j]);
  return IwasawaSeries(p_, std::move(coeffs));
}

std::vector<Int> GammaLevelElement::mod_p_vector() const {
  std::vector<Int> out;
  out.reserve(c_.size());
  for (auto& x : c_) out.push_back(mod_floor(x.residue(), p_));
  return out;
}

std::string GammaLevelElement::to_json() const {
  nlohmann::json j;
  j["p"] = p_.get_str();
  j["level"] = n_;
  j["k"] = k_;
  nlohmann::json arr = nlohmann::json::array();
  for (auto& x : c_) arr.push_back(x.residue().get_str());
  j["coeffs"] = arr;
  return j.dump();
}

GammaLevelElement linear_euler_factor(const Int& p, long n, long k,
                                      const PadicNumber& c, long f_mod_pn) {
  GammaLevelElement out(p, n, k);
  out.set_coeff(0, PadicNumber(p, k, 1));
  long N = out.size();
  long g = ((f_mod_pn % N) + N) % N;
  out.add_to(g, -c.at_precision(std::min(k, c.precision())));
  return out;
}

long level_margin(const Int& p, long n) {
  if (n == 0) return 1;
  Int m = pow_int(p, (unsigned long)n) - pow_int(p, (unsigned long)(n - 1));
  return m.get_si();
}

}  // namespace iwa
