#include "iwa/local_factors.hpp"

#include "iwa/dirichlet.hpp"

#include <sstream>

namespace iwa {

Int s_ell(const Int& ell, const Int& p) {
  if (ell == p) throw input_error("s_ell: l must differ from p");
  if (!is_prime(ell)) throw input_error("s_ell: l must be prime");
  Int t = pow_mod(ell, p - 1, pow_int(p, 40)) - 1;
  // v_p(l^(p-1) - 1) read off from the residue mod p^40 is exact as long as
  // it is < 40, which covers every l < p^39
  long v = valuation_int(t, p);
  if (v >= 40) throw std::logic_error("s_ell: valuation overflow");
  return pow_int(p, (unsigned long)(v - 1));
}

long d_ell(const LocalData& local, const Int& p) {
  if (local.ell == p) throw input_error("d_ell: l must differ from p");
  // multiplicity of X = l^{-1} as a root of P_l(X) mod p
  Int linv = inv_mod(mod_floor(local.ell, p), p);
  Int val = mod_floor(local.e0 + local.e1 * linv + local.e2 * linv * linv, p);
  if (val != 0) return 0;
  Int deriv = mod_floor(local.e1 + 2 * local.e2 * linv, p);
  if (deriv != 0) return 1;
  return (local.e2 % p != 0) ? 2 : 1;
}

PadicNumber frobenius_exponent(const Int& ell, const Int& p, long k) {
  // <l> = l * omega(l)^{-1}; f_l = log<l> / log(1+p), a p-adic integer with
  // v_p(f_l) = v_p(l^(p-1) - 1) - 1.  log(1+p) has valuation exactly 1, so
  // compute both logs with one guard digit and divide out the p.
  long K = k + 2;
  PadicNumber l_unit(p, K, ell);
  PadicNumber bracket = l_unit * teichmuller(ell, p, K).inv();
  PadicNumber num = plog(bracket);
  PadicNumber den = plog(PadicNumber(p, K, 1 + p));
  return num.div_by_p().div(den.div_by_p());
}

IwasawaSeries euler_element(const LocalData& local, const Int& p, const Precision& prec) {
  if (local.ell == p) throw input_error("euler_element: l must differ from p");
  long k = prec.padic_digits;
  long n = prec.series_degree;
  if (local.type == ReductionType::additive) return IwasawaSeries::one(p, n, k);
  PadicNumber f = frobenius_exponent(local.ell, p, k);
  IwasawaSeries u = binomial_power(f, n);  // (1+T)^{f_l}
  PadicNumber linv = PadicNumber(p, u.precision(), local.ell).inv();
  // P_l(l^{-1}(1+T)^f) = e0 + e1 l^{-1} (1+T)^f + e2 l^{-2} (1+T)^{2f}
  IwasawaSeries acc = IwasawaSeries::one(p, n, u.precision()) * local.e0;
  acc = acc + u * (linv * local.e1);
  if (local.e2 != 0) acc = acc + mul(u, u) * (linv * linv * local.e2);
  return acc;
}

GammaLevelElement euler_element_level(const LocalData& local, const Int& p, long n, long k) {
  GammaLevelElement out(p, n, k);
  out.set_coeff(0, PadicNumber(p, k, local.e0));
  if (local.type == ReductionType::additive) return out;
  WildLogTable logs(p, n);
  long f = logs.log_of(local.ell);
  long N = out.size();
  PadicNumber linv = PadicNumber(p, k, local.ell).inv();
  out.add_to(f % N, linv * local.e1);
  if (local.e2 != 0) out.add_to((2 * f) % N, linv * linv * local.e2);
  return out;
}

SigmaRecord sigma_record(const LocalData& local, const Int& p, const Precision& prec) {
  SigmaRecord rec{local.ell, Int(1), 0, 0,
                  IwasawaSeries::one(p, prec.series_degree, prec.padic_digits),
                  PadicNumber(p, prec.padic_digits, 0), false};
  rec.s_ell = s_ell(local.ell, p);
  rec.d_ell = d_ell(local, p);
  Int sig = rec.s_ell * rec.d_ell;
  if (!sig.fits_slong_p()) throw precision_error("sigma too large");
  rec.sigma = sig.get_si();
  rec.euler_element = euler_element(local, p, prec);
  if (local.type != ReductionType::additive)
    rec.f_ell = frobenius_exponent(local.ell, p, prec.padic_digits);
  // Flag the double-root-at-1 subtlety for downstream corank users.
  if (local.type == ReductionType::good) {
    Int at1 = mod_floor(local.e0 + local.e1 + local.e2, p);
    Int d1 = mod_floor(local.e1 + 2 * local.e2, p);
    rec.ambiguous_corank = (at1 == 0 && d1 == 0);
  }
  // cross-check: lambda(P_l) = s_l d_l, mu = 0 (Prop-2.4-style, two routes)
  InvariantPair inv = invariants(rec.euler_element);
  if (inv.certified) {
    if (inv.mu != 0) throw std::logic_error("euler element has mu > 0");
    if (inv.lambda != rec.sigma)
      throw std::logic_error("lambda(P_l) = " + std::to_string(inv.lambda) +
                             " != s_l*d_l = " + std::to_string(rec.sigma));
  } else if (rec.sigma < prec.series_degree) {
    throw precision_error("euler element invariants uncertified at degree " +
                          std::to_string(prec.series_degree));
  }
  return rec;
}

SigmaRecord sigma_record(const CurveQ& E, const Int& ell, const Int& p,
                         const Precision& prec) {
  return sigma_record(classify_reduction(E, ell), p, prec);
}

std::string SigmaRecord::str() const {
  std::ostringstream os;
  os << "l=" << ell << " s=" << s_ell << " d=" << d_ell << " sigma=" << sigma;
  return os.str();
}

int character_local_corank(const DirichletCharacter& theta, const Int& ell, const Int& p) {
  if (ell == p) throw input_error("character_local_corank: l must differ from p");
  if (theta.order() % p == 0)
    throw hypothesis_error("requires a character of order prime to p");
  if (theta.ramified_at(ell)) return 0;
  auto e = theta.exponent(ell);
  return (e && *e == 0) ? 1 : 0;
}

TLRecord t_ell(const CurveQ& E, const DirichletCharacter& phi,
               const DirichletCharacter& psi, const Int& ell, const Int& p) {
  // hypothesis: phi * psi = omega
  DirichletCharacter prod = phi * psi;
  DirichletCharacter omega = DirichletCharacter::teichmuller_power(p, 1);
  if (prod.modulus() != omega.modulus() || prod.order() != omega.order())
    throw hypothesis_error("requires phi * psi = omega (the Teichmuller character)");
  for (Int a = 1; a < p; ++a)
    if (prod.exponent(a) != omega.exponent(a))
      throw hypothesis_error("requires phi * psi = omega (the Teichmuller character)");

  TLRecord rec;
  rec.ell = ell;
  rec.corank_phi = character_local_corank(phi, ell, p);
  rec.corank_psi = character_local_corank(psi, ell, p);

  // corank of E((Q_infty)_eta)_{p-tors}, by reduction type:
  //  - additive (ramified action): 0
  //  - split multiplicative: 1 iff l = 1 mod p (the mu_{p^infty} line becomes
  //    rational; the Tate-parameter line never contributes)
  //  - nonsplit multiplicative: 1 iff -l = 1 mod p
  //  - good: count Frobenius eigenvalues that reduce to 1 mod p; a double
  //    root (l = 1 and a_l = 2 mod p) is counted 2 but flagged
  LocalData local = classify_reduction(E, ell);
  switch (local.type) {
    case ReductionType::additive:
      rec.corank_torsion = 0;
      break;
    case ReductionType::split_mult:
      rec.corank_torsion = (mod_floor(ell - 1, p) == 0) ? 1 : 0;
      break;
    case ReductionType::nonsplit_mult:
      rec.corank_torsion = (mod_floor(ell + 1, p) == 0) ? 1 : 0;
      break;
    case ReductionType::good: {
      // roots of X^2 - a X + l = 1 mod p
      Int at1 = mod_floor(Int(1) - local.a_ell + ell, p);
      if (at1 != 0) { rec.corank_torsion = 0; break; }
      Int d1 = mod_floor(Int(2) - local.a_ell, p);
      if (d1 != 0) { rec.corank_torsion = 1; break; }
      rec.corank_torsion = 2;
      rec.flagged = true;
      break;
    }
  }
  long t = rec.corank_phi + rec.corank_psi - rec.corank_torsion;
  if (t < 0) throw std::logic_error("t_l < 0: corank bookkeeping inconsistent");
  rec.t_ell = t;
  return rec;
}

}  // namespace iwa
