#include "iwa/kubota_leopoldt.hpp"

namespace iwa {

CycQ bernoulli_b1(const DirichletCharacter& chi) {
  if (chi.is_trivial()) throw input_error("B_{1,chi} requires a nontrivial character");
  long f = chi.modulus().get_si();
  long o = chi.order();
  CycQ acc(o);
  for (long a = 1; a < f; ++a) {
    auto e = chi.exponent(Int(a));
    if (!e) continue;
    acc = acc + CycQ::zeta_power(o, *e) * Rat(a);
  }
  return acc * Rat(1, f);
}

Rat bernoulli_b1_rational(const DirichletCharacter& chi) {
  if (chi.order() > 2) throw input_error("rational B_1 needs a quadratic character");
  CycQ b = bernoulli_b1(chi);
  return b.rational_part();
}

GammaLevelElement stickelberger_level(const DirichletCharacter& weight, WildSign sign,
                                      const Int& p, long n, long k) {
  Int f = weight.modulus();
  long vp = (mod_floor(f, p) == 0) ? valuation_int(f, p) : 0;
  if (vp > 1) throw hypothesis_error("requires a branch of conductor f or fp with p^2 not dividing f");
  Int fprime = f / pow_int(p, (unsigned long)vp);
  Int M = fprime * pow_int(p, (unsigned long)(n + 1));
  if (!M.fits_slong_p() || M > 100'000'000)
    throw input_error("stickelberger level too large: " + M.get_str() + " residue classes");
  long Ml = M.get_si();

  WildLogTable logs(p, n);
  long pn = pow_int(p, (unsigned long)n).get_si();
  long K = k + n + 1;
  Int mK = pow_int(p, (unsigned long)K);

  // weight values as residues mod p^K, indexed by a mod f
  long fl = f.get_si();
  std::vector<Int> wtab((size_t)fl, Int(0));
  bool quad = weight.order() <= 2;
  for (long a = 0; a < fl; ++a) {
    auto e = weight.exponent(Int(a));
    if (!e) continue;
    if (quad)
      wtab[(size_t)a] = (*e == 0) ? Int(1) : Int(-1);
    else
      wtab[(size_t)a] = weight.value_padic(Int(a), p, K).residue();
  }

  std::vector<Int> sums((size_t)pn, Int(0));
  Int pn1 = pow_int(p, (unsigned long)(n + 1));
  for (long a = 1; a < Ml; ++a) {
    if (a % p.get_si() == 0) continue;
    const Int& w = wtab[(size_t)(a % fl)];
    if (w == 0) continue;
    long g = logs.log_of(mod_floor(Int(a), pn1));
    if (sign == WildSign::inverse) g = (pn - g) % pn;
    sums[(size_t)g] += w * a;
  }

  GammaLevelElement out(p, n, k);
  PadicNumber finv = PadicNumber(p, k, fprime).inv();
  for (long g = 0; g < pn; ++g) {
    // -(sum)/M = -(sum)/(f' p^(n+1)); the p-power must divide exactly
    // (branch integrality), dropping the guard digits
    PadicNumber s(p, K, mod_floor(-sums[(size_t)g], mK));
    PadicNumber c = s.div_by_p(n + 1) * finv;
    out.set_coeff(g, c);
  }
  return out;
}

static long certified_lambda_or_bound(const GammaLevelElement& e, long n, const Int& p,
                                      InvariantPair& out) {
  long margin = level_margin(p, n);
  long deg = std::min<long>(margin + 1, e.size());
  IwasawaSeries s = e.to_series(std::max<long>(deg, 2));
  out = invariants(s, margin);
  return out.lambda;
}

ClassicalInvariants classical_lambda(const DirichletCharacter& psi, const Int& p,
                                     long k, long max_level, long term_budget) {
  if (mod_floor(psi.modulus(), p) == 0)
    throw hypothesis_error("requires a character of conductor prime to p");
  if (psi.order() > 2 && (p - 1) % psi.order() != 0)
    throw hypothesis_error("requires a character of order dividing p-1");

  ClassicalInvariants out{psi, 0, 0, false, 0, 0, -1, false,
                          IwasawaSeries::one(p, 2, k)};
  Int fprime = psi.modulus();
  DirichletCharacter winv = psi.inverse();
  for (long n = 1; n <= max_level; ++n) {
    Int terms = fprime * pow_int(p, (unsigned long)(n + 1));
    if (terms > term_budget) {
      out.certified = false;  // "lambda >= bound, undecided"
      return out;
    }
    GammaLevelElement ld = stickelberger_level(winv, WildSign::inverse, p, n, k);
    InvariantPair inv;
    certified_lambda_or_bound(ld, n, p, inv);
    out.level_used = n;
    out.mu = inv.mu;
    out.lambda = inv.lambda;
    out.series = ld.to_series(std::min<long>(ld.size(), level_margin(p, n) + 1));
    if (inv.mu > 0 && inv.certified)
      throw std::logic_error("classical mu > 0: violates Ferrero-Washington, software error");
    if (inv.certified) {
      out.certified = true;
      // duality cross-check on the other branch
      GammaLevelElement lc = stickelberger_level(winv, WildSign::direct, p, n, k);
      InvariantPair inv2;
      certified_lambda_or_bound(lc, n, p, inv2);
      if (inv2.certified) {
        out.lambda_dual = inv2.lambda;
        out.duality_checked = true;
        if (inv2.mu != 0)
          throw std::logic_error("classical mu > 0 on dual branch: software error");
        if (inv2.lambda != inv.lambda)
          throw std::logic_error("branch duality violated: lambda mismatch");
      }
      return out;
    }
    out.lambda_lower_bound = inv.lambda;  // first-unit search exhausted the margin
  }
  return out;
}

EisensteinFactors eisenstein_factors(const DirichletCharacter& chi,
                                     const DirichletCharacter& psi, const Int& p,
                                     long n, long k) {
  if (!psi.odd()) throw hypothesis_error("requires psi odd");
  if (mod_floor(psi.modulus(), p) == 0)
    throw hypothesis_error("requires psi unramified at p");
  if (!chi.even()) throw hypothesis_error("requires chi even");
  // lc: values L(chi psi^{-1} rho, 0)  => weight chi psi^{-1}, direct
  // ld: values (1/2) L(chi^{-1} psi^{-1} rho^{-1}, 0) => weight (chi psi)^{-1}, inverse
  DirichletCharacter wc = chi * psi.inverse();
  DirichletCharacter wd = (chi * psi).inverse();
  GammaLevelElement lc = stickelberger_level(wc, WildSign::direct, p, n, k);
  GammaLevelElement ld = stickelberger_level(wd, WildSign::inverse, p, n, k);
  PadicNumber half = PadicNumber(p, k, 2).inv();
  return EisensteinFactors{lc, ld * half};
}

static GammaLevelElement apply_strip(const GammaLevelElement& e,
                                     const DirichletCharacter& theta,
                                     const std::vector<Int>& sigma0, bool with_linv) {
  const Int& p = e.prime();
  long n = e.level();
  long k = e.precision();
  WildLogTable logs(p, n);
  GammaLevelElement acc = e;
  for (const Int& ell : sigma0) {
    if (ell == p) throw hypothesis_error("requires p not in Sigma0");
    PadicNumber v = theta.value_padic(ell, p, k);
    if (with_linv) v = v * PadicNumber(p, k, ell).inv();
    if (v.is_zero()) continue;  // ramified l: factor is 1
    long f = logs.log_of(ell);
    acc = acc.convolve(linear_euler_factor(p, n, k, v, f));
  }
  return acc;
}

GammaLevelElement strip_c_side(const GammaLevelElement& lc, const DirichletCharacter& chi,
                               const DirichletCharacter& psi, const std::vector<Int>& sigma0) {
  return apply_strip(lc, chi * psi.inverse(), sigma0, false);
}

GammaLevelElement strip_d_side(const GammaLevelElement& ld, const DirichletCharacter& chi,
                               const DirichletCharacter& psi, const std::vector<Int>& sigma0) {
  return apply_strip(ld, chi * psi, sigma0, true);
}

GammaLevelElement eisenstein_product(const EisensteinFactors& factors,
                                     const DirichletCharacter& chi,
                                     const DirichletCharacter& psi,
                                     const std::vector<Int>& sigma0, const Int& p,
                                     long n, long k) {
  GammaLevelElement c = strip_c_side(factors.lc, chi, psi, sigma0);
  GammaLevelElement d = strip_d_side(factors.ld, chi, psi, sigma0);
  GammaLevelElement prod = c.convolve(d);
  // Measure normalization: the Gauss sum of psi*rho factors as
  // psi(p)^{-m} * rho^{-1}(f_psi) * tau(psi^{-1}) * tau(rho^{-1}); the
  // psi(p)^{-m} matches the curve side's alpha-stabilization and the
  // rho^{-1}(f_psi) is the group-ring translation by gamma^{log<f_psi>}.
  // Applying the translation here makes the product comparable to the
  // stabilized curve element by a scalar unit alone.
  WildLogTable logs(p, n);
  long t = logs.log_of(psi.modulus());
  GammaLevelElement shift(p, n, k);
  shift.set_coeff(t % shift.size(), PadicNumber(p, k, 1));
  return prod.convolve(shift);
}

}  // namespace iwa
