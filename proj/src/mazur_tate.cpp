#include "iwa/mazur_tate.hpp"

#include <nlohmann/json.hpp>

namespace iwa {

IwasawaSeries MazurTateElement::series(long degree) const {
  const GammaLevelElement& e = top();
  long cap = (degree > 0) ? degree : std::min<long>(e.size(), level_margin(p, level) + 1);
  return e.to_series(std::max<long>(cap, 2));
}

std::string MazurTateElement::to_json() const {
  nlohmann::json j;
  j["p"] = p.get_str();
  j["level"] = level;
  j["alpha"] = alpha.residue().get_str();
  j["trivial_zero"] = trivial_zero;
  nlohmann::json plusmap = nlohmann::json::object();
  nlohmann::json minusmap = nlohmann::json::object();
  for (size_t a = 0; a < raw_plus.size(); ++a) {
    if (raw_plus[a] != 0) plusmap[std::to_string(a)] = raw_plus[a].get_str();
    if (a < raw_minus.size() && raw_minus[a] != 0)
      minusmap[std::to_string(a)] = raw_minus[a].get_str();
  }
  j["values_plus"] = plusmap;
  j["values_minus"] = minusmap;
  j["wild_branch"] = nlohmann::json::parse(top().to_json());
  return j.dump();
}

// alpha at the requested precision: re-lift the unit root (good reduction)
// or re-embed a_p (multiplicative)
static PadicNumber hensel_or_unit(const OrdinaryData& ord, const Int& p, long k) {
  if (ord.type == ReductionType::good) return hensel_unit_root(ord.a_p, p, k);
  return PadicNumber(p, k, ord.a_p);
}

// Gamma_m-projection of the raw level-m element with the sigma_a^{-1}
// convention: coefficient of gamma^g collects [a/p^(m+1)] over the a with
// -wildlog(a) = g mod p^m.
static std::vector<Rat> gamma_projection(const EigenSymbol& plus, const Int& p, long m) {
  WildLogTable logs(p, m);
  long pm = pow_int(p, (unsigned long)m).get_si();
  Int mod = pow_int(p, (unsigned long)(m + 1));
  long modl = mod.get_si();
  std::vector<Rat> out((size_t)pm, Rat(0));
  for (long a = 1; a < modl; ++a) {
    if (a % p.get_si() == 0) continue;
    long g = (pm - logs.log_of(Int(a)) % pm) % pm;
    out[(size_t)g] += plus.value(Int(a), mod);
  }
  return out;
}

static GammaLevelElement stabilize_level(const std::vector<std::vector<Rat>>& thetas,
                                         const Rat& zero_value, const PadicNumber& alpha,
                                         bool mult_at_p, const Int& p, long m, long k) {
  // Theta_m = alpha^{-(m+1)} (theta_m - alpha^{-1} nu(theta_{m-1})), with
  // nu(theta_{-1}) = (p-1) [0]; multiplicative case: alpha^{-(m+1)} theta_m.
  // Coefficients may have p-power denominators individually; the stabilized
  // combination must be integral, so clear p^e first and divide back out.
  long pm = pow_int(p, (unsigned long)m).get_si();
  long e = 0;
  auto pden = [&](const Rat& r) {
    const Int& den = r.get_den();
    return (mod_floor(den, p) == 0) ? valuation_int(den, p) : 0;
  };
  for (auto& v : thetas[(size_t)m]) e = std::max(e, pden(v));
  if (m >= 1)
    for (auto& v : thetas[(size_t)m - 1]) e = std::max(e, pden(v));
  else
    e = std::max(e, pden(zero_value));
  long K = k + e;
  Int scale = pow_int(p, (unsigned long)e);
  PadicNumber ainv = alpha.at_precision(K).inv();

  GammaLevelElement acc(p, m, K);
  for (long g = 0; g < pm; ++g)
    acc.set_coeff(g, PadicNumber::from_rational(p, K, thetas[(size_t)m][(size_t)g] * Rat(scale)));
  if (!mult_at_p) {
    if (m >= 1) {
      long pm1 = pm / p.get_si();
      for (long g = 0; g < pm; ++g) {
        Rat prev = thetas[(size_t)m - 1][(size_t)(g % pm1)] * Rat(scale);
        acc.set_coeff(g, acc.coeff(g) - PadicNumber::from_rational(p, K, prev) * ainv);
      }
    } else {
      Rat prev = zero_value * Rat(scale) * Rat(p - 1);
      acc.set_coeff(0, acc.coeff(0) - PadicNumber::from_rational(p, K, prev) * ainv);
    }
  }
  PadicNumber apow = ainv.pow(Int(m + 1));
  GammaLevelElement out(p, m, k);
  for (long g = 0; g < pm; ++g) {
    PadicNumber c = acc.coeff(g) * apow;
    if (e > 0) {
      auto v = c.valuation();
      if (!c.is_zero() && v && *v < e)
        throw std::logic_error("stabilized element is not p-integral");
      c = c.div_by_p(e);
    }
    out.set_coeff(g, c.at_precision(k));
  }
  return out;
}

MazurTateElement mazur_tate(const EigenSymbol& plus, const EigenSymbol* minus,
                            const CurveQ& E, const Int& p, long n, long k) {
  OrdinaryData ord = is_ordinary(E, p, k + 2);
  if (!ord.ordinary)
    throw hypothesis_error("requires good ordinary or multiplicative reduction at p (a_p is a p-unit)");
  if (ord.anomalous)
    throw hypothesis_error("refused: p is anomalous for this curve (a_p = 1 mod p)");
  if (plus.sign != +1) throw input_error("mazur_tate: plus symbol has the wrong sign");

  MazurTateElement mt;
  mt.p = p;
  mt.level = n;
  mt.alpha = *ord.alpha;
  mt.multiplicative_at_p = (ord.type != ReductionType::good);
  mt.trivial_zero = (ord.type == ReductionType::split_mult);

  // raw maps at top level
  Int mod = pow_int(p, (unsigned long)(n + 1));
  long modl = mod.get_si();
  mt.raw_plus.assign((size_t)modl, Rat(0));
  mt.raw_minus.assign((size_t)modl, Rat(0));
  for (long a = 1; a < modl; ++a) {
    if (a % p.get_si() == 0) continue;
    mt.raw_plus[(size_t)a] = plus.value(Int(a), mod);
    if (minus) mt.raw_minus[(size_t)a] = minus->value(Int(a), mod);
  }

  std::vector<std::vector<Rat>> thetas;
  for (long m = 0; m <= n; ++m) thetas.push_back(gamma_projection(plus, p, m));
  Rat zero_value = plus.value(0, 1);

  // size alpha to survive the denominator-clearing at every level
  long e_max = 0;
  auto pden = [&](const Rat& r) {
    const Int& den = r.get_den();
    return (mod_floor(den, p) == 0) ? valuation_int(den, p) : 0L;
  };
  e_max = pden(zero_value);
  for (auto& row : thetas)
    for (auto& v : row) e_max = std::max(e_max, pden(v));
  mt.alpha = hensel_or_unit(ord, p, k + e_max + 1);

  for (long m = 0; m <= n; ++m)
    mt.stabilized.push_back(
        stabilize_level(thetas, zero_value, mt.alpha, mt.multiplicative_at_p, p, m, k));

  // distribution relation: projection of level m equals level m-1, exactly
  for (long m = 1; m <= n; ++m) {
    if (!(mt.stabilized[(size_t)m].project() == mt.stabilized[(size_t)m - 1]))
      throw std::logic_error("distribution relation failed at level " + std::to_string(m));
  }
  mt.distribution_checked = true;
  return mt;
}

GammaLevelElement mt_stripped(const MazurTateElement& mt, long m,
                              const std::vector<LocalData>& sigma0) {
  GammaLevelElement acc = mt.stabilized.at((size_t)m);
  for (auto& loc : sigma0) {
    if (loc.ell == mt.p) throw hypothesis_error("requires p not in Sigma0");
    acc = acc.convolve(euler_element_level(loc, mt.p, m, acc.precision()));
  }
  return acc;
}

std::function<Int(const Int&)> curve_eigenvalues(const CurveQ& E, long count_bound) {
  CurveQ copy = E;
  return [copy, count_bound](const Int& q) -> Int {
    LocalData d = classify_reduction(copy, q, count_bound);
    return d.a_ell;
  };
}

AnalyticResult analytic_invariants(const CurveQ& E, const Int& N, const Int& p,
                                   const std::vector<Int>& sigma0, long level,
                                   const Precision& prec,
                                   const std::function<Int(const Int&)>* eigenvalue_override,
                                   const std::vector<LocalData>* sigma0_data) {
  auto space = build_space(N);
  std::function<Int(const Int&)> target =
      eigenvalue_override ? *eigenvalue_override : curve_eigenvalues(E);
  EigenSymbol plus = hecke_eigensymbol(space, target, +1);
  normalize_integral(plus);
  EigenSymbol minus = hecke_eigensymbol(space, target, -1);
  normalize_integral(minus);

  AnalyticResult out{mazur_tate(plus, &minus, E, p, level, prec.padic_digits),
                     {}, {}, 0, {}, {}, false};
  out.trivial_zero = out.element.trivial_zero;
  long margin = level_margin(p, level);
  out.primitive = invariants(out.element.series(), margin);

  std::vector<LocalData> locs;
  for (size_t i = 0; i < sigma0.size(); ++i) {
    const Int& ell = sigma0[i];
    LocalData loc = sigma0_data ? sigma0_data->at(i) : classify_reduction(E, ell);
    if (loc.ell != ell) throw input_error("sigma0_data out of order");
    SigmaRecord rec = sigma_record(loc, p, prec);
    out.sigma_sum += rec.sigma;
    out.sigma_table.push_back(rec);
    locs.push_back(loc);
  }
  out.sigma0_data = locs;
  GammaLevelElement stripped = mt_stripped(out.element, level, locs);
  long cap = std::min<long>(stripped.size(), margin + 1);
  out.corrected = invariants(stripped.to_series(std::max<long>(cap, 2)), margin);

  if (out.primitive.certified && out.corrected.certified) {
    if (out.corrected.mu != out.primitive.mu)
      throw std::logic_error("mu changed under Sigma0 correction");
    if (out.corrected.lambda != out.primitive.lambda + out.sigma_sum)
      throw std::logic_error("lambda^{Sigma0} != lambda + sum sigma: inconsistent");
  }
  return out;
}

LevelCongruence congruent_mod_p_level(const GammaLevelElement& f, const GammaLevelElement& g) {
  if (f.prime() != g.prime() || f.level() != g.level())
    throw input_error("level congruence requires matching prime and level");
  const Int& p = f.prime();
  auto fv = f.mod_p_vector();
  auto gv = g.mod_p_vector();
  LevelCongruence out;
  out.level = f.level();
  long pivot = -1;
  for (long i = 0; i < (long)gv.size(); ++i)
    if (gv[(size_t)i] != 0) { pivot = i; break; }
  if (pivot < 0) {
    for (auto& v : fv)
      if (v != 0) return out;
    out.congruent = true;
    return out;
  }
  Int u = mod_floor(fv[(size_t)pivot] * inv_mod(gv[(size_t)pivot], p), p);
  if (u == 0) return out;
  for (long i = 0; i < (long)gv.size(); ++i)
    if (fv[(size_t)i] != mod_floor(u * gv[(size_t)i], p)) return out;
  out.congruent = true;
  out.unit = u;
  return out;
}

LevelCongruence verify_congruence_pair(const AnalyticResult& a1, const AnalyticResult& a2,
                                       long level) {
  GammaLevelElement s1 = mt_stripped(a1.element, level, a1.sigma0_data);
  GammaLevelElement s2 = mt_stripped(a2.element, level, a2.sigma0_data);
  return congruent_mod_p_level(s1, s2);
}

LevelCongruence verify_congruence_eisenstein(const AnalyticResult& ar,
                                             const DirichletCharacter& psi,
                                             const std::vector<Int>& sigma0, long level,
                                             const Int& p, long k) {
  if (!psi.odd() || mod_floor(psi.modulus(), p) == 0)
    throw hypothesis_error("requires psi odd and unramified at p");
  GammaLevelElement curve_side = mt_stripped(ar.element, level, ar.sigma0_data);

  DirichletCharacter triv = DirichletCharacter::trivial(1);
  EisensteinFactors fac = eisenstein_factors(triv, psi, p, level, k);
  GammaLevelElement eis = eisenstein_product(fac, triv, psi, sigma0, p, level, k);
  return congruent_mod_p_level(curve_side, eis);
}

}  // namespace iwa
