#include "iwa/transfer.hpp"

#include "iwa/cache.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>

namespace iwa {

CongruenceEvidence screen_congruence(const CurveQ& E1, const Int& N1, const CurveQ& E2,
                                     const Int& N2, const Int& p, long bound,
                                     ALCache* cache1, ALCache* cache2) {
  CongruenceEvidence ev;
  ev.p = p;
  Int L;
  mpz_lcm(L.get_mpz_t(), N1.get_mpz_t(), N2.get_mpz_t());
  ev.sturm = sturm_bound(L * p);
  long B = (bound > 0) ? bound : ev.sturm;
  ev.checked_bound = B;

  OrdinaryData o1 = is_ordinary(E1, p, 2);
  OrdinaryData o2 = is_ordinary(E2, p, 2);
  if (!o1.ordinary || !o2.ordinary)
    throw hypothesis_error("requires both curves ordinary at p");
  ev.ap_congruent = (mod_floor(o1.a_p - o2.a_p, p) == 0);
  if (!ev.ap_congruent) {
    ev.status = CongruenceStatus::failed;
    ev.failing_ell = p;
    return ev;
  }

  auto cached_count = [](ALCache* cache, const CurveQ& E, const Int& l) {
    if (cache) {
      if (auto hit = cache->get(l)) return *hit;
      Int a = count_points(E, l);
      cache->put(l, a);
      return a;
    }
    return count_points(E, l);
  };
  bool all_ok = true;
  for (long ell : primes_up_to(B)) {
    Int l(ell);
    if (l == p || mod_floor(N1, l) == 0 || mod_floor(N2, l) == 0) continue;
    Int a1 = cached_count(cache1, E1, l);
    Int a2 = cached_count(cache2, E2, l);
    ev.residues.push_back({l, mod_floor(a1, p), mod_floor(a2, p)});
    if (mod_floor(a1 - a2, p) != 0) {
      all_ok = false;
      ev.failing_ell = l;
      break;
    }
  }
  if (cache1) cache1->flush();
  if (cache2) cache2->flush();
  if (!all_ok) ev.status = CongruenceStatus::failed;
  else if (B >= ev.sturm) ev.status = CongruenceStatus::verified_to_sturm;
  else ev.status = CongruenceStatus::heuristic;
  return ev;
}

// ---- division-polynomial screening -------------------------------------

namespace {

// dense polynomials over F_q, q a small machine prime
struct FqPoly {
  long q;
  std::vector<long> c;  // c[i] coefficient of x^i, reduced mod q
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  long deg() const { return (long)c.size() - 1; }
};

FqPoly fq_mul(const FqPoly& a, const FqPoly& b) {
  FqPoly r{a.q, {}};
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.q;
  }
  r.trim();
  return r;
}

FqPoly fq_sub(FqPoly a, const FqPoly& b) {
  if (b.c.size() > a.c.size()) a.c.resize(b.c.size(), 0);
  for (size_t i = 0; i < b.c.size(); ++i) a.c[i] = ((a.c[i] - b.c[i]) % a.q + a.q) % a.q;
  a.trim();
  return a;
}

FqPoly fq_scale(FqPoly a, long s) {
  s = ((s % a.q) + a.q) % a.q;
  for (auto& x : a.c) x = x * s % a.q;
  a.trim();
  return a;
}

FqPoly fq_mod(FqPoly a, const FqPoly& m) {
  long dm = m.deg();
  long inv_lead = 1;
  {  // inverse of leading coefficient
    long lead = m.c.back(), e = a.q - 2, base = lead, r = 1;
    while (e) { if (e & 1) r = r * base % a.q; base = base * base % a.q; e >>= 1; }
    inv_lead = r;
  }
  while (a.deg() >= dm) {
    long shift = a.deg() - dm;
    long f = a.c.back() * inv_lead % a.q;
    for (long i = 0; i <= dm; ++i)
      a.c[(size_t)(i + shift)] = ((a.c[(size_t)(i + shift)] - f * m.c[(size_t)i]) % a.q + a.q) % a.q;
    a.trim();
  }
  return a;
}

FqPoly fq_gcd(FqPoly a, FqPoly b) {
  while (!b.c.empty()) {
    FqPoly r = fq_mod(a, b);
    a = b;
    b = r;
  }
  if (!a.c.empty()) {
    long lead = a.c.back(), e = a.q - 2, base = lead, rr = 1;
    while (e) { if (e & 1) rr = rr * base % a.q; base = base * base % a.q; e >>= 1; }
    a = fq_scale(a, rr);
  }
  return a;
}

FqPoly fq_powmod_x(const FqPoly& base, Int e, const FqPoly& m) {
  FqPoly r{base.q, {1}};
  FqPoly b = fq_mod(base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fq_mod(fq_mul(r, b), m);
    b = fq_mod(fq_mul(b, b), m);
    e >>= 1;
  }
  return r;
}

// division polynomials of y^2 = x^3 + Ax + B over F_q: psi_m = P_m(x) * y^(m odd ? 0 : 1)
struct DivisionPolys {
  long q;
  FqPoly F;  // x^3 + Ax + B
  std::vector<FqPoly> P;
  std::vector<int> ypar;  // y-parity: m even -> 1

  DivisionPolys(long q_, long A, long B, long top) : q(q_) {
    F = FqPoly{q, {((B % q) + q) % q, ((A % q) + q) % q, 0, 1}};
    P.resize((size_t)top + 3);
    ypar.assign((size_t)top + 3, 0);
    long a = ((A % q) + q) % q, b = ((B % q) + q) % q;
    P[0] = FqPoly{q, {}};
    P[1] = FqPoly{q, {1}};
    P[2] = FqPoly{q, {2}};
    ypar[2] = 1;
    P[3] = FqPoly{q, {((q - a) * a) % q, (12 * b) % q, (6 * a) % q, 0, 3}};
    // 4 y (x^6 + 5A x^4 + 20B x^3 - 5A^2 x^2 - 4AB x - 8B^2 - A^3)
    long a2 = a * a % q, a3 = a2 * a % q, b2 = b * b % q;
    P[4] = fq_scale(FqPoly{q, {((q - 8 * b2 % q) + q - a3) % q,
                               (q - 4 * a * b % q) % q,
                               (q - 5 * a2 % q) % q,
                               20 * b % q,
                               5 * a % q,
                               0, 1}},
                    4);
    ypar[4] = 1;
    for (long m = 5; m <= top + 2; ++m) compute(m);
  }

  void compute(long m) {
    // psi products with y^2 -> F substitution; track parities
    auto mul3 = [&](const FqPoly& x, const FqPoly& y, const FqPoly& z) {
      return fq_mul(fq_mul(x, y), z);
    };
    if (m % 2 == 1) {
      long mm = (m - 1) / 2;
      // psi_{m} = psi_{mm+2} psi_mm^3 - psi_{mm-1} psi_{mm+1}^3
      FqPoly t1 = fq_mul(P[(size_t)(mm + 2)], mul3(P[(size_t)mm], P[(size_t)mm], P[(size_t)mm]));
      int par1 = ypar[(size_t)(mm + 2)] + 3 * ypar[(size_t)mm];
      FqPoly t2 = fq_mul(P[(size_t)(mm - 1)],
                         mul3(P[(size_t)(mm + 1)], P[(size_t)(mm + 1)], P[(size_t)(mm + 1)]));
      int par2 = ypar[(size_t)(mm - 1)] + 3 * ypar[(size_t)(mm + 1)];
      // both terms must land on the same parity mod 2 (they do); fold y^2 = F
      for (; par1 >= 2; par1 -= 2) t1 = fq_mul(t1, F);
      for (; par2 >= 2; par2 -= 2) t2 = fq_mul(t2, F);
      if (par1 != par2) throw std::logic_error("division polynomial parity drift");
      P[(size_t)m] = fq_sub(t1, t2);
      ypar[(size_t)m] = par1;  // 0 for odd m
      if (ypar[(size_t)m] != 0) throw std::logic_error("odd division polynomial has y");
    } else {
      long mm = m / 2;
      // 2y psi_m = psi_mm (psi_{mm+2} psi_{mm-1}^2 - psi_{mm-2} psi_{mm+1}^2):
      // the right side always carries exactly y^2 (parities 0+2 or 1+1 plus
      // the factor psi_mm), so the x-part of psi_m is P_mm (A - B) / 2
      FqPoly A = fq_mul(P[(size_t)(mm + 2)], fq_mul(P[(size_t)(mm - 1)], P[(size_t)(mm - 1)]));
      FqPoly B = fq_mul(P[(size_t)(mm - 2)], fq_mul(P[(size_t)(mm + 1)], P[(size_t)(mm + 1)]));
      int ytot = ypar[(size_t)mm] + ypar[(size_t)(mm + 2)] + 2 * ypar[(size_t)(mm - 1)];
      int ytot2 = ypar[(size_t)mm] + ypar[(size_t)(mm - 2)] + 2 * ypar[(size_t)(mm + 1)];
      if (ytot != 2 || ytot2 != 2) throw std::logic_error("division polynomial parity drift");
      FqPoly prod = fq_mul(P[(size_t)mm], fq_sub(A, B));
      long inv2 = (q + 1) / 2;
      P[(size_t)m] = fq_scale(prod, inv2);
      ypar[(size_t)m] = 1;
    }
  }
};

// distinct-degree factor degrees of f over F_q, stages 1..max_stage, plus
// the leftover degree (whose factors all exceed max_stage)
std::vector<long> ddf_degrees(FqPoly f, long max_stage, long& leftover) {
  std::vector<long> degs;
  long q = f.q;
  leftover = 0;
  // gcd with x^(q^d) - x pulls out every degree-d factor once; the inner
  // while re-runs the gcd so repeated factors are counted with multiplicity
  FqPoly x{q, {0, 1}};
  FqPoly xq = x;
  FqPoly cur = f;
  for (long d = 1; d <= max_stage && cur.deg() > 0; ++d) {
    xq = fq_powmod_x(xq, Int(q), cur);
    FqPoly diff = fq_sub(xq, fq_mod(x, cur));
    FqPoly gd = fq_gcd(cur, diff);
    while (gd.deg() > 0) {
      // gd = product of all factors of cur with degree dividing d that remain
      long parts = gd.deg() / d;
      for (long t = 0; t < parts; ++t) degs.push_back(d);
      // divide cur by gd
      FqPoly quot{q, {}};
      {
        // exact division cur / gd by repeated fq_mod-style elimination
        FqPoly rem = cur;
        quot.c.assign((size_t)(cur.deg() - gd.deg() + 1), 0);
        long lead = gd.c.back(), e = q - 2, base = lead, inv = 1;
        while (e) { if (e & 1) inv = inv * base % q; base = base * base % q; e >>= 1; }
        while (rem.deg() >= gd.deg()) {
          long shift = rem.deg() - gd.deg();
          long fcoef = rem.c.back() * inv % q;
          quot.c[(size_t)shift] = fcoef;
          for (long i = 0; i <= gd.deg(); ++i)
            rem.c[(size_t)(i + shift)] =
                ((rem.c[(size_t)(i + shift)] - fcoef * gd.c[(size_t)i]) % q + q) % q;
          rem.trim();
        }
        if (rem.deg() >= 0 && !(rem.c.empty()))
          throw std::logic_error("ddf: non-exact division");
      }
      quot.trim();
      cur = quot;
      if (cur.deg() <= 0) break;
      FqPoly diff2 = fq_sub(fq_powmod_x(x, pow_int(Int(q), (unsigned long)d), cur), fq_mod(x, cur));
      gd = fq_gcd(cur, diff2);
    }
    if (cur.deg() > 0) xq = fq_mod(xq, cur);
  }
  leftover = std::max<long>(cur.deg(), 0);
  return degs;
}

bool subset_sums_to(const std::vector<long>& degs, long target) {
  std::vector<char> reach((size_t)target + 1, 0);
  reach[0] = 1;
  for (long d : degs) {
    if (d > target) continue;
    for (long t = target; t >= d; --t)
      if (reach[(size_t)(t - d)]) reach[(size_t)t] = 1;
  }
  return reach[(size_t)target] != 0;
}

}  // namespace

IrreducibleScreen screen_irreducible(const CurveQ& E, const Int& p) {
  IrreducibleScreen out;
  long target = (p.get_si() - 1) / 2;
  long tried = 0;
  bool all_feasible = true;
  for (long q = 5; q < 200 && tried < 6; ++q) {
    Int Q(q);
    if (!is_prime(Q) || Q == p) continue;
    if (mod_floor(E.disc(), Q) == 0 || mod_floor(Int(6), Q) == 0) continue;
    ++tried;
    // short model mod q: y^2 = x^3 - 27 c4 x - 54 c6 (valid for q > 3)
    long A = mod_floor(-27 * E.c4(), Q).get_si();
    long B = mod_floor(-54 * E.c6(), Q).get_si();
    DivisionPolys dp(q, A, B, p.get_si());
    FqPoly psi_p = dp.P[(size_t)p.get_si()];
    if (psi_p.deg() != (p.get_si() * p.get_si() - 1) / 2)
      throw std::logic_error("division polynomial degree mismatch");
    long leftover = 0;
    std::vector<long> degs = ddf_degrees(psi_p, target, leftover);
    if (!subset_sums_to(degs, target)) {
      out.verdict = IrreducibleVerdict::likely_irreducible;
      out.witness_prime = Q;
      out.note = "mod-" + Q.get_str() + " factor degrees admit no kernel polynomial";
      return out;
    }
  }
  if (!all_feasible || tried == 0) {
    out.verdict = IrreducibleVerdict::undecided;
    return out;
  }
  // factor pattern is stable: hunt for a tame pair (phi, psi), psi quadratic
  // or trivial, phi = omega psi^{-1}, via a_l = psi(l)(1 + l) mod p
  std::vector<Int> disc_primes;
  for (auto& [q, e] : factor(E.disc())) disc_primes.push_back(q);
  std::vector<Int> candidates{Int(1)};
  long np = (long)disc_primes.size();
  for (long mask = 1; mask < (1 << np) && np <= 10; ++mask) {
    Int d = 1;
    for (long i = 0; i < np; ++i)
      if (mask & (1 << i)) d *= disc_primes[(size_t)i];
    candidates.push_back(d);
    candidates.push_back(-d);
  }
  candidates.push_back(Int(-1));
  auto sample = primes_up_to(300);
  for (const Int& d : candidates) {
    if (!is_squarefree(d == 0 ? Int(1) : d)) continue;
    DirichletCharacter psi =
        (d == 1) ? DirichletCharacter::trivial(1)
                 : DirichletCharacter::kronecker(mod_floor(d, 4) == 1 ? d : 4 * d);
    bool ok = true;
    for (long ell : sample) {
      Int l(ell);
      if (l == p || mod_floor(E.disc(), l) == 0 || mod_floor(psi.modulus(), l) == 0) continue;
      Int al = count_points(E, l);
      int pv = psi.quadratic_value(l);
      if (mod_floor(al - pv * (1 + l), p) != 0) { ok = false; break; }
    }
    if (ok) {
      DirichletCharacter omega = DirichletCharacter::teichmuller_power(p, 1);
      out.verdict = IrreducibleVerdict::reducible;
      out.psi = psi;
      out.phi = omega * psi.inverse();
      out.note = "trace identity a_l = psi(l)(1+l) mod p holds on sampled primes";
      return out;
    }
  }
  out.verdict = IrreducibleVerdict::undecided;
  out.note = "factor pattern allows a p-isogeny but no tame pair was identified";
  return out;
}

// ---- reports -------------------------------------------------------------

std::string TransferReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["mode"] = mode;
  j["curve1"] = curve1;
  j["curve2"] = curve2;
  j["p"] = p.get_str();
  nlohmann::json s0 = nlohmann::json::array();
  for (auto& l : sigma0) s0.push_back(l.get_str());
  j["sigma0"] = s0;
  auto sig_table = [](const std::vector<SigmaRecord>& tab) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& r : tab) {
      nlohmann::json e;
      e["l"] = r.ell.get_str();
      e["s"] = r.s_ell.get_str();
      e["d"] = r.d_ell;
      e["sigma"] = r.sigma;
      if (r.ambiguous_corank) e["ambiguous_corank"] = true;
      arr.push_back(e);
    }
    return arr;
  };
  j["sigma_table_1"] = sig_table(sigma_table_1);
  if (mode == "irreducible_pair") j["sigma_table_2"] = sig_table(sigma_table_2);
  if (mode == "reducible_single") {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& r : t_table) {
      nlohmann::json e;
      e["l"] = r.ell.get_str();
      e["corank_phi"] = r.corank_phi;
      e["corank_psi"] = r.corank_psi;
      e["corank_torsion"] = r.corank_torsion;
      e["t"] = r.t_ell;
      if (r.flagged) e["flagged"] = true;
      arr.push_back(e);
    }
    j["t_table"] = arr;
    j["lambda_psi"] = lambda_psi;
    j["epsilon"] = epsilon;
  }
  j["lambda_in"] = lambda_in;
  j["lambda_out"] = lambda_out;
  j["mu_out"] = mu_out;
  j["lambda_sigma0"] = lambda_sigma0;
  nlohmann::json led = nlohmann::json::array();
  for (auto& e : ledger) {
    nlohmann::json x;
    x["hypothesis"] = e.hypothesis;
    x["status"] = e.status;
    x["evidence"] = e.evidence;
    led.push_back(x);
  }
  j["ledger"] = led;
  if (analytic_checked) j["lambda_anal"] = lambda_anal;
  if (period_warning) j["period_warning"] = true;
  return j.dump(2);
}

std::string TransferReport::render_text() const {
  std::ostringstream os;
  os << "mode: " << mode << "  p=" << p << "\n";
  os << "curves: " << curve1;
  if (!curve2.empty()) os << "  ->  " << curve2;
  os << "\nSigma0:";
  for (auto& l : sigma0) os << " " << l;
  os << "\n";
  auto dump_sig = [&](const char* name, const std::vector<SigmaRecord>& tab) {
    if (tab.empty()) return;
    os << name << ":\n";
    for (auto& r : tab)
      os << "  l=" << r.ell << "  s=" << r.s_ell << "  d=" << r.d_ell
         << "  sigma=" << r.sigma << (r.ambiguous_corank ? "  [flagged]" : "") << "\n";
  };
  dump_sig("sigma table (curve 1)", sigma_table_1);
  dump_sig("sigma table (curve 2)", sigma_table_2);
  if (!t_table.empty()) {
    os << "t table:\n";
    for (auto& r : t_table)
      os << "  l=" << r.ell << "  corank(phi)=" << r.corank_phi
         << "  corank(psi)=" << r.corank_psi << "  corank(tors)=" << r.corank_torsion
         << "  t=" << r.t_ell << (r.flagged ? "  [flagged]" : "") << "\n";
    os << "lambda_psi = " << lambda_psi << "  epsilon = " << epsilon << "\n";
  }
  os << "lambda_in = " << lambda_in << "  lambda_Sigma0 = " << lambda_sigma0
     << "  lambda_out = " << lambda_out << "  mu_out = " << mu_out << "\n";
  os << "hypothesis ledger:\n";
  for (auto& e : ledger)
    os << "  [" << e.status << "] " << e.hypothesis << " -- " << e.evidence << "\n";
  if (analytic_checked) os << "analytic lambda_Sigma0 = " << lambda_anal << "\n";
  if (period_warning)
    os << "warning: period normalization not covered by the irreducible or\n"
          "  odd-unramified reducible hypotheses; treat mu readings with care\n";
  return os.str();
}

TransferReport transfer_lambda(const CurveQ& E1, const Int& N1, long lambda1,
                               const CurveQ& E2, const Int& N2, const Int& p,
                               std::vector<Int> sigma0, const Precision& prec,
                               const TransferOptions& opt) {
  TransferReport rep;
  rep.mode = "irreducible_pair";
  rep.curve1 = E1.str();
  rep.curve2 = E2.str();
  rep.p = p;

  if (sigma0.empty()) {
    for (auto& [q, e] : factor(N1 * N2))
      if (q != p) sigma0.push_back(q);
  }
  std::sort(sigma0.begin(), sigma0.end());
  rep.sigma0 = sigma0;

  std::vector<std::string> missing;
  std::unique_ptr<ALCache> cache1, cache2;
  if (!opt.cache_dir.empty()) {
    cache1 = std::make_unique<ALCache>(opt.cache_dir, E1);
    cache2 = std::make_unique<ALCache>(opt.cache_dir, E2);
  }
  CongruenceEvidence ev =
      screen_congruence(E1, N1, E2, N2, p, opt.screen_bound, cache1.get(), cache2.get());
  if (ev.status == CongruenceStatus::failed)
    throw hypothesis_error("requires E1[p] isomorphic to E2[p]: a_l congruence fails at l = " +
                           ev.failing_ell.get_str());
  rep.ledger.push_back({"E1[p] isomorphic to E2[p] (irreducible)",
                        ev.status == CongruenceStatus::verified_to_sturm ? "verified" : "asserted",
                        "a_l congruent mod p for good l up to " + std::to_string(ev.checked_bound) +
                            " (Sturm bound " + std::to_string(ev.sturm) + "), a_p congruent"});

  auto s1 = screen_irreducible(E1, p);
  auto s2 = screen_irreducible(E2, p);
  auto need_irr = [&](const IrreducibleScreen& s, const CurveQ& E) {
    if (s.verdict == IrreducibleVerdict::likely_irreducible) {
      rep.ledger.push_back({"E[p] irreducible for " + E.str(), "verified",
                            "no p-isogeny: " + s.note});
      return;
    }
    if (opt.assert_irreducible) {
      rep.ledger.push_back({"E[p] irreducible for " + E.str(), "asserted", "user flag"});
      return;
    }
    missing.push_back("irreducibility of E[p] for " + E.str() +
                      (s.verdict == IrreducibleVerdict::reducible ? " (screen says reducible)"
                                                                  : " (undecided)"));
  };
  need_irr(s1, E1);
  need_irr(s2, E2);

  if (opt.assert_mu_zero)
    rep.ledger.push_back({"mu(E1) = 0", "asserted", "user flag (transportable by Kato divisibility)"});
  else
    rep.ledger.push_back({"mu(E1) = 0", "asserted",
                          "input invariant (establish analytically and transport by Kato divisibility)"});

  if (!missing.empty()) {
    std::string msg = "hypotheses not established:";
    for (auto& m : missing) msg += " " + m + ";";
    throw hypothesis_error(msg);
  }

  long sum1 = 0, sum2 = 0;
  for (auto& ell : sigma0) {
    SigmaRecord r1 = sigma_record(E1, ell, p, prec);
    SigmaRecord r2 = sigma_record(E2, ell, p, prec);
    sum1 += r1.sigma;
    sum2 += r2.sigma;
    rep.sigma_table_1.push_back(r1);
    rep.sigma_table_2.push_back(r2);
  }
  rep.lambda_in = lambda1;
  rep.lambda_sigma0 = lambda1 + sum1;
  rep.lambda_out = lambda1 + sum1 - sum2;
  rep.mu_out = 0;
  if (rep.lambda_out < 0)
    throw std::logic_error("negative lambda from transfer: inconsistent inputs");
  rep.ledger.push_back({"lambda(E2) = lambda(E1) + sum(sigma1) - sum(sigma2)", "verified",
                        "non-primitive invariants agree for congruent irreducible pairs; "
                        "equality of primitive and Sigma0 invariants transfers both ways"});
  return rep;
}

TransferReport reducible_lambda(const CurveQ& E, const DirichletCharacter& phi,
                                const DirichletCharacter& psi, const Int& p,
                                std::vector<Int> sigma0, const Precision& prec,
                                long kl_max_level) {
  static const long allowed[] = {3, 5, 7, 13, 37};
  bool ok_p = false;
  for (long q : allowed) ok_p |= (p == q);
  if (!ok_p) throw hypothesis_error("p must be one of 3, 5, 7, 13, 37 for the reducible case");
  if (!psi.odd() || psi.ramified_at(p))
    throw hypothesis_error("requires psi odd and unramified at p (swap phi and psi otherwise)");
  if (!phi.even() || !phi.ramified_at(p))
    throw hypothesis_error("requires phi even and ramified at p");

  TransferReport rep;
  rep.mode = "reducible_single";
  rep.curve1 = E.str();
  rep.p = p;
  std::sort(sigma0.begin(), sigma0.end());
  rep.sigma0 = sigma0;

  ClassicalInvariants cl = classical_lambda(psi, p, prec.padic_digits, kl_max_level);
  if (!cl.certified)
    throw precision_error("lambda_psi undecided: lambda >= " +
                          std::to_string(cl.lambda_lower_bound) +
                          " at level " + std::to_string(cl.level_used) + "; raise level");
  rep.lambda_psi = cl.lambda;
  rep.ledger.push_back({"lambda_psi computed", "verified",
                        "level " + std::to_string(cl.level_used) +
                            (cl.duality_checked ? ", dual branch agrees" : "")});

  long correction = 0, sigma_sum = 0;
  for (auto& ell : sigma0) {
    TLRecord t = t_ell(E, phi, psi, ell, p);
    SigmaRecord s = sigma_record(E, ell, p, prec);
    rep.t_table.push_back(t);
    rep.sigma_table_1.push_back(s);
    Int c = s.s_ell * t.t_ell;
    correction += c.get_si();
    sigma_sum += s.sigma;
  }
  rep.epsilon = correction;
  rep.lambda_in = cl.lambda;
  rep.lambda_out = 2 * cl.lambda + correction;
  rep.lambda_sigma0 = rep.lambda_out + sigma_sum;
  rep.mu_out = 0;
  rep.ledger.push_back({"mu(E) = 0", "verified",
                        "classical mu vanishes on both branches (Ferrero-Washington)"});
  rep.ledger.push_back({"lambda(E) = 2 lambda_psi + sum s_l t_l", "verified",
                        "corank bookkeeping over Sigma0"});
  return rep;
}

bool equivalence_audit(TransferReport& report, const AnalyticResult& analytic) {
  report.analytic_checked = true;
  report.lambda_anal = analytic.corrected.certified ? analytic.corrected.lambda : -1;
  long alg = report.lambda_sigma0;
  bool ok = analytic.corrected.certified && analytic.corrected.lambda == alg &&
            analytic.corrected.mu == 0;
  report.ledger.push_back(
      {"lambda_alg(Sigma0) = lambda_anal(Sigma0)", ok ? "verified" : "asserted",
       ok ? "both sides = " + std::to_string(alg)
          : "MISMATCH: algebraic " + std::to_string(alg) + " vs analytic " +
                std::to_string(report.lambda_anal) + " (falsification candidate)"});
  return ok;
}

}  // namespace iwa
