// Command-line surface: sigma tables, lambda transfer, the conductor-11
// twist pipeline, classical invariants, congruence checks, and the symbol
// cache.  Exit codes: 0 ok, 2 hypothesis refusal, 3 precision/undecided,
// 4 input error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iwa/cache.hpp"
#include "iwa/catalog.hpp"
#include "iwa/transfer.hpp"

#include <iostream>

using namespace iwa;
using nlohmann::json;

namespace {

struct RunConfig {
  Int p = 5;
  Precision prec{16, 32};
  long level = 3;
  std::string sigma0_spec;
  std::string format = "text";
  std::string cache_dir;
  std::string catalog_file;
  bool assert_irreducible = false;
  bool assert_mu_zero = false;
  long count_bound = 1000000;

  void validate() const {
    if (p < 3 || !is_prime(p)) throw input_error("p must be an odd prime (p = 2 is not supported)");
    if (level < 0 || level > 6) throw input_error("level must be between 0 and 6");
    if (format != "text" && format != "json" && format != "tsv")
      throw input_error("format must be text, json or tsv");
  }

  std::vector<Int> sigma0() const {
    std::vector<Int> out;
    std::string cur;
    for (char ch : sigma0_spec + ",") {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(parse_int(cur));
        cur.clear();
      } else if (!isspace((unsigned char)ch)) {
        cur.push_back(ch);
      }
    }
    for (auto& l : out)
      if (!is_prime(l) || l == p) throw input_error("sigma0 must list primes distinct from p");
    return out;
  }

  Catalog catalog() const {
    Catalog cat = Catalog::builtin();
    if (!catalog_file.empty()) {
      Catalog extra = Catalog::load(catalog_file);
      for (auto& label : extra.labels()) cat.add(extra.get(label));
    }
    return cat;
  }
};

// CLI11 option plumbing for arbitrary-precision / composite values
void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option_function<std::string>(
      "--p", [&cfg](const std::string& v) { cfg.p = parse_int(v); }, "odd prime p (default 5)");
  cmd->add_option_function<std::string>(
      "--prec",
      [&cfg](const std::string& v) {
        auto comma = v.find(',');
        Int k = parse_int(comma == std::string::npos ? v : v.substr(0, comma));
        Int n = comma == std::string::npos ? Int(cfg.prec.series_degree)
                                           : parse_int(v.substr(comma + 1));
        if (!k.fits_slong_p() || !n.fits_slong_p() || k > 4096 || n > 4096)
          throw input_error("precision out of range");
        cfg.prec = Precision(k.get_si(), n.get_si());
      },
      "p-adic digits k or k,n with series degree n (default 16,32)");
  cmd->add_option("--level", cfg.level, "Mazur-Tate / Stickelberger level budget (default 3)");
  cmd->add_option("--sigma0", cfg.sigma0_spec, "comma-separated primes for Sigma0");
  cmd->add_option("--format", cfg.format, "output format: text | json | tsv");
  cmd->add_option("--cache-dir", cfg.cache_dir, "directory for a_l and symbol caches");
  cmd->add_option("--catalog", cfg.catalog_file, "extra curve catalog file");
  cmd->add_flag("--assert-irreducible", cfg.assert_irreducible,
                "accept irreducibility of E[p] as a user assertion");
  cmd->add_flag("--assert-mu-zero", cfg.assert_mu_zero, "accept mu = 0 as a user assertion");
  cmd->add_option("--count-bound", cfg.count_bound, "point-counting bound (default 10^6)");
}

Int conductor_of(const CatalogEntry& e, const Int& flag_value, const char* which) {
  if (flag_value > 0) return flag_value;
  if (e.conductor > 0) return e.conductor;
  throw input_error(std::string("conductor required for ") + which +
                    ": pass --conductor or use an annotated catalog label");
}

int run_invariants(const RunConfig& cfg, const std::string& curve_spec, bool analytic,
                   const Int& conductor_flag) {
  CatalogEntry ent = resolve_curve(curve_spec, cfg.catalog());
  const CurveQ& E = ent.curve;
  OrdinaryData ord = is_ordinary(E, cfg.p, cfg.prec.padic_digits);
  if (!ord.ordinary)
    throw hypothesis_error("requires ordinary reduction at p: a_p = " + ord.a_p.get_str() +
                           " is divisible by p (supersingular)");

  std::vector<Int> sigma0 = cfg.sigma0();
  if (sigma0.empty()) {
    for (auto& [q, e] : factor(E.disc()))
      if (q != cfg.p) sigma0.push_back(q);
  }

  json out;
  out["curve"] = E.str();
  out["p"] = cfg.p.get_str();
  out["alpha_mod_p"] = mod_floor(ord.alpha->residue(), cfg.p).get_str();
  out["anomalous"] = ord.anomalous;
  json table = json::array();
  std::vector<SigmaRecord> recs;
  for (auto& ell : sigma0) {
    SigmaRecord r = sigma_record(E, ell, cfg.p, cfg.prec);
    recs.push_back(r);
    json e;
    e["l"] = r.ell.get_str();
    e["s"] = r.s_ell.get_str();
    e["d"] = r.d_ell;
    e["sigma"] = r.sigma;
    if (r.ambiguous_corank) e["ambiguous_corank"] = true;
    table.push_back(e);
  }
  out["sigma_table"] = table;

  if (analytic) {
    Int N = conductor_of(ent, conductor_flag, "the analytic side");
    IrreducibleScreen scr = screen_irreducible(E, cfg.p);
    bool warn = scr.verdict != IrreducibleVerdict::likely_irreducible;
    AnalyticResult ar = analytic_invariants(E, N, cfg.p, sigma0, cfg.level, cfg.prec);
    out["analytic"] = {{"mu", ar.primitive.mu},
                       {"lambda", ar.primitive.lambda},
                       {"certified", ar.primitive.certified},
                       {"lambda_sigma0", ar.corrected.lambda},
                       {"trivial_zero", ar.trivial_zero}};
    out["mazur_tate"] = json::parse(ar.element.to_json());
    out["series"] = json::parse(ar.element.series().to_json());
    if (warn)
      out["period_warning"] =
          "E[p] not screened irreducible: the Gamma0-normalized period is only "
          "guaranteed up to p-unit under the reducible odd-unramified hypotheses";
    if (!ar.primitive.certified)
      throw precision_error("analytic invariants uncertified: " + ar.primitive.detail);
  }

  if (cfg.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (cfg.format == "tsv") {
    for (auto& r : recs)
      std::cout << r.ell << "\t" << r.s_ell << "\t" << r.d_ell << "\t" << r.sigma << "\n";
  } else {
    std::cout << "curve " << E.str() << "  p=" << cfg.p << "\n";
    for (auto& r : recs) std::cout << "  " << r.str() << "\n";
    if (analytic) {
      std::cout << "analytic: mu=" << out["analytic"]["mu"] << " lambda=" << out["analytic"]["lambda"]
                << " lambda_sigma0=" << out["analytic"]["lambda_sigma0"] << "\n";
      if (out["analytic"]["trivial_zero"].get<bool>())
        std::cout << "note: split multiplicative reduction at p forces a zero at T = 0;\n"
                     "  lambda counts that trivial zero\n";
    }
    if (out.contains("period_warning"))
      std::cout << "warning: " << out["period_warning"].get<std::string>() << "\n";
  }
  return 0;
}

int run_transfer(const RunConfig& cfg, const std::string& c1, const std::string& c2,
                 long lambda1, const Int& n1_flag, const Int& n2_flag, long screen_bound,
                 bool analytic) {
  Catalog cat = cfg.catalog();
  CatalogEntry e1 = resolve_curve(c1, cat);
  CatalogEntry e2 = resolve_curve(c2, cat);
  Int N1 = conductor_of(e1, n1_flag, "curve1");
  Int N2 = conductor_of(e2, n2_flag, "curve2");
  TransferOptions opt;
  opt.assert_irreducible = cfg.assert_irreducible;
  opt.assert_mu_zero = cfg.assert_mu_zero;
  opt.screen_bound = screen_bound;
  opt.cache_dir = cfg.cache_dir;
  TransferReport rep =
      transfer_lambda(e1.curve, N1, lambda1, e2.curve, N2, cfg.p, cfg.sigma0(), cfg.prec, opt);
  if (analytic) {
    AnalyticResult ar = analytic_invariants(e2.curve, N2, cfg.p, rep.sigma0, cfg.level, cfg.prec);
    long corrected_alg = rep.lambda_out;
    for (auto& r : rep.sigma_table_2) corrected_alg += r.sigma;
    // audit the E2-side non-primitive invariants
    TransferReport audit_view = rep;
    audit_view.lambda_sigma0 = corrected_alg;
    bool ok = equivalence_audit(audit_view, ar);
    rep.analytic_checked = true;
    rep.lambda_anal = audit_view.lambda_anal;
    rep.ledger.push_back(audit_view.ledger.back());
    if (!ok) rep.period_warning = true;
  }
  if (cfg.format == "json")
    std::cout << rep.to_json() << "\n";
  else
    std::cout << rep.render_text();
  return 0;
}

int run_twist_family(const RunConfig& cfg, long c, bool analytic) {
  if (c <= 0 || !is_squarefree(Int(c)))
    throw input_error("twist parameter c must be positive and squarefree");
  if (c % cfg.p.get_si() == 0)
    throw hypothesis_error("requires psi(p) nonzero: p must not divide c");
  if (c % 11 == 0)
    throw hypothesis_error("requires a twist unramified at 11 in this pipeline");
  if (cfg.p != 5)
    throw hypothesis_error("the conductor-11 family runs at p = 5");

  Catalog cat = cfg.catalog();
  CurveQ J = cat.get("11a1").curve;
  DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(c);
  DirichletCharacter omega = DirichletCharacter::teichmuller_power(cfg.p, 1);
  DirichletCharacter phi = omega * psi.inverse();
  CurveQ tw = quadratic_twist(J, -c);

  std::vector<Int> sigma0;
  for (auto& [q, e] : factor(Int(c))) sigma0.push_back(q);
  sigma0.push_back(Int(11));

  TransferReport rep = reducible_lambda(tw, phi, psi, cfg.p, sigma0, cfg.prec, cfg.level);
  rep.curve1 = "twist of 11a1 by -" + std::to_string(c);

  int split11 = psi.quadratic_value(11);
  json out;
  out["c"] = c;
  out["psi_conductor"] = psi.modulus().get_str();
  out["eleven"] = split11 == 1 ? "split" : (split11 == -1 ? "inert" : "ramified");
  out["lambda_psi"] = rep.lambda_psi;
  out["epsilon"] = rep.epsilon;
  out["lambda_alg"] = rep.lambda_out;
  out["mu"] = 0;

  if (analytic) {
    if (psi.quadratic_value(cfg.p) == 1)
      throw hypothesis_error("refused: p is anomalous for this twist (psi(p) = 1)");
    // conductor of the twist: 11 * f_psi^2 (quadratic twist, coprime conductors)
    Int N = 11 * psi.modulus() * psi.modulus();
    std::vector<LocalData> s0data;
    auto tg = [&cat, c, &psi](const Int& q) -> Int {
      if (mod_floor(Int(c), q) == 0) return 0;
      int v = psi.quadratic_value(q);
      if (q == 11) return Int(v);
      return v * count_points(cat.get("11a1").curve, q);
    };
    std::function<Int(const Int&)> target = tg;
    for (auto& ell : sigma0) {
      LocalData d;
      d.ell = ell;
      if (ell == 11) {
        d.type = split11 == 1 ? ReductionType::split_mult : ReductionType::nonsplit_mult;
        d.a_ell = split11;
        d.e0 = 1;
        d.e1 = -d.a_ell;
      } else {
        d.type = ReductionType::additive;
      }
      s0data.push_back(d);
    }
    AnalyticResult ar =
        analytic_invariants(tw, N, cfg.p, sigma0, cfg.level, cfg.prec, &target, &s0data);
    out["lambda_anal"] = ar.primitive.lambda;
    out["lambda_anal_certified"] = ar.primitive.certified;
    out["agreement"] = (ar.primitive.certified && ar.primitive.lambda == rep.lambda_out &&
                        ar.primitive.mu == 0);
    LevelCongruence lc = verify_congruence_eisenstein(ar, psi, sigma0, cfg.level, cfg.p,
                                                      cfg.prec.padic_digits);
    out["eisenstein_congruence"] = lc.congruent;
    out["witness_unit"] = lc.unit.get_str();
  }

  if (cfg.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.render_text();
    std::cout << "lambda_alg = 2*lambda_psi + epsilon = " << rep.lambda_out << "\n";
    if (analytic)
      std::cout << "lambda_anal = " << out["lambda_anal"] << "  agreement: "
                << (out["agreement"].get<bool>() ? "yes" : "NO") << "  eisenstein congruence: "
                << (out["eisenstein_congruence"].get<bool>() ? "yes" : "NO") << " (u = "
                << out["witness_unit"].get<std::string>() << ")\n";
  }
  return 0;
}

int run_kl(const RunConfig& cfg, const std::string& char_spec) {
  DirichletCharacter psi = DirichletCharacter::parse(char_spec, cfg.p);
  ClassicalInvariants ci = classical_lambda(psi, cfg.p, cfg.prec.padic_digits, cfg.level);
  json out;
  out["character"] = psi.str();
  out["p"] = cfg.p.get_str();
  out["certified"] = ci.certified;
  if (ci.certified) {
    out["lambda"] = ci.lambda;
    out["mu"] = ci.mu;
    out["level_used"] = ci.level_used;
    out["duality_checked"] = ci.duality_checked;
  } else {
    out["lambda_lower_bound"] = ci.lambda_lower_bound;
    out["status"] = "undecided: lambda >= bound at the level budget";
  }
  if (cfg.format == "json")
    std::cout << out.dump(2) << "\n";
  else if (ci.certified)
    std::cout << psi.str() << ": lambda = " << ci.lambda << ", mu = 0 (level "
              << ci.level_used << (ci.duality_checked ? ", dual branch agrees" : "") << ")\n";
  else
    std::cout << psi.str() << ": undecided, lambda >= " << ci.lambda_lower_bound << "\n";
  if (!ci.certified) return 3;
  return 0;
}

int run_congruence(const RunConfig& cfg, const std::string& mode, const std::string& c1,
                   const std::string& c2, long c_param, const Int& n1_flag, const Int& n2_flag) {
  Catalog cat = cfg.catalog();
  json out;
  out["mode"] = mode;
  LevelCongruence lc;
  if (mode == "pair") {
    CatalogEntry e1 = resolve_curve(c1, cat);
    CatalogEntry e2 = resolve_curve(c2, cat);
    Int N1 = conductor_of(e1, n1_flag, "curve1");
    Int N2 = conductor_of(e2, n2_flag, "curve2");
    CongruenceEvidence ev = screen_congruence(e1.curve, N1, e2.curve, N2, cfg.p, 0);
    if (ev.status == CongruenceStatus::failed)
      throw hypothesis_error("requires congruent a_l: screening fails at l = " +
                             ev.failing_ell.get_str());
    std::vector<Int> sigma0 = cfg.sigma0();
    if (sigma0.empty())
      for (auto& [q, e] : factor(N1 * N2))
        if (q != cfg.p) sigma0.push_back(q);
    AnalyticResult a1 = analytic_invariants(e1.curve, N1, cfg.p, sigma0, cfg.level, cfg.prec);
    AnalyticResult a2 = analytic_invariants(e2.curve, N2, cfg.p, sigma0, cfg.level, cfg.prec);
    lc = verify_congruence_pair(a1, a2, cfg.level);
  } else if (mode == "eisenstein") {
    // reuse the twist pipeline's analytic side
    if (c_param <= 0) throw input_error("eisenstein mode needs --c");
    RunConfig sub = cfg;
    sub.format = "json";
    // inline: build the twist data and check
    DirichletCharacter psi = DirichletCharacter::imaginary_quadratic(c_param);
    if (psi.quadratic_value(cfg.p) == 0)
      throw hypothesis_error("requires psi(p) nonzero: p must not divide c");
    if (psi.quadratic_value(cfg.p) == 1)
      throw hypothesis_error("refused: p is anomalous for this twist (psi(p) = 1)");
    CurveQ J = cat.get("11a1").curve;
    CurveQ tw = quadratic_twist(J, -c_param);
    std::vector<Int> sigma0;
    for (auto& [q, e] : factor(Int(c_param))) sigma0.push_back(q);
    sigma0.push_back(Int(11));
    int split11 = psi.quadratic_value(11);
    std::vector<LocalData> s0data;
    for (auto& ell : sigma0) {
      LocalData d;
      d.ell = ell;
      if (ell == 11) {
        d.type = split11 == 1 ? ReductionType::split_mult : ReductionType::nonsplit_mult;
        d.a_ell = split11;
        d.e0 = 1;
        d.e1 = -d.a_ell;
      } else {
        d.type = ReductionType::additive;
      }
      s0data.push_back(d);
    }
    auto tg = [&cat, c_param, &psi](const Int& q) -> Int {
      if (mod_floor(Int(c_param), q) == 0) return 0;
      int v = psi.quadratic_value(q);
      if (q == 11) return Int(v);
      return v * count_points(cat.get("11a1").curve, q);
    };
    std::function<Int(const Int&)> target = tg;
    Int N = 11 * psi.modulus() * psi.modulus();
    AnalyticResult ar =
        analytic_invariants(tw, N, cfg.p, sigma0, cfg.level, cfg.prec, &target, &s0data);
    lc = verify_congruence_eisenstein(ar, psi, sigma0, cfg.level, cfg.p, cfg.prec.padic_digits);
  } else {
    throw input_error("mode must be pair or eisenstein");
  }
  out["congruent"] = lc.congruent;
  out["level"] = lc.level;
  out["witness_unit"] = lc.unit.get_str();
  if (cfg.format == "json")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << "congruent: " << (lc.congruent ? "yes" : "NO") << "  (level " << lc.level
              << ", u = " << lc.unit << ")\n";
  return lc.congruent ? 0 : 1;
}

int run_msym_cache(const RunConfig& cfg, long N) {
  auto S = cached_build_space(Int(N), cfg.cache_dir);
  std::cout << "level " << N << ": " << S->n_gens << " symbols, dim " << S->dim
            << ", cuspidal " << S->cuspidal_dim << ", cusps " << S->n_cusps << "\n";
  return 0;
}

int run_catalog(const RunConfig& cfg, const std::string& file) {
  Catalog cat = file.empty() ? cfg.catalog() : Catalog::load(file);
  for (auto& label : cat.labels()) {
    const CatalogEntry& e = cat.get(label);
    std::cout << label << " " << e.curve.str();
    if (e.conductor > 0) std::cout << " N=" << e.conductor;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iwa: Iwasawa invariants of elliptic curves at good-ordinary and multiplicative primes"};
  app.require_subcommand(1);

  RunConfig cfg;

  std::string curve_spec, curve1, curve2, char_spec, mode = "pair", catalog_file;
  bool analytic = false;
  long lambda1 = 0, c_param = 0, msym_n = 0, screen_bound = 0;
  std::string n1_str = "0", n2_str = "0", conductor_str = "0";

  auto* inv = app.add_subcommand("invariants", "per-prime sigma table and analytic lambda/mu");
  add_common(inv, cfg);
  inv->add_option("--curve", curve_spec, "curve label or a1,a2,a3,a4,a6")->required();
  inv->add_flag("--analytic", analytic, "compute the Mazur-Tate side too");
  inv->add_option("--conductor", conductor_str, "conductor (for the analytic side)");

  auto* tr = app.add_subcommand("transfer", "lambda transfer across a congruent pair");
  add_common(tr, cfg);
  tr->add_option("--curve1", curve1)->required();
  tr->add_option("--curve2", curve2)->required();
  tr->add_option("--lambda1", lambda1, "lambda of curve 1 (default 0)");
  tr->add_option("--n1", n1_str, "conductor of curve 1");
  tr->add_option("--n2", n2_str, "conductor of curve 2");
  tr->add_option("--screen-bound", screen_bound, "a_l screening bound (default: Sturm)");
  tr->add_flag("--analytic", analytic, "cross-check the Sigma0 invariant analytically");

  auto* tw = app.add_subcommand("twist-family", "conductor-11 quadratic twist pipeline");
  add_common(tw, cfg);
  tw->add_option("--c", c_param, "twist parameter: E = J_{-c}")->required();
  tw->add_flag("--analytic", analytic, "compute lambda_anal and the Eisenstein congruence");

  auto* kl = app.add_subcommand("kl", "classical lambda of a Dirichlet character");
  add_common(kl, cfg);
  kl->add_option("--char", char_spec, "kronecker:D, teichmuller^j, products with *")->required();

  auto* cg = app.add_subcommand("congruence", "finite-level congruence checks");
  add_common(cg, cfg);
  cg->add_option("--mode", mode, "pair | eisenstein");
  cg->add_option("--curve1", curve1);
  cg->add_option("--curve2", curve2);
  cg->add_option("--n1", n1_str);
  cg->add_option("--n2", n2_str);
  cg->add_option("--c", c_param, "twist parameter for eisenstein mode");

  auto* ms = app.add_subcommand("msym-cache", "build and cache a symbol space");
  add_common(ms, cfg);
  ms->add_option("--n", msym_n, "level N")->required();

  auto* cl = app.add_subcommand("catalog", "list catalog entries");
  add_common(cl, cfg);
  cl->add_option("--file", catalog_file, "catalog file to parse");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 4;
    }
    cfg.validate();
    if (inv->parsed()) return run_invariants(cfg, curve_spec, analytic, parse_int(conductor_str));
    if (tr->parsed())
      return run_transfer(cfg, curve1, curve2, lambda1, parse_int(n1_str), parse_int(n2_str),
                          screen_bound, analytic);
    if (tw->parsed()) return run_twist_family(cfg, c_param, analytic);
    if (kl->parsed()) return run_kl(cfg, char_spec);
    if (cg->parsed())
      return run_congruence(cfg, mode, curve1, curve2, c_param, parse_int(n1_str),
                            parse_int(n2_str));
    if (ms->parsed()) return run_msym_cache(cfg, msym_n);
    if (cl->parsed()) return run_catalog(cfg, catalog_file);
  } catch (const hypothesis_error& e) {
    std::cerr << "refused (hypothesis): " << e.what() << "\n";
    return 2;
  } catch (const precision_error& e) {
    std::cerr << "uncertified (precision): " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
