#pragma once

// Theorem engines: congruence screening (a_l mod p up to a Sturm-style
// bound), irreducibility screening via mod-q factor patterns of the
// p-division polynomial, the lambda-transfer bookkeeping for congruent
// pairs, the reducible-case reduction to classical invariants, and the
// algebraic/analytic equivalence audit.

#include "iwa/kubota_leopoldt.hpp"
#include "iwa/local_factors.hpp"
#include "iwa/mazur_tate.hpp"

namespace iwa {

enum class CongruenceStatus { verified_to_sturm, heuristic, failed };

struct CongruenceEvidence {
  Int p;
  long checked_bound = 0;
  long sturm = 0;
  CongruenceStatus status = CongruenceStatus::failed;
  std::vector<std::array<Int, 3>> residues;  // (l, a_l(E1) mod p, a_l(E2) mod p)
  Int failing_ell = 0;                       // set when status == failed
  bool ap_congruent = false;
};

class ALCache;  // cache.hpp
CongruenceEvidence screen_congruence(const CurveQ& E1, const Int& N1, const CurveQ& E2,
                                     const Int& N2, const Int& p, long bound = 0,
                                     ALCache* cache1 = nullptr, ALCache* cache2 = nullptr);

enum class IrreducibleVerdict { likely_irreducible, reducible, undecided };

struct IrreducibleScreen {
  IrreducibleVerdict verdict = IrreducibleVerdict::undecided;
  // witnesses: auxiliary prime whose factor pattern forbids a p-isogeny
  Int witness_prime = 0;
  // for reducible: the tame pair with phi * psi = omega
  std::optional<DirichletCharacter> phi, psi;
  std::string note;
};

// Factor the p-division polynomial modulo several auxiliary primes; a
// single prime whose factor degrees admit no subset of total (p-1)/2 rules
// out a rational p-isogeny.  Reducible candidates must pass the trace
// identity a_l = phi(l) + psi(l) mod p on sampled good primes.
IrreducibleScreen screen_irreducible(const CurveQ& E, const Int& p);

struct LedgerEntry {
  std::string hypothesis;
  std::string status;  // "verified" | "asserted"
  std::string evidence;
};

struct TransferReport {
  std::string mode;  // "irreducible_pair" | "reducible_single"
  std::string curve1, curve2;
  Int p;
  std::vector<Int> sigma0;
  std::vector<SigmaRecord> sigma_table_1, sigma_table_2;
  std::vector<TLRecord> t_table;
  long lambda_in = 0;
  long lambda_out = 0;
  long mu_out = 0;
  long lambda_sigma0 = 0;  // the shared non-primitive invariant
  long lambda_psi = -1;    // reducible mode
  long epsilon = -1;       // reducible mode: sum s_l t_l
  std::vector<LedgerEntry> ledger;
  bool analytic_checked = false;
  long lambda_anal = -1;
  bool period_warning = false;  // outside the irreducible / odd-unramified hypotheses
  std::string to_json() const;
  std::string render_text() const;
};

struct TransferOptions {
  bool assert_irreducible = false;
  bool assert_mu_zero = false;
  long screen_bound = 0;   // 0: up to the Sturm bound
  std::string cache_dir;   // when set, a_l values go through the disk cache
};

// lambda_{E2} = lambda_{E1} + sum_{l in Sigma0} (sigma_{E1}^(l) - sigma_{E2}^(l));
// refuses with the missing-hypothesis list unless screens pass or the
// corresponding assertion flags are set.
TransferReport transfer_lambda(const CurveQ& E1, const Int& N1, long lambda1,
                               const CurveQ& E2, const Int& N2, const Int& p,
                               std::vector<Int> sigma0, const Precision& prec,
                               const TransferOptions& opt = {});

// Reducible case: lambda_E = 2 lambda_psi + sum s_l t_l(E); psi odd and
// unramified at p, phi = omega psi^{-1} even and ramified at p, and p in
// {3, 5, 7, 13, 37}.
TransferReport reducible_lambda(const CurveQ& E, const DirichletCharacter& phi,
                                const DirichletCharacter& psi, const Int& p,
                                std::vector<Int> sigma0, const Precision& prec,
                                long kl_max_level = 3);

// Compares the report's Sigma0-corrected algebraic lambda/mu against an
// analytic result; a mismatch is reported, never auto-corrected.
bool equivalence_audit(TransferReport& report, const AnalyticResult& analytic);

}  // namespace iwa
