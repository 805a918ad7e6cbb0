#include <doctest.h>

#include "iwa/transfer.hpp"

using namespace iwa;

namespace {
CurveQ E1() { return CurveQ(0, 0, 0, 1, -10, "e1"); }
CurveQ E2() { return CurveQ(0, 0, 0, -584, 5444, "e2"); }
CurveQ J11() { return CurveQ(0, -1, 1, -10, -20, "11a1"); }
const Precision PREC{12, 32};
const Int P5(5);
}  // namespace

TEST_CASE("screen_congruence on the worked pair") {
  CongruenceEvidence ev = screen_congruence(E1(), 52, E2(), 364, P5, 200);
  CHECK(ev.status == CongruenceStatus::heuristic);  // 200 < Sturm
  CHECK(ev.ap_congruent);
  CHECK(ev.failing_ell == 0);
  for (auto& r : ev.residues) CHECK(r[1] == r[2]);
  CHECK(ev.sturm == 672);

  // trivially verified on a self pair
  CongruenceEvidence self = screen_congruence(E1(), 52, E1(), 52, P5, 100);
  CHECK(self.failing_ell == 0);

  // a generic twist is not congruent
  CurveQ tw = quadratic_twist(E1(), -3);
  CongruenceEvidence bad = screen_congruence(E1(), 52, tw, 52 * 9, P5, 200);
  CHECK(bad.status == CongruenceStatus::failed);
}

TEST_CASE("screen_irreducible") {
  IrreducibleScreen s1 = screen_irreducible(E1(), P5);
  CHECK(s1.verdict == IrreducibleVerdict::likely_irreducible);
  IrreducibleScreen s2 = screen_irreducible(E2(), P5);
  CHECK(s2.verdict == IrreducibleVerdict::likely_irreducible);

  // the conductor-11 curve is reducible with the trivial tame pattern
  IrreducibleScreen sj = screen_irreducible(J11(), P5);
  CHECK(sj.verdict == IrreducibleVerdict::reducible);
  REQUIRE(sj.psi.has_value());
  CHECK(sj.psi->is_trivial());

  // twists carry the twisted pattern a_l = psi(l)(1 + l)
  CurveQ tw = quadratic_twist(J11(), -7);
  IrreducibleScreen st = screen_irreducible(tw, P5);
  CHECK(st.verdict == IrreducibleVerdict::reducible);
  REQUIRE(st.psi.has_value());
  CHECK(st.psi->modulus() == 7);
  CHECK(st.psi->odd());
}

TEST_CASE("transfer on the worked pair gives lambda = 5") {
  TransferOptions opt;
  opt.screen_bound = 300;  // below Sturm: ledger marks the congruence asserted
  TransferReport rep = transfer_lambda(E1(), 52, 0, E2(), 364, P5, {}, PREC, opt);
  CHECK(rep.sigma0 == std::vector<Int>{Int(2), Int(7), Int(13)});
  CHECK(rep.sigma_table_1[0].sigma == 0);
  CHECK(rep.sigma_table_1[1].sigma == 5);
  CHECK(rep.sigma_table_1[2].sigma == 0);
  CHECK(rep.sigma_table_2[0].sigma == 0);
  CHECK(rep.sigma_table_2[1].sigma == 0);
  CHECK(rep.sigma_table_2[2].sigma == 0);
  CHECK(rep.lambda_out == 5);
  CHECK(rep.lambda_sigma0 == 5);
  CHECK(rep.mu_out == 0);

  // self pair: identity
  TransferReport self = transfer_lambda(E1(), 52, 0, E1(), 52, P5, {}, PREC, opt);
  CHECK(self.lambda_out == 0);

  // symmetric run: inverse correction
  TransferReport back = transfer_lambda(E2(), 364, 5, E1(), 52, P5, {}, PREC, opt);
  CHECK(back.lambda_out == 0);
  CHECK(back.lambda_sigma0 == 5);

  // JSON has the schema marker
  CHECK(rep.to_json().find("\"schema_version\"") != std::string::npos);
}

TEST_CASE("transfer refuses a non-congruent pair") {
  CurveQ tw = quadratic_twist(E1(), -3);
  CHECK_THROWS_AS(transfer_lambda(E1(), 52, 0, tw, 468, P5, {}, PREC, {}),
                  hypothesis_error);
}

TEST_CASE("reducible case: conductor-11 twists") {
  DirichletCharacter omega = DirichletCharacter::teichmuller_power(P5, 1);

  // 11 splits in Q(sqrt(-7)): lambda = 2*0 + 1
  DirichletCharacter psi7 = DirichletCharacter::imaginary_quadratic(7);
  CurveQ tw7 = quadratic_twist(J11(), -7);
  TransferReport r7 = reducible_lambda(tw7, omega * psi7.inverse(), psi7, P5,
                                       {Int(7), Int(11)}, PREC);
  CHECK(r7.lambda_psi == 0);
  CHECK(r7.epsilon == 1);
  CHECK(r7.lambda_out == 1);
  CHECK(r7.mu_out == 0);

  // 11 inert in Q(sqrt(-3)): lambda = 0
  DirichletCharacter psi3 = DirichletCharacter::imaginary_quadratic(3);
  CurveQ tw3 = quadratic_twist(J11(), -3);
  TransferReport r3 = reducible_lambda(tw3, omega * psi3.inverse(), psi3, P5,
                                       {Int(3), Int(11)}, PREC);
  CHECK(r3.lambda_psi == 0);
  CHECK(r3.epsilon == 0);
  CHECK(r3.lambda_out == 0);

  // parity / ramification violations refused
  CHECK_THROWS_AS(reducible_lambda(tw7, psi7, omega * psi7.inverse(), P5,
                                   {Int(7), Int(11)}, PREC),
                  hypothesis_error);
  // p outside the guard list refused
  DirichletCharacter omega11 = DirichletCharacter::teichmuller_power(Int(11), 1);
  CHECK_THROWS_AS(reducible_lambda(tw7, omega11 * psi7.inverse(), psi7, Int(11),
                                   {Int(7), Int(11)}, PREC),
                  hypothesis_error);
}

TEST_CASE("equivalence audit against the analytic side") {
  TransferOptions opt;
  opt.screen_bound = 300;
  TransferReport rep = transfer_lambda(E1(), 52, 0, E2(), 364, P5, {}, PREC, opt);
  // the Sigma0-corrected invariant of E1 itself is 5: audit with E1 analytic
  AnalyticResult ar = analytic_invariants(E1(), 52, P5, rep.sigma0, 2, PREC);
  CHECK(equivalence_audit(rep, ar));
  CHECK(rep.analytic_checked);
  CHECK(rep.lambda_anal == 5);

  // corrupted sigma table -> mismatch flagged, never auto-corrected
  TransferReport bad = rep;
  bad.lambda_sigma0 += 1;
  CHECK(!equivalence_audit(bad, ar));
}

TEST_CASE("transfer is transitive along a chain") {
  TransferOptions opt;
  opt.screen_bound = 300;
  TransferReport ab = transfer_lambda(E1(), 52, 0, E2(), 364, P5, {}, PREC, opt);
  TransferReport bc = transfer_lambda(E2(), 364, ab.lambda_out, E1(), 52, P5, {}, PREC, opt);
  TransferReport ac = transfer_lambda(E1(), 52, 0, E1(), 52, P5, {}, PREC, opt);
  CHECK(bc.lambda_out == ac.lambda_out);
}

TEST_CASE("irreducibility screen at larger p") {
  // the division-polynomial machinery at p = 7 (degree 24)
  IrreducibleScreen s = screen_irreducible(J11(), Int(7));
  CHECK(s.verdict == IrreducibleVerdict::likely_irreducible);
  IrreducibleScreen t = screen_irreducible(E1(), Int(7));
  CHECK(t.verdict != IrreducibleVerdict::reducible);
}
