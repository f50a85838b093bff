#include <gtest/gtest.h>

#include "ecumene/proof_io.hpp"
#include "ecumene/proof_translate.hpp"
#include "support/random_proofs.hpp"

using namespace ecumene;

namespace {

Judgment map_judgment(const Judgment& j, Formula (*f)(const Formula&)) {
  Judgment out;
  for (const auto& g : j.context) out.context.push_back(f(g));
  out.conclusion = f(j.conclusion);
  return out;
}

::testing::AssertionResult carries(SystemId from, const Proof& p, SystemId to, const Proof& q,
                                   Formula (*f)(const Formula&)) {
  CheckReport src = check(from, p);
  if (!src) return ::testing::AssertionFailure() << "source: " << src.message;
  CheckReport dst = check(to, q);
  if (!dst)
    return ::testing::AssertionFailure() << dst.path << ": " << dst.message << "\nsource:\n"
                                         << write_proof(p, from) << "\nresult:\n" << write_proof(q, to);
  Judgment want = map_judgment(src.judgment, f);
  if (!dst.judgment.same_as(want))
    return ::testing::AssertionFailure() << "got " << print_judgment(dst.judgment, to) << ", wanted "
                                         << print_judgment(want, to);
  return ::testing::AssertionSuccess();
}

Formula tn(const Formula& f) { return t_nek(f); }
Formula un(const Formula& f) { return untranslate_nek(f); }

void collect_rules(const Proof& p, std::set<RuleId>& out) {
  if (!p.is_hyp()) out.insert(p.rule);
  for (const auto& q : p.premises) collect_rules(q, out);
}

bool has_rule(const Proof& p, RuleId r) {
  if (!p.is_hyp() && p.rule == r) return true;
  for (const auto& q : p.premises)
    if (has_rule(q, r)) return true;
  return false;
}

}  // namespace

TEST(EciToNek, LabelledConjunctionIntro) {
  const SystemId E = SystemId::ECI;
  Proof p = read_proof(R"P(
    (i_c "(p /\ q)^c" :d 1 (imp_elim "bot" (hyp 1 "~(p /\ q)") (hyp 2 "p /\ q"))))P", E);
  Proof q = eci_to_nek(p);
  EXPECT_TRUE(carries(E, p, SystemId::NEK, q, tn));
  EXPECT_EQ(q.rule, RuleId::and_c_intro);
  EXPECT_EQ(print_formula(q.conclusion, SystemId::NEK), "p /\\c q");
}

TEST(EciToNek, LabelledImplicationElim) {
  const SystemId E = SystemId::ECI;
  Proof p = read_proof(R"P((e_c "bot" (hyp 1 "(p -> q)^c") (hyp 2 "~(p -> q)")))P", E);
  Proof q = eci_to_nek(p);
  EXPECT_TRUE(carries(E, p, SystemId::NEK, q, tn));
  EXPECT_TRUE(has_rule(q, RuleId::imp_c_elim));
}

TEST(EciToNek, PureIntuitionisticProofKeepsShape) {
  const SystemId E = SystemId::ECI;
  Proof p = read_proof(R"P(
    (imp_intro "p /\ q -> q \/ r" :d 1 (or_intro_1 "q \/ r" (and_elim_2 "q" (hyp 1 "p /\ q")))))P", E);
  Proof q = eci_to_nek(p);
  EXPECT_TRUE(carries(E, p, SystemId::NEK, q, tn));
  EXPECT_EQ(node_count(q), node_count(p));
  EXPECT_EQ(q.rule, RuleId::imp_i_intro);
}

TEST(EciToNek, EveryLabelShape) {
  const SystemId E = SystemId::ECI;
  for (const char* a : {"p", "bot", "p \\/ q", "p -> q", "exists x. P(x)", "p /\\ q", "(p)^c", "~p"}) {
    Formula f = parse_formula(a, E);
    for (const Proof& p : {eci_dn_to_label(f), eci_label_to_dn(f), eci_glivenko2(f)}) {
      EXPECT_TRUE(carries(E, p, SystemId::NEK, eci_to_nek(p), tn)) << a;
    }
  }
}

TEST(EciToNek, Rejections) {
  const SystemId E = SystemId::ECI;
  EXPECT_THROW(eci_to_nek(eci_dn_to_label(parse_formula("forall x. P(x)", E))), TransformError);
  EXPECT_THROW(eci_to_nek(read_proof(R"P((hyp 1 "p_c"))P", SystemId::NEK)), TransformError);
}

TEST(NekToEci, ConjunctionCases) {
  const SystemId K = SystemId::NEK;
  Proof intro = read_proof(R"P(
    (and_c_intro "p /\c q" :d 1 2
      (imp_i_elim "bot" (hyp 1 "~p") (hyp 3 "p"))
      (imp_i_elim "bot" (hyp 2 "~q") (hyp 4 "q"))))P", K);
  EXPECT_TRUE(carries(K, intro, SystemId::ECI, nek_to_eci(intro), un));
  // ~p unused in the first refutation: the second one's assumptions must survive
  Proof vacuous = read_proof(R"P(
    (and_c_intro "p /\c q" :d 1 2
      (imp_i_elim "bot" (hyp 3 "~r") (hyp 4 "r"))
      (hyp 5 "bot")))P", K);
  EXPECT_TRUE(carries(K, vacuous, SystemId::ECI, nek_to_eci(vacuous), un));
  Proof elim = read_proof(R"P((and_c_elim_1 "bot" (hyp 1 "p /\c q") (hyp 2 "~p")))P", K);
  EXPECT_TRUE(carries(K, elim, SystemId::ECI, nek_to_eci(elim), un));
}

TEST(NekToEci, OtherClassicalRules) {
  const SystemId K = SystemId::NEK;
  for (const char* text : {
           R"P((or_c_intro "p \/c q" :d 1 2 (imp_i_elim "bot" (hyp 1 "~p") (hyp 3 "p"))))P",
           R"P((imp_c_intro "p ->c q" :d 1 2 (imp_i_elim "bot" (hyp 2 "~q") (imp_i_elim "q" (hyp 3 "p ->i q") (hyp 1 "p")))))P",
           R"P((ex_c_intro "existsc x. P(x)" :d 1
                 (imp_i_elim "bot" (all_elim "~P(a)" :wit "a" (hyp 1 "foralli x. ~P(x)")) (hyp 2 "P(a)"))))P",
           R"P((atom_c_intro "p_c" :d 1 (imp_i_elim "bot" (hyp 1 "~p") (hyp 2 "p"))))P",
           R"P((or_c_elim "bot" (hyp 1 "p \/c q") (hyp 2 "~p") (hyp 3 "~q")))P",
           R"P((imp_c_elim "bot" (hyp 1 "p ->c q") (hyp 2 "p") (hyp 3 "~q")))P",
           R"P((ex_c_elim "bot" (hyp 1 "existsc x. P(x)") (hyp 2 "foralli x. ~P(x)")))P",
           R"P((atom_c_elim "bot" (hyp 1 "p_c") (hyp 2 "~p")))P",
       }) {
    Proof p = read_proof(text, K);
    EXPECT_TRUE(carries(K, p, SystemId::ECI, nek_to_eci(p), un)) << text;
  }
  Proof fc = read_proof(R"P((all_c_elim "~~P(a)" :wit "a" (hyp 1 "forallc x. P(x)")))P", K);
  EXPECT_THROW(nek_to_eci(fc), TransformError);
}

TEST(TranslateRandom, EciProofs) {
  testgen::ProofGen gen(70, SystemId::ECI);
  std::set<RuleId> seen;
  for (int i = 0; i < 150; ++i) {
    Proof p = gen.proof(12);
    collect_rules(p, seen);
    CheckReport rep = check(SystemId::ECI, p);
    ASSERT_TRUE(rep) << rep.path << ": " << rep.message << "\n" << write_proof(p, SystemId::ECI);
    Proof q = eci_to_nek(p);
    ASSERT_TRUE(carries(SystemId::ECI, p, SystemId::NEK, q, tn));
    Proof back = nek_to_eci(q);
    CheckReport rb = check(SystemId::ECI, back);
    ASSERT_TRUE(rb) << rb.message;
    EXPECT_TRUE(rb.judgment.same_as(rep.judgment));
  }
  for (RuleId r : {RuleId::i_c, RuleId::e_c, RuleId::ex_elim, RuleId::or_elim, RuleId::imp_intro, RuleId::ex_intro})
    EXPECT_TRUE(seen.count(r)) << rule_name(r);
}

TEST(TranslateRandom, NekProofs) {
  testgen::ProofGen gen(71, SystemId::NEK);
  std::set<RuleId> seen;
  for (int i = 0; i < 150; ++i) {
    Proof p = gen.proof(12);
    collect_rules(p, seen);
    CheckReport rep = check(SystemId::NEK, p);
    ASSERT_TRUE(rep) << rep.path << ": " << rep.message << "\n" << write_proof(p, SystemId::NEK);
    ASSERT_TRUE(carries(SystemId::NEK, p, SystemId::ECI, nek_to_eci(p), un));
  }
  for (RuleId r : {RuleId::or_c_intro, RuleId::or_c_elim, RuleId::imp_c_intro, RuleId::imp_c_elim, RuleId::ex_c_intro,
                   RuleId::ex_c_elim, RuleId::atom_c_intro, RuleId::atom_c_elim, RuleId::and_c_intro,
                   RuleId::and_c_elim_1})
    EXPECT_TRUE(seen.count(r)) << rule_name(r);
}

TEST(TranslateRandom, NekRoundTripWithoutClassicalExistentialRules) {
  testgen::ProofGen gen(72, SystemId::NEK);
  gen.classical_exists = false;
  for (int i = 0; i < 150; ++i) {
    Proof p = gen.proof(12);
    CheckReport rep = check(SystemId::NEK, p);
    ASSERT_TRUE(rep) << rep.message;
    Proof e = nek_to_eci(p);
    ASSERT_FALSE(proof_contains_forall(e));
    CheckReport rb = check(SystemId::NEK, eci_to_nek(e));
    ASSERT_TRUE(rb) << rb.message;
    EXPECT_TRUE(rb.judgment.same_as(rep.judgment));
  }
}
