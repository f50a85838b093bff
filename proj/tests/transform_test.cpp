#include <gtest/gtest.h>

#include "ecumene/proof_io.hpp"
#include "ecumene/transform.hpp"
#include "support/random_formulas.hpp"

using namespace ecumene;

namespace {

Formula F(const char* s, SystemId d) { return parse_formula(s, d); }

::testing::AssertionResult proves(SystemId s, const Proof& p, std::vector<Formula> ctx, const Formula& concl) {
  CheckReport rep = check(s, p);
  if (!rep) return ::testing::AssertionFailure() << rep.path << ": " << rep.message << "\n" << write_proof(p, s);
  Judgment want{std::move(ctx), concl};
  if (!rep.judgment.same_as(want))
    return ::testing::AssertionFailure() << "proved " << print_judgment(rep.judgment, s) << ", wanted "
                                         << print_judgment(want, s);
  return ::testing::AssertionSuccess();
}

Formula nn(SystemId s, const Formula& f) { return neg(negation_flavor(s), neg(negation_flavor(s), f)); }
Formula n(SystemId s, const Formula& f) { return neg(negation_flavor(s), f); }

}  // namespace

TEST(Glivenko1, DisplayedCases) {
  for (const char* c : {"p \\/c q", "p ->c q", "exists x. P(x)", "existsc x. (P(x) ->c q)", "p_c"}) {
    if (std::string(c) == "exists x. P(x)") continue;
    Formula f = F(c, SystemId::NE);
    EXPECT_TRUE(proves(SystemId::NE, glivenko1_internal(SystemId::NE, f), {f}, nn(SystemId::NE, star(f)))) << c;
  }
  Formula l1 = F("b /\\c c", SystemId::NEK);
  Proof and_c_dn = glivenko1_internal(SystemId::NEK, l1);
  EXPECT_TRUE(proves(SystemId::NEK, and_c_dn, {l1}, F("~~(b /\\i c)", SystemId::NEK)));
}

TEST(Glivenko1, Rejections) {
  EXPECT_THROW(glivenko1_internal(SystemId::NEK, F("forallc x. P(x)", SystemId::NEK)), TransformError);
  EXPECT_THROW(glivenko1_internal(SystemId::NE, F("p \\/i q", SystemId::NE)), TransformError);
  EXPECT_THROW(glivenko1_internal(SystemId::NE, F("p /\\ q", SystemId::NE)), TransformError);
  EXPECT_THROW(glivenko1_internal(SystemId::ECI, F("(p)^c", SystemId::ECI)), TransformError);
  EXPECT_THROW(star_embed(SystemId::NEK, F("p ->i q", SystemId::NEK)), TransformError);
}

TEST(StarEmbed, Examples) {
  Formula f = F("p \\/c q", SystemId::NE);
  EXPECT_TRUE(proves(SystemId::NE, star_embed(SystemId::NE, f), {star(f)}, f));
  Formula g = F("b /\\c c", SystemId::NEK);
  EXPECT_TRUE(proves(SystemId::NEK, star_embed(SystemId::NEK, g), {F("b /\\i c", SystemId::NEK)}, g));
  Formula h = F("p ->c q", SystemId::NE);
  EXPECT_TRUE(proves(SystemId::NE, star_embed(SystemId::NE, h), {F("p ->i q", SystemId::NE)}, h));
  Formula u = F("forallc x. P(x)", SystemId::NEK);
  EXPECT_TRUE(proves(SystemId::NEK, star_embed(SystemId::NEK, u), {F("foralli x. P(x)", SystemId::NEK)}, u));
}

TEST(Glivenko2, Examples) {
  Formula f = F("b /\\c c", SystemId::NEK);
  EXPECT_TRUE(proves(SystemId::NEK, glivenko2_internal(SystemId::NEK, f), {F("~(b /\\c c)", SystemId::NEK)},
                     F("~(b /\\i c)", SystemId::NEK)));
  Formula g = F("p \\/c q", SystemId::NE);
  EXPECT_TRUE(proves(SystemId::NE, glivenko2_internal(SystemId::NE, g), {F("~(p \\/c q)", SystemId::NE)},
                     F("~(p \\/i q)", SystemId::NE)));
  Formula u = F("forallc x. P(x)", SystemId::NEK);
  EXPECT_TRUE(proves(SystemId::NEK, glivenko2_internal(SystemId::NEK, u), {F("~forallc x. P(x)", SystemId::NEK)},
                     F("~foralli x. P(x)", SystemId::NEK)));
}

class InternalGlivenkoSweep : public ::testing::TestWithParam<std::tuple<SystemId, FormulaKind>> {};

TEST_P(InternalGlivenkoSweep, AllConstructionsCheck) {
  auto [s, k] = GetParam();
  testgen::FormulaGen gen(static_cast<unsigned>(100 + static_cast<int>(k) * 7 + static_cast<int>(s)));
  testgen::GenOptions o;
  o.dialect = s;
  o.max_connectives = 5;
  for (int i = 0; i < 200; ++i) {
    Formula c = gen.classical_root(o, k);
    ASSERT_TRUE(is_well_formed(s, c)) << print_formula(c, s);
    std::string shown = print_formula(c, s);
    if (k != FormulaKind::Forall)
      EXPECT_TRUE(proves(s, glivenko1_internal(s, c), {c}, nn(s, star(c)))) << shown;
    EXPECT_TRUE(proves(s, star_embed(s, c), {star(c)}, c)) << shown;
    EXPECT_TRUE(proves(s, glivenko2_internal(s, c), {n(s, c)}, n(s, star(c)))) << shown;
  }
}

INSTANTIATE_TEST_SUITE_P(
    Connectives, InternalGlivenkoSweep,
    ::testing::Values(std::make_tuple(SystemId::NE, FormulaKind::Or), std::make_tuple(SystemId::NE, FormulaKind::Imp),
                      std::make_tuple(SystemId::NE, FormulaKind::Exists), std::make_tuple(SystemId::NE, FormulaKind::Atom),
                      std::make_tuple(SystemId::NEK, FormulaKind::Or), std::make_tuple(SystemId::NEK, FormulaKind::Imp),
                      std::make_tuple(SystemId::NEK, FormulaKind::Exists),
                      std::make_tuple(SystemId::NEK, FormulaKind::And),
                      std::make_tuple(SystemId::NEK, FormulaKind::Atom),
                      std::make_tuple(SystemId::NEK, FormulaKind::Forall)));

TEST(Eci, LabelLemmas) {
  const SystemId E = SystemId::ECI;
  for (const char* a : {"p", "bot", "forall x. P(x)", "~q", "p /\\ q", "(p)^c", "(p -> q)^c", "p \\/ q"}) {
    Formula f = F(a, E);
    EXPECT_TRUE(proves(E, eci_label_to_dn(f), {label(f)}, nn(E, f))) << a;
    EXPECT_TRUE(proves(E, eci_dn_to_label(f), {nn(E, f)}, label(f))) << a;
    EXPECT_TRUE(proves(E, eci_glivenko2(f), {label(n(E, f))}, n(E, f))) << a;
    EXPECT_TRUE(proves(E, eci_neg_label_comm(f, true), {label(n(E, f))}, n(E, label(f)))) << a;
    EXPECT_TRUE(proves(E, eci_neg_label_comm(f, false), {n(E, label(f))}, label(n(E, f)))) << a;
  }
  EXPECT_THROW(eci_label_to_dn(F("p ->c q", SystemId::NE)), TransformError);
}

TEST(Eci, LabelToDoubleNegationIsTheDisplayedTree) {
  Proof p = eci_label_to_dn(F("p", SystemId::ECI));
  EXPECT_EQ(p.rule, RuleId::imp_intro);
  EXPECT_EQ(p.premises[0].rule, RuleId::e_c);
  EXPECT_EQ(node_count(p), 4u);
  Proof q = eci_dn_to_label(F("p", SystemId::ECI));
  EXPECT_EQ(q.rule, RuleId::i_c);
  EXPECT_EQ(node_count(q), 4u);
}

TEST(Eci, RandomLabelLemmas) {
  const SystemId E = SystemId::ECI;
  testgen::FormulaGen gen(21);
  testgen::GenOptions o;
  o.dialect = E;
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula(o);
    std::string shown = print_formula(f, E);
    EXPECT_TRUE(proves(E, eci_label_to_dn(f), {label(f)}, nn(E, f))) << shown;
    EXPECT_TRUE(proves(E, eci_dn_to_label(f), {nn(E, f)}, label(f))) << shown;
    EXPECT_TRUE(proves(E, eci_glivenko2(f), {label(n(E, f))}, n(E, f))) << shown;
  }
}

TEST(ForallClassical, NegationTrees) {
  const SystemId K = SystemId::NEK;
  Formula body = F("P(x) ->i Q(x)", K);
  EXPECT_TRUE(proves(K, neg_forallc_elim(body, "x", true), {F("~forallc x. (P(x) ->i Q(x))", K)},
                     F("existsc x. ~(P(x) ->i Q(x))", K)));
  EXPECT_TRUE(proves(K, neg_forallc_elim(body, "x", false), {F("~forallc x. (P(x) ->i Q(x))", K)},
                     F("~foralli x. (P(x) ->i Q(x))", K)));
  EXPECT_TRUE(proves(K, neg_forallc_elim(F("P(x)", K), "x", true), {F("~forallc x. P(x)", K)},
                     F("existsc x. ~P(x)", K)));
}

TEST(ForallClassical, DetourReduction) {
  const SystemId K = SystemId::NEK;
  // forall_i x P(x) |- forall_c x P(x), then instantiate at c()
  const char* text = R"P(
    (all_c_elim "~~P(c())" :wit "c()"
      (all_c_intro "forallc x. P(x)" :d 1
        (ex_i_elim "bot" :d 2 :eigen a
          (hyp 1 "existsi x. ~P(x)")
          (imp_i_elim "bot" (hyp 2 "~P(a)") (all_elim "P(a)" :wit "a" (hyp 3 "foralli x. P(x)"))))))
  )P";
  Proof lhs = read_proof(text, K);
  CheckReport before = check(K, lhs);
  ASSERT_TRUE(before) << before.message;
  Proof rhs = forallc_detour_reduce(lhs);
  CheckReport after = check(K, rhs);
  ASSERT_TRUE(after) << after.message << "\n" << write_proof(rhs, K);
  EXPECT_TRUE(after.judgment.same_as(before.judgment));
  EXPECT_LT(node_count(rhs), node_count(lhs));

  EXPECT_THROW(forallc_detour_reduce(read_proof(R"P((all_c_elim "~~P(a)" :wit "a" (hyp 1 "forallc x. P(x)")))P", K)),
               TransformError);
}

TEST(ForallClassical, DetourWithWitnessClashingEigenvariable) {
  const SystemId K = SystemId::NEK;
  // the witness is the same parameter the inner derivation used as eigenvariable
  const char* text = R"P(
    (all_c_elim "~~P(a)" :wit "a"
      (all_c_intro "forallc x. P(x)" :d 1
        (ex_i_elim "bot" :d 2 :eigen a
          (hyp 1 "existsi x. ~P(x)")
          (imp_i_elim "bot" (hyp 2 "~P(a)") (all_elim "P(a)" :wit "a" (hyp 3 "foralli x. P(x)"))))))
  )P";
  Proof lhs = read_proof(text, K);
  ASSERT_TRUE(check(K, lhs));
  Proof rhs = forallc_detour_reduce(lhs);
  CheckReport after = check(K, rhs);
  ASSERT_TRUE(after) << after.message;
  EXPECT_TRUE(after.judgment.same_as(check(K, lhs).judgment));
}

TEST(ForallcConstructions, ForallcFromRefutation) {
  const SystemId K = SystemId::NEK;
  Proof ref = read_proof(R"P((imp_i_elim "bot" (hyp 1 "~foralli x. P(x)") (hyp 2 "foralli x. P(x)")))P", K);
  Proof out = nek_forallc_from_refutation(F("P(x)", K), "x", ref);
  EXPECT_TRUE(proves(K, out, {F("foralli x. P(x)", K)}, F("forallc x. P(x)", K)));
  Proof not_bot = read_proof(R"P((hyp 1 "p"))P", K);
  EXPECT_THROW(nek_forallc_from_refutation(F("P(x)", K), "x", not_bot), TransformError);
}

TEST(ForallcConstructions, LabelInstantiate) {
  const SystemId E = SystemId::ECI;
  Proof p = eci_dn_to_label(F("forall x. P(x)", E));
  Proof out = eci_forall_label_instantiate(p, parse_term("a"));
  EXPECT_TRUE(proves(E, out, {F("~~forall x. P(x)", E)}, F("~~P(a)", E)));
  // the term mentions the bound name of an inner quantifier
  Proof q = eci_dn_to_label(F("forall x. exists y. R(x, y)", E));
  Proof out2 = eci_forall_label_instantiate(q, Term::var("y"));
  EXPECT_TRUE(check(E, out2)) << check(E, out2).message;
  EXPECT_THROW(eci_forall_label_instantiate(eci_dn_to_label(F("p", E)), parse_term("a")), TransformError);
}

TEST(ModusPonens, Classicalize) {
  const SystemId E = SystemId::ECI;
  Proof ref = read_proof(R"P((imp_elim "bot" (hyp 1 "~p") (hyp 2 "p")))P", E);
  Proof id = read_proof(R"P((imp_intro "p -> p" :d 1 (hyp 1 "p")))P", E);
  EXPECT_TRUE(proves(E, mp_classicalize(ref, id), {F("p", E)}, F("(p)^c", E)));

  // the schematic shape: Pi refutes ~A using other assumptions, Pi' proves A -> B from Gamma2
  Proof pi = read_proof(R"P((imp_elim "bot" (hyp 1 "~p") (and_elim_1 "p" (hyp 2 "p /\ r"))))P", E);
  Proof pi2 = read_proof(R"P((imp_intro "p -> q \/ s" :d 1 (or_intro_1 "q \/ s" (imp_elim "q" (hyp 2 "p -> q") (hyp 1 "p")))))P", E);
  EXPECT_TRUE(proves(E, mp_classicalize(pi, pi2), {F("p /\\ r", E), F("p -> q", E)}, F("(q \\/ s)^c", E)));

  EXPECT_THROW(mp_classicalize(ref, read_proof(R"P((hyp 1 "p"))P", E)), TransformError);
}
