#include <gtest/gtest.h>

#include <set>

#include "ecumene/oracle.hpp"

using namespace ecumene;

namespace {

Formula nj(const char* s) { return parse_formula(s, SystemId::NJ); }

Sequent seq(SystemId d, std::initializer_list<const char*> ctx, const char* goal) {
  Sequent s;
  for (const char* c : ctx) s.context.push_back(parse_formula(c, d));
  s.goal = parse_formula(goal, d);
  return s;
}

// Finite Kripke models with at most three worlds, searched exhaustively. A
// model found here refutes intuitionistic provability independently of G4ip.
struct Kripke {
  int n;
  std::vector<std::vector<bool>> le;            // le[u][v]: v is reachable from u
  std::map<std::string, std::vector<bool>> val;  // up-closed

  bool forces(int w, const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::Atom: return val.at(print_formula(f, SystemId::NJ))[std::size_t(w)];
      case FormulaKind::Bot: return false;
      case FormulaKind::And: return forces(w, f.left()) && forces(w, f.right());
      case FormulaKind::Or: return forces(w, f.left()) || forces(w, f.right());
      case FormulaKind::Imp:
        for (int v = 0; v < n; ++v)
          if (le[std::size_t(w)][std::size_t(v)] && forces(v, f.left()) && !forces(v, f.right())) return false;
        return true;
      default: throw std::logic_error("propositional only");
    }
  }
};

std::vector<std::vector<std::vector<bool>>> preorders(int n) {
  std::vector<std::vector<std::vector<bool>>> out;
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  for (unsigned bits = 0; bits < (1u << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> r(std::size_t(n), std::vector<bool>(std::size_t(n), false));
    for (int u = 0; u < n; ++u) r[std::size_t(u)][std::size_t(u)] = true;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((bits >> i) & 1u) r[std::size_t(pairs[i].first)][std::size_t(pairs[i].second)] = true;
    bool transitive = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (r[std::size_t(a)][std::size_t(b)] && r[std::size_t(b)][std::size_t(c)] && !r[std::size_t(a)][std::size_t(c)])
            transitive = false;
    if (transitive) out.push_back(r);
  }
  return out;
}

void atoms_of(const Formula& f, std::set<std::string>& out) {
  if (f.is(FormulaKind::Atom)) out.insert(print_formula(f, SystemId::NJ));
  if (f.is_binary()) {
    atoms_of(f.left(), out);
    atoms_of(f.right(), out);
  }
}

bool kripke_countermodel(const Formula& goal) {
  std::set<std::string> atoms;
  atoms_of(goal, atoms);
  std::vector<std::string> names(atoms.begin(), atoms.end());
  for (int n = 1; n <= 3; ++n)
    for (const auto& le : preorders(n)) {
      std::vector<std::vector<bool>> upsets;
      for (unsigned s = 0; s < (1u << n); ++s) {
        std::vector<bool> set(static_cast<std::size_t>(n), false);
        for (int w = 0; w < n; ++w) set[std::size_t(w)] = (s >> w) & 1u;
        bool up = true;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            if (set[std::size_t(u)] && le[std::size_t(u)][std::size_t(v)] && !set[std::size_t(v)]) up = false;
        if (up) upsets.push_back(set);
      }
      std::vector<std::size_t> pick(names.size(), 0);
      for (;;) {
        Kripke k{n, le, {}};
        for (std::size_t i = 0; i < names.size(); ++i) k.val[names[i]] = upsets[pick[i]];
        for (int w = 0; w < n; ++w)
          if (!k.forces(w, goal)) return true;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == upsets.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  return false;
}

std::size_t catalan(int n) {
  std::size_t c = 1;
  for (int i = 0; i < n; ++i) c = c * std::size_t(2 * (2 * i + 1)) / std::size_t(i + 2);
  return c;
}

}  // namespace

TEST(Cpl, Examples) {
  EXPECT_TRUE(cpl_valid(seq(SystemId::NJ, {}, "p \\/ ~p")).provable);
  Verdict v = cpl_valid(seq(SystemId::NJ, {}, "p"));
  EXPECT_FALSE(v.provable);
  ASSERT_TRUE(v.countermodel);
  EXPECT_FALSE(v.countermodel->at("p"));
  EXPECT_TRUE(cpl_valid(seq(SystemId::NJ, {"p -> q", "p"}, "q")).provable);
}

TEST(Cpl, TooManyAtoms) {
  Formula big = nj("p");
  for (int i = 0; i < 17; ++i) big = conj(Flavor::Neutral, big, atom("a" + std::to_string(i)));
  Sequent s{{}, big};
  try {
    cpl_valid(s);
    FAIL() << "expected an error";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::TooManyAtoms);
  }
}

TEST(Ipl, Examples) {
  EXPECT_FALSE(ipl_provable(seq(SystemId::NJ, {}, "p \\/ ~p")).provable);
  EXPECT_TRUE(kripke_countermodel(nj("p \\/ ~p")));
  EXPECT_TRUE(ipl_provable(seq(SystemId::NJ, {}, "~~(p \\/ ~p)")).provable);
  EXPECT_TRUE(ipl_provable(seq(SystemId::NJ, {}, "~(p /\\ ~p)")).provable);
  EXPECT_FALSE(ipl_provable(seq(SystemId::NJ, {}, "~~p -> p")).provable);
  EXPECT_TRUE(ipl_provable(seq(SystemId::NJ, {}, "((p -> q) -> p) -> ~~p")).provable);
  EXPECT_FALSE(ipl_provable(seq(SystemId::NJ, {}, "((p -> q) -> p) -> p")).provable);
  EXPECT_TRUE(ipl_provable(seq(SystemId::NJ, {"p \\/ q", "p -> r", "q -> r"}, "r")).provable);
  EXPECT_THROW(ipl_provable(seq(SystemId::NJ, {}, "exists x. P(x)")), OracleError);
}

TEST(Ipl, AgreesWithKripkeAndTruthTables) {
  int refuted = 0;
  enumerate_formulas({"p", "q"}, 3, SystemId::NJ, [&](const Formula& f) {
    bool ipl = ipl_provable(Sequent{{}, f}).provable;
    bool cpl = cpl_valid(Sequent{{}, f}).provable;
    if (ipl) EXPECT_TRUE(cpl) << print_formula(f, SystemId::NJ);
    bool km = kripke_countermodel(f);
    EXPECT_NE(ipl, km) << print_formula(f, SystemId::NJ);
    refuted += km ? 1 : 0;
  });
  EXPECT_GT(refuted, 0);
}

TEST(Eci, Examples) {
  const SystemId E = SystemId::ECI;
  for (auto s : {seq(E, {"(p)^c"}, "~~p"), seq(E, {"~~p"}, "(p)^c"), seq(E, {"(bot)^c"}, "bot"),
                 seq(E, {"bot"}, "(bot)^c")}) {
    Verdict v = eci_provable(s);
    EXPECT_TRUE(v.provable);
    EXPECT_EQ(v.note, "(via tECI reduction)");
  }
  EXPECT_FALSE(eci_provable(seq(E, {"(p)^c"}, "p")).provable);
  EXPECT_THROW(eci_provable(seq(E, {}, "(forall x. P(x))^c")), OracleError);
}

TEST(Nek, Examples) {
  const SystemId K = SystemId::NEK;
  EXPECT_FALSE(nek_provable(seq(K, {"p /\\c p"}, "p")).provable);
  EXPECT_TRUE(nek_provable(seq(K, {"p /\\c p"}, "~~p")).provable);
  EXPECT_FALSE(nek_provable(seq(K, {"p", "p ->c q"}, "q")).provable);
  EXPECT_TRUE(nek_provable(seq(K, {"p", "p ->c q"}, "q_c")).provable);
  EXPECT_TRUE(nek_provable(seq(K, {}, "p \\/c ~p")).provable);
  EXPECT_FALSE(nek_provable(seq(K, {}, "p \\/i ~p")).provable);
  try {
    nek_provable(seq(K, {}, "foralli x. P(x)"));
    FAIL() << "expected an error";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::UniversalQuantifier);
  }
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_formulas({"p"}, 0, SystemId::NJ).size(), 2u);
  auto one = enumerate_formulas({"p"}, 1, SystemId::NJ);
  std::size_t exactly_one = 0;
  for (const auto& f : one) exactly_one += connective_count(f) == 1 ? 1 : 0;
  EXPECT_EQ(exactly_one, 12u);
  EXPECT_EQ(one.size(), 14u);
  // binary trees with n internal nodes: Catalan(n) shapes, 3 connectives, 3 leaves
  std::size_t closed = 0;
  for (int n = 0; n <= 2; ++n) {
    std::size_t c = catalan(n);
    for (int i = 0; i < n; ++i) c *= 3;
    for (int i = 0; i <= n; ++i) c *= 3;
    closed += c;
  }
  EXPECT_EQ(enumerate_formulas({"p", "q"}, 2, SystemId::NJ).size(), closed);
}

TEST(Enumerate, DuplicateFreeAndWellFormed) {
  for (SystemId d : {SystemId::NJ, SystemId::ECI, SystemId::NE, SystemId::NEK}) {
    std::set<std::string> seen;
    std::size_t n = 0;
    enumerate_formulas({"p", "q"}, 2, d, [&](const Formula& f) {
      ++n;
      EXPECT_TRUE(is_well_formed(d, f)) << print_formula(f, d);
      seen.insert(print_formula(f, d));
    });
    EXPECT_EQ(seen.size(), n) << system_name(d);
  }
  EXPECT_THROW(enumerate_formulas({"p"}, 9, SystemId::NJ), OracleError);
  EXPECT_THROW(enumerate_formulas({}, 1, SystemId::NJ), OracleError);
}

TEST(Enumerate, DeterministicOrder) {
  auto a = enumerate_formulas({"p", "q"}, 2, SystemId::ECI);
  auto b = enumerate_formulas({"p", "q"}, 2, SystemId::ECI);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(alpha_equal(a[i], b[i]));
}
