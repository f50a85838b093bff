#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecumene/syntax.hpp"

namespace ecumene {

enum class RuleId {
  // neutral
  and_intro,
  and_elim_1,
  and_elim_2,
  bot_elim,
  all_intro,
  all_elim,
  // intuitionistic (NE, NE_K)
  imp_i_intro,
  imp_i_elim,
  or_i_intro_1,
  or_i_intro_2,
  or_i_elim,
  ex_i_intro,
  ex_i_elim,
  // classical (NE, NE_K)
  imp_c_intro,
  imp_c_elim,
  or_c_intro,
  or_c_elim,
  ex_c_intro,
  ex_c_elim,
  atom_c_intro,
  atom_c_elim,
  // NE_K only
  and_c_intro,
  and_c_elim_1,
  and_c_elim_2,
  all_c_intro,
  all_c_elim,
  // ECI only
  i_c,
  e_c,
  // NJ / NK / ECI single-flavor
  imp_intro,
  imp_elim,
  or_intro_1,
  or_intro_2,
  or_elim,
  ex_intro,
  ex_elim,
  // NK only
  raa,
};

inline constexpr std::array<std::string_view, 36> kRuleNames = {
    "and_intro",    "and_elim_1",   "and_elim_2",   "bot_elim",     "all_intro",   "all_elim",
    "imp_i_intro",  "imp_i_elim",   "or_i_intro_1", "or_i_intro_2", "or_i_elim",   "ex_i_intro",
    "ex_i_elim",    "imp_c_intro",  "imp_c_elim",   "or_c_intro",   "or_c_elim",   "ex_c_intro",
    "ex_c_elim",    "atom_c_intro", "atom_c_elim",  "and_c_intro",  "and_c_elim_1", "and_c_elim_2",
    "all_c_intro",  "all_c_elim",   "i_c",          "e_c",          "imp_intro",   "imp_elim",
    "or_intro_1",   "or_intro_2",   "or_elim",      "ex_intro",     "ex_elim",     "raa",
};

inline std::string_view rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

inline std::optional<RuleId> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleId>(i);
  return std::nullopt;
}

/// A natural-deduction tree. Hyp leaves carry a positive label; Infer nodes carry
/// one discharge label per slot of their rule (0 = vacuous).
struct Proof {
  enum class Kind { Hyp, Infer };

  Kind kind = Kind::Hyp;
  int label = 0;  // Hyp only
  RuleId rule = RuleId::bot_elim;
  Formula conclusion;  // the hypothesis formula for Hyp
  std::vector<int> discharges;
  std::optional<std::string> eigen;
  std::optional<Term> witness;
  std::vector<Proof> premises;

  bool is_hyp() const { return kind == Kind::Hyp; }
};

inline Proof hyp(int label, Formula f) {
  Proof p;
  p.kind = Proof::Kind::Hyp;
  p.label = label;
  p.conclusion = std::move(f);
  return p;
}

inline Proof infer(RuleId rule, Formula conclusion, std::vector<Proof> premises, std::vector<int> discharges = {},
                   std::optional<std::string> eigen = std::nullopt, std::optional<Term> witness = std::nullopt) {
  Proof p;
  p.kind = Proof::Kind::Infer;
  p.rule = rule;
  p.conclusion = std::move(conclusion);
  p.premises = std::move(premises);
  p.discharges = std::move(discharges);
  p.eigen = std::move(eigen);
  p.witness = std::move(witness);
  return p;
}

inline std::size_t node_count(const Proof& p) {
  std::size_t n = 1;
  for (const auto& q : p.premises) n += node_count(q);
  return n;
}

inline int max_label(const Proof& p) {
  int m = p.is_hyp() ? p.label : 0;
  for (int d : p.discharges) m = std::max(m, d);
  for (const auto& q : p.premises) m = std::max(m, max_label(q));
  return m;
}

/// Calls fn(formula) on every formula stored in the tree.
template <class Fn>
void for_each_formula(const Proof& p, Fn&& fn) {
  fn(p.conclusion);
  for (const auto& q : p.premises) for_each_formula(q, fn);
}

/// Every name used anywhere in the proof: formulas, eigenvariables, witnesses.
inline std::set<std::string> names_in(const Proof& p) {
  std::set<std::string> out;
  for_each_formula(p, [&](const Formula& f) { collect_names(f, out); });
  auto visit = [&](auto&& self, const Proof& q) -> void {
    if (q.eigen) out.insert(*q.eigen);
    if (q.witness) collect_names(*q.witness, out);
    for (const auto& r : q.premises) self(self, r);
  };
  visit(visit, p);
  return out;
}

inline bool proof_contains_forall(const Proof& p) {
  bool found = false;
  for_each_formula(p, [&](const Formula& f) { found = found || contains_forall(f); });
  return found;
}

}  // namespace ecumene
