#pragma once

// Declarative rule schemas for NE, NE_K, ECI, NJ and NK.
//
// A schema is a list of premise patterns, discharge slots (each attached to one
// premise), a conclusion pattern and a side condition. Patterns are formulas over
// metavariables; the kernel does nothing but match nodes against these.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecumene/proof.hpp"
#include "ecumene/syntax.hpp"
#include "ecumene/syntax_io.hpp"

namespace ecumene {

/// Flavor of a pattern connective, resolved against the system being checked.
enum class FlavorSpec {
  Shared,  // the shared /\ and forall: neutral in NE/NJ/NK/ECI, intuitionistic in NE_K
  Int,
  Cls,
  Single,  // the only flavor of a single-flavor dialect
};

inline Flavor resolve(FlavorSpec spec, SystemId s) {
  switch (spec) {
    case FlavorSpec::Shared: return shared_flavor(s);
    case FlavorSpec::Int: return Flavor::Int;
    case FlavorSpec::Cls: return Flavor::Cls;
    case FlavorSpec::Single: return Flavor::Neutral;
  }
  return Flavor::Neutral;
}

enum class TermSource { Witness, Eigen };

struct Pattern {
  enum class Kind { Meta, Bot, Binary, Quant, Neg, Label, Atom, Instance };

  Kind kind = Kind::Meta;
  FormulaKind connective = FormulaKind::Bot;
  FlavorSpec flavor = FlavorSpec::Single;
  std::string meta;
  Flavor atom_flavor = Flavor::Int;
  TermSource source = TermSource::Witness;
  std::vector<Pattern> kids;

  static Pattern var(std::string m) { return Pattern{Kind::Meta, {}, {}, std::move(m), {}, {}, {}}; }
  static Pattern falsum() { return Pattern{Kind::Bot, {}, {}, {}, {}, {}, {}}; }
  static Pattern binary(FormulaKind k, FlavorSpec fl, Pattern a, Pattern b) {
    return Pattern{Kind::Binary, k, fl, {}, {}, {}, {std::move(a), std::move(b)}};
  }
  /// Quantifier whose bound variable and body are captured by metavariable m.
  static Pattern quant(FormulaKind k, FlavorSpec fl, std::string m, Pattern inner) {
    return Pattern{Kind::Quant, k, fl, std::move(m), {}, {}, {std::move(inner)}};
  }
  static Pattern negation(Pattern a) { return Pattern{Kind::Neg, {}, {}, {}, {}, {}, {std::move(a)}}; }
  static Pattern labelled(Pattern a) { return Pattern{Kind::Label, {}, {}, {}, {}, {}, {std::move(a)}}; }
  static Pattern atom(std::string m, Flavor fl) { return Pattern{Kind::Atom, {}, {}, std::move(m), fl, {}, {}}; }
  /// A(t/x) for the quantifier body captured by m.
  static Pattern instance(std::string m, TermSource src) {
    return Pattern{Kind::Instance, {}, {}, std::move(m), {}, src, {}};
  }

  bool has_instance() const {
    if (kind == Kind::Instance) return true;
    for (const auto& k : kids)
      if (k.has_instance()) return true;
    return false;
  }

  std::string display() const {
    auto fl = [&]() -> std::string {
      switch (flavor) {
        case FlavorSpec::Int: return "i";
        case FlavorSpec::Cls: return "c";
        default: return "";
      }
    };
    switch (kind) {
      case Kind::Meta: return meta;
      case Kind::Bot: return "bot";
      case Kind::Binary: {
        std::string op = connective == FormulaKind::And ? "/\\" : connective == FormulaKind::Or ? "\\/" : "->";
        return "(" + kids[0].display() + " " + op + fl() + " " + kids[1].display() + ")";
      }
      case Kind::Quant:
        return std::string(connective == FormulaKind::Forall ? "forall" : "exists") + fl() + " x. " +
               kids[0].display();
      case Kind::Neg: return "~" + kids[0].display();
      case Kind::Label: return "(" + kids[0].display() + ")^c";
      case Kind::Atom: return meta + (atom_flavor == Flavor::Cls ? "_c(t)" : "_i(t)");
      case Kind::Instance: return meta + (source == TermSource::Witness ? "(t/x)" : "(a/x)");
    }
    return "?";
  }
};

struct DischargeSlot {
  Pattern pattern;
  std::size_t premise = 0;
};

enum class SideCondition { None, Witness, Fresh };

struct RuleSchema {
  RuleId id;
  std::vector<Pattern> premises;
  std::vector<DischargeSlot> slots;
  Pattern conclusion;
  SideCondition side = SideCondition::None;
  int fresh_premise = -1;  // premise whose open assumptions must avoid the eigenvariable
  int eigen_carrier = -1;  // premise whose conclusion may mention the eigenvariable

  std::string display() const {
    std::string out = std::string(rule_name(id)) + ": ";
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (i) out += ", ";
      std::string slots_here;
      for (const auto& s : slots)
        if (s.premise == i) slots_here += (slots_here.empty() ? "" : ",") + ("[" + s.pattern.display() + "]");
      out += slots_here.empty() ? premises[i].display() : "<" + premises[i].display() + " disch " + slots_here + ">";
    }
    out += " |- " + conclusion.display();
    if (side == SideCondition::Fresh) out += "  [a fresh]";
    if (side == SideCondition::Witness) out += "  [witness t]";
    return out;
  }
};

// ---------------------------------------------------------------------------
// Tables

namespace detail {

using P = Pattern;
using K = FormulaKind;
using F = FlavorSpec;

inline void add_neutral(std::vector<RuleSchema>& t) {
  t.push_back({RuleId::and_intro, {P::var("A"), P::var("B")}, {}, P::binary(K::And, F::Shared, P::var("A"), P::var("B"))});
  t.push_back({RuleId::and_elim_1, {P::binary(K::And, F::Shared, P::var("A"), P::var("B"))}, {}, P::var("A")});
  t.push_back({RuleId::and_elim_2, {P::binary(K::And, F::Shared, P::var("A"), P::var("B"))}, {}, P::var("B")});
  t.push_back({RuleId::bot_elim, {P::falsum()}, {}, P::var("C")});
  t.push_back({RuleId::all_intro, {P::instance("A", TermSource::Eigen)}, {},
               P::quant(K::Forall, F::Shared, "A", P::var("A")), SideCondition::Fresh, 0, 0});
  t.push_back({RuleId::all_elim, {P::quant(K::Forall, F::Shared, "A", P::var("A"))}, {},
               P::instance("A", TermSource::Witness), SideCondition::Witness});
}

/// Intuitionistic rules at flavor `fl` (Int for NE/NE_K, Single for NJ-style systems).
inline void add_intuitionistic(std::vector<RuleSchema>& t, F fl, bool single) {
  auto id = [&](RuleId eco, RuleId nj) { return single ? nj : eco; };
  t.push_back({id(RuleId::imp_i_intro, RuleId::imp_intro), {P::var("B")}, {{P::var("A"), 0}},
               P::binary(K::Imp, fl, P::var("A"), P::var("B"))});
  t.push_back({id(RuleId::imp_i_elim, RuleId::imp_elim), {P::binary(K::Imp, fl, P::var("A"), P::var("B")), P::var("A")},
               {}, P::var("B")});
  t.push_back({id(RuleId::or_i_intro_1, RuleId::or_intro_1), {P::var("A")}, {},
               P::binary(K::Or, fl, P::var("A"), P::var("B"))});
  t.push_back({id(RuleId::or_i_intro_2, RuleId::or_intro_2), {P::var("B")}, {},
               P::binary(K::Or, fl, P::var("A"), P::var("B"))});
  t.push_back({id(RuleId::or_i_elim, RuleId::or_elim),
               {P::binary(K::Or, fl, P::var("A"), P::var("B")), P::var("C"), P::var("C")},
               {{P::var("A"), 1}, {P::var("B"), 2}},
               P::var("C")});
  t.push_back({id(RuleId::ex_i_intro, RuleId::ex_intro), {P::instance("A", TermSource::Witness)}, {},
               P::quant(K::Exists, fl, "A", P::var("A")), SideCondition::Witness});
  t.push_back({id(RuleId::ex_i_elim, RuleId::ex_elim), {P::quant(K::Exists, fl, "A", P::var("A")), P::var("B")},
               {{P::instance("A", TermSource::Eigen), 1}}, P::var("B"), SideCondition::Fresh, 1, -1});
}

inline void add_classical(std::vector<RuleSchema>& t) {
  auto n = [](P p) { return P::negation(std::move(p)); };
  t.push_back({RuleId::imp_c_intro, {P::falsum()}, {{P::var("A"), 0}, {n(P::var("B")), 0}},
               P::binary(K::Imp, F::Cls, P::var("A"), P::var("B"))});
  t.push_back({RuleId::imp_c_elim, {P::binary(K::Imp, F::Cls, P::var("A"), P::var("B")), P::var("A"), n(P::var("B"))},
               {}, P::falsum()});
  t.push_back({RuleId::or_c_intro, {P::falsum()}, {{n(P::var("A")), 0}, {n(P::var("B")), 0}},
               P::binary(K::Or, F::Cls, P::var("A"), P::var("B"))});
  t.push_back({RuleId::or_c_elim,
               {P::binary(K::Or, F::Cls, P::var("A"), P::var("B")), n(P::var("A")), n(P::var("B"))},
               {},
               P::falsum()});
  t.push_back({RuleId::ex_c_intro, {P::falsum()}, {{P::quant(K::Forall, F::Shared, "A", n(P::var("A"))), 0}},
               P::quant(K::Exists, F::Cls, "A", P::var("A"))});
  t.push_back({RuleId::ex_c_elim,
               {P::quant(K::Exists, F::Cls, "A", P::var("A")), P::quant(K::Forall, F::Shared, "A", n(P::var("A")))},
               {},
               P::falsum()});
  t.push_back({RuleId::atom_c_intro, {P::falsum()}, {{n(P::atom("P", Flavor::Int)), 0}}, P::atom("P", Flavor::Cls)});
  t.push_back({RuleId::atom_c_elim, {P::atom("P", Flavor::Cls), n(P::atom("P", Flavor::Int))}, {}, P::falsum()});
}

inline void add_nek_extra(std::vector<RuleSchema>& t) {
  auto n = [](P p) { return P::negation(std::move(p)); };
  t.push_back({RuleId::and_c_intro, {P::falsum(), P::falsum()}, {{n(P::var("A")), 0}, {n(P::var("B")), 1}},
               P::binary(K::And, F::Cls, P::var("A"), P::var("B"))});
  t.push_back({RuleId::and_c_elim_1, {P::binary(K::And, F::Cls, P::var("A"), P::var("B")), n(P::var("A"))}, {},
               P::falsum()});
  t.push_back({RuleId::and_c_elim_2, {P::binary(K::And, F::Cls, P::var("A"), P::var("B")), n(P::var("B"))}, {},
               P::falsum()});
  t.push_back({RuleId::all_c_intro, {P::falsum()}, {{P::quant(K::Exists, F::Int, "A", n(P::var("A"))), 0}},
               P::quant(K::Forall, F::Cls, "A", P::var("A"))});
  t.push_back({RuleId::all_c_elim, {P::quant(K::Forall, F::Cls, "A", P::var("A"))}, {},
               n(n(P::instance("A", TermSource::Witness))), SideCondition::Witness});
}

inline void add_eci_extra(std::vector<RuleSchema>& t) {
  t.push_back({RuleId::i_c, {P::falsum()}, {{P::negation(P::var("A")), 0}}, P::labelled(P::var("A"))});
  t.push_back({RuleId::e_c, {P::labelled(P::var("A")), P::negation(P::var("A"))}, {}, P::falsum()});
}

inline void add_nk_extra(std::vector<RuleSchema>& t) {
  t.push_back({RuleId::raa, {P::falsum()}, {{P::negation(P::var("A")), 0}}, P::var("A")});
}

}  // namespace detail

/// The rules legal in `system`, in a fixed order.
inline std::vector<RuleSchema> rule_table(SystemId system) {
  std::vector<RuleSchema> t;
  detail::add_neutral(t);
  switch (system) {
    case SystemId::NE:
      detail::add_intuitionistic(t, FlavorSpec::Int, false);
      detail::add_classical(t);
      break;
    case SystemId::NEK:
      detail::add_intuitionistic(t, FlavorSpec::Int, false);
      detail::add_classical(t);
      detail::add_nek_extra(t);
      break;
    case SystemId::NJ: detail::add_intuitionistic(t, FlavorSpec::Single, true); break;
    case SystemId::ECI:
      detail::add_intuitionistic(t, FlavorSpec::Single, true);
      detail::add_eci_extra(t);
      break;
    case SystemId::NK:
      detail::add_intuitionistic(t, FlavorSpec::Single, true);
      detail::add_nk_extra(t);
      break;
  }
  return t;
}

inline const RuleSchema* find_schema(const std::vector<RuleSchema>& table, RuleId id) {
  for (const auto& s : table)
    if (s.id == id) return &s;
  return nullptr;
}

/// Premise index each discharge slot of `id` is attached to (system independent).
inline std::vector<std::size_t> slot_premises(RuleId id) {
  static const std::map<RuleId, std::vector<std::size_t>> table = [] {
    std::map<RuleId, std::vector<std::size_t>> m;
    for (SystemId s : {SystemId::NEK, SystemId::ECI, SystemId::NK, SystemId::NJ})
      for (const auto& r : rule_table(s)) {
        std::vector<std::size_t> v;
        for (const auto& slot : r.slots) v.push_back(slot.premise);
        m[r.id] = v;
      }
    return m;
  }();
  auto it = table.find(id);
  return it == table.end() ? std::vector<std::size_t>{} : it->second;
}

// ---------------------------------------------------------------------------
// Matching

struct MetaBinding {
  Formula formula;
  std::optional<std::string> var;  // set when captured as a quantifier body
};

struct MatchEnv {
  SystemId system;
  std::map<std::string, MetaBinding> metas;
  std::optional<Term> witness;
  std::optional<Term> eigen;
};

namespace detail {

inline bool all_bound(const Pattern& p, const MatchEnv& env) {
  switch (p.kind) {
    case Pattern::Kind::Meta:
    case Pattern::Kind::Atom:
    case Pattern::Kind::Quant:
      if (!env.metas.count(p.meta)) return false;
      break;
    case Pattern::Kind::Instance: {
      auto it = env.metas.find(p.meta);
      if (it == env.metas.end() || !it->second.var) return false;
      if (p.source == TermSource::Witness ? !env.witness : !env.eigen) return false;
      break;
    }
    default: break;
  }
  for (const auto& k : p.kids)
    if (!all_bound(k, env)) return false;
  return true;
}

}  // namespace detail

/// Builds the formula a fully bound pattern denotes.
inline Formula instantiate(const Pattern& p, const MatchEnv& env) {
  switch (p.kind) {
    case Pattern::Kind::Meta: return env.metas.at(p.meta).formula;
    case Pattern::Kind::Bot: return bot();
    case Pattern::Kind::Binary: {
      Formula a = instantiate(p.kids[0], env), b = instantiate(p.kids[1], env);
      Flavor fl = resolve(p.flavor, env.system);
      switch (p.connective) {
        case FormulaKind::And: return conj(fl, a, b);
        case FormulaKind::Or: return disj(fl, a, b);
        default: return imp(fl, a, b);
      }
    }
    case Pattern::Kind::Quant: {
      const auto& m = env.metas.at(p.meta);
      Formula inner = instantiate(p.kids[0], env);
      Flavor fl = resolve(p.flavor, env.system);
      std::string x = m.var.value_or("x");
      return p.connective == FormulaKind::Forall ? forall(fl, x, inner) : exists(fl, x, inner);
    }
    case Pattern::Kind::Neg: return neg(negation_flavor(env.system), instantiate(p.kids[0], env));
    case Pattern::Kind::Label: return label(instantiate(p.kids[0], env));
    case Pattern::Kind::Atom: return with_flavor(env.metas.at(p.meta).formula, p.atom_flavor);
    case Pattern::Kind::Instance: {
      const auto& m = env.metas.at(p.meta);
      const Term& t = p.source == TermSource::Witness ? *env.witness : *env.eigen;
      return substitute(m.formula, *m.var, t);
    }
  }
  return bot();
}

/// Matches f against p, extending env. Returns false on mismatch.
inline bool match(const Pattern& p, const Formula& f, MatchEnv& env) {
  if (detail::all_bound(p, env)) return alpha_equal(instantiate(p, env), f);
  switch (p.kind) {
    case Pattern::Kind::Meta:
      env.metas[p.meta] = MetaBinding{f, std::nullopt};
      return true;
    case Pattern::Kind::Bot: return f.is(FormulaKind::Bot);
    case Pattern::Kind::Binary:
      if (f.kind() != p.connective || f.flavor() != resolve(p.flavor, env.system)) return false;
      return match(p.kids[0], f.left(), env) && match(p.kids[1], f.right(), env);
    case Pattern::Kind::Quant: {
      if (f.kind() != p.connective || f.flavor() != resolve(p.flavor, env.system)) return false;
      // The body metavariable is the quantifier body with its bound variable.
      const Pattern& inner = p.kids[0];
      if (inner.kind == Pattern::Kind::Meta && inner.meta == p.meta) {
        env.metas[p.meta] = MetaBinding{f.body(), f.var()};
        return true;
      }
      if (inner.kind == Pattern::Kind::Neg && inner.kids[0].kind == Pattern::Kind::Meta && inner.kids[0].meta == p.meta) {
        const Formula& b = f.body();
        if (!b.is_negation() || b.flavor() != negation_flavor(env.system)) return false;
        env.metas[p.meta] = MetaBinding{b.left(), f.var()};
        return true;
      }
      return false;
    }
    case Pattern::Kind::Neg:
      if (!f.is_negation() || f.flavor() != negation_flavor(env.system)) return false;
      return match(p.kids[0], f.left(), env);
    case Pattern::Kind::Label:
      if (!f.is(FormulaKind::CLabel)) return false;
      return match(p.kids[0], f.body(), env);
    case Pattern::Kind::Atom:
      if (!f.is(FormulaKind::Atom) || f.flavor() != p.atom_flavor) return false;
      env.metas[p.meta] = MetaBinding{f, std::nullopt};
      return true;
    case Pattern::Kind::Instance: return false;  // needs its quantifier bound first
  }
  return false;
}

}  // namespace ecumene
