#pragma once

// Terms and formulas shared by every dialect (NE, NE_K, ECI, NJ, NK).

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ecumene {

enum class SystemId { NE, NEK, ECI, NJ, NK };

inline const char* system_name(SystemId s) {
  switch (s) {
    case SystemId::NE: return "ne";
    case SystemId::NEK: return "nek";
    case SystemId::ECI: return "eci";
    case SystemId::NJ: return "nj";
    case SystemId::NK: return "nk";
  }
  return "?";
}

inline SystemId parse_system(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "ne") return SystemId::NE;
  if (lower == "nek" || lower == "ne_k") return SystemId::NEK;
  if (lower == "eci") return SystemId::ECI;
  if (lower == "nj") return SystemId::NJ;
  if (lower == "nk") return SystemId::NK;
  throw std::invalid_argument("unknown system '" + std::string(s) + "'");
}

/// NE and NE_K carry flavored connectives; the others are single-flavor.
inline bool is_ecumenical(SystemId s) { return s == SystemId::NE || s == SystemId::NEK; }

enum class Flavor { Neutral, Int, Cls };

/// Flavor of the shared conjunction and universal quantifier.
inline Flavor shared_flavor(SystemId s) { return s == SystemId::NEK ? Flavor::Int : Flavor::Neutral; }

/// Flavor of the implication used to spell ~A = A -> bot.
inline Flavor negation_flavor(SystemId s) { return is_ecumenical(s) ? Flavor::Int : Flavor::Neutral; }

/// Flavor of the intuitionistic (or only) version of \/, -> and exists.
inline Flavor intuitionistic_flavor(SystemId s) { return is_ecumenical(s) ? Flavor::Int : Flavor::Neutral; }

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Param, App };

struct Term {
  TermKind kind = TermKind::Var;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string n) { return Term{TermKind::Var, std::move(n), {}}; }
  static Term param(std::string n) { return Term{TermKind::Param, std::move(n), {}}; }
  static Term app(std::string f, std::vector<Term> a = {}) { return Term{TermKind::App, std::move(f), std::move(a)}; }

  bool operator==(const Term& o) const { return kind == o.kind && name == o.name && args == o.args; }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind { Atom, Bot, And, Or, Imp, Forall, Exists, CLabel };

struct FormulaNode;

/// Immutable, cheaply copyable handle to a formula tree.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const;
  Flavor flavor() const;
  const std::string& pred() const;  // Atom
  const std::string& var() const;   // Forall / Exists
  const std::vector<Term>& args() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const;  // quantifier body or labelled formula

  bool is(FormulaKind k) const { return kind() == k; }
  bool is_binary() const {
    auto k = kind();
    return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Imp;
  }
  bool is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }
  bool is_negation() const;

  const FormulaNode* get() const { return node_.get(); }

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::Bot;
  Flavor flavor = Flavor::Neutral;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  Formula left;
  Formula right;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline Flavor Formula::flavor() const { return node_->flavor; }
inline const std::string& Formula::pred() const { return node_->name; }
inline const std::string& Formula::var() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline const Formula& Formula::body() const { return node_->left; }
inline bool Formula::is_negation() const {
  return kind() == FormulaKind::Imp && right().kind() == FormulaKind::Bot;
}

namespace detail {
inline Formula make(FormulaKind k, Flavor fl, std::string name, std::vector<Term> args, Formula l, Formula r) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->flavor = fl;
  n->name = std::move(name);
  n->args = std::move(args);
  n->left = std::move(l);
  n->right = std::move(r);
  return Formula(std::move(n));
}
}  // namespace detail

inline Formula atom(std::string pred, std::vector<Term> args = {}, Flavor fl = Flavor::Int) {
  return detail::make(FormulaKind::Atom, fl, std::move(pred), std::move(args), {}, {});
}
inline Formula bot() {
  static const Formula b = detail::make(FormulaKind::Bot, Flavor::Neutral, {}, {}, {}, {});
  return b;
}
inline Formula conj(Flavor fl, Formula a, Formula b) {
  return detail::make(FormulaKind::And, fl, {}, {}, std::move(a), std::move(b));
}
inline Formula disj(Flavor fl, Formula a, Formula b) {
  return detail::make(FormulaKind::Or, fl, {}, {}, std::move(a), std::move(b));
}
inline Formula imp(Flavor fl, Formula a, Formula b) {
  return detail::make(FormulaKind::Imp, fl, {}, {}, std::move(a), std::move(b));
}
inline Formula forall(Flavor fl, std::string x, Formula body) {
  return detail::make(FormulaKind::Forall, fl, std::move(x), {}, std::move(body), {});
}
inline Formula exists(Flavor fl, std::string x, Formula body) {
  return detail::make(FormulaKind::Exists, fl, std::move(x), {}, std::move(body), {});
}
/// A^c. Labelling an already labelled atom is the identity.
inline Formula label(Formula body) {
  if (body.is(FormulaKind::CLabel) && body.body().is(FormulaKind::Atom)) return body;
  return detail::make(FormulaKind::CLabel, Flavor::Neutral, {}, {}, std::move(body), {});
}
inline Formula neg(Flavor fl, Formula a) { return imp(fl, std::move(a), bot()); }

/// Rebuilds a binary/quantifier/label node with new children, keeping kind, flavor and name.
inline Formula rebuild(const Formula& f, Formula l, Formula r = {}) {
  return detail::make(f.kind(), f.flavor(), f.get()->name, f.args(), std::move(l), std::move(r));
}
inline Formula with_flavor(const Formula& f, Flavor fl) {
  return detail::make(f.kind(), fl, f.get()->name, f.args(), f.left(), f.right());
}
inline Formula with_args(const Formula& f, std::vector<Term> args) {
  return detail::make(f.kind(), f.flavor(), f.get()->name, std::move(args), f.left(), f.right());
}

/// Number of internal (non-leaf) nodes.
inline std::size_t connective_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot: return 0;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: return 1 + connective_count(f.left()) + connective_count(f.right());
    default: return 1 + connective_count(f.body());
  }
}

inline bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot: return true;
    case FormulaKind::Forall:
    case FormulaKind::Exists: return false;
    case FormulaKind::CLabel: return is_quantifier_free(f.body());
    default: return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
  }
}

inline bool contains_forall(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot: return false;
    case FormulaKind::Forall: return true;
    case FormulaKind::Exists:
    case FormulaKind::CLabel: return contains_forall(f.body());
    default: return contains_forall(f.left()) || contains_forall(f.right());
  }
}

// ---------------------------------------------------------------------------
// Free objects

struct FreeObjects {
  std::set<std::string> vars;
  std::set<std::string> params;
  bool operator==(const FreeObjects&) const = default;
};

namespace detail {
inline void collect_free(const Term& t, std::vector<std::string>& bound, FreeObjects& out) {
  switch (t.kind) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.vars.insert(t.name);
      break;
    case TermKind::Param: out.params.insert(t.name); break;
    case TermKind::App:
      for (const auto& a : t.args) collect_free(a, bound, out);
      break;
  }
}

inline void collect_free(const Formula& f, std::vector<std::string>& bound, FreeObjects& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const auto& a : f.args()) collect_free(a, bound, out);
      break;
    case FormulaKind::Bot: break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      break;
    case FormulaKind::CLabel: collect_free(f.body(), bound, out); break;
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}
}  // namespace detail

inline FreeObjects free_objects(const Term& t) {
  FreeObjects out;
  std::vector<std::string> bound;
  detail::collect_free(t, bound, out);
  return out;
}

inline FreeObjects free_objects(const Formula& f) {
  FreeObjects out;
  std::vector<std::string> bound;
  detail::collect_free(f, bound, out);
  return out;
}

inline bool occurs_param(const Formula& f, const std::string& a) { return free_objects(f).params.count(a) > 0; }

/// Every name (bound or free, variable or parameter) appearing in f.
inline void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}
inline void collect_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const auto& a : f.args()) collect_names(a, out);
      break;
    case FormulaKind::Bot: break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out.insert(f.var());
      collect_names(f.body(), out);
      break;
    case FormulaKind::CLabel: collect_names(f.body(), out); break;
    default:
      collect_names(f.left(), out);
      collect_names(f.right(), out);
  }
}

/// A name derived from `base` that is not in `avoid` (x -> x1, x2, ...).
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace detail {

struct Replacement {
  TermKind kind;  // Var or Param being replaced
  std::string name;
  Term by;
  FreeObjects by_free;
};

inline Term replace_in_term(const Term& t, const Replacement& r) {
  if (t.kind == r.kind && t.name == r.name && t.kind != TermKind::App) return r.by;
  if (t.kind != TermKind::App) return t;
  Term out = t;
  for (auto& a : out.args) a = replace_in_term(a, r);
  return out;
}

inline bool affected(const Formula& f, const Replacement& r) {
  auto fo = free_objects(f);
  return r.kind == TermKind::Var ? fo.vars.count(r.name) > 0 : fo.params.count(r.name) > 0;
}

inline Formula replace(const Formula& f, const Replacement& r) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(replace_in_term(a, r));
      return with_args(f, std::move(args));
    }
    case FormulaKind::Bot: return f;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const std::string& y = f.var();
      if (r.kind == TermKind::Var && y == r.name) return f;
      if (!affected(f.body(), r)) return f;
      if (r.by_free.vars.count(y)) {
        std::set<std::string> avoid;
        collect_names(f.body(), avoid);
        for (const auto& v : r.by_free.vars) avoid.insert(v);
        for (const auto& p : r.by_free.params) avoid.insert(p);
        if (r.kind == TermKind::Var) avoid.insert(r.name);
        std::string y2 = fresh_name(y, avoid);
        Replacement rename{TermKind::Var, y, Term::var(y2), free_objects(Term::var(y2))};
        Formula renamed = replace(f.body(), rename);
        return detail::make(f.kind(), f.flavor(), y2, {}, replace(renamed, r), {});
      }
      return rebuild(f, replace(f.body(), r));
    }
    case FormulaKind::CLabel: return rebuild(f, replace(f.body(), r));
    default: return rebuild(f, replace(f.left(), r), replace(f.right(), r));
  }
}

}  // namespace detail

/// Capture-avoiding substitution f(t/x) of a term for a free variable.
inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  return detail::replace(f, detail::Replacement{TermKind::Var, x, t, free_objects(t)});
}

/// Capture-avoiding replacement of a parameter by a term.
inline Formula replace_param(const Formula& f, const std::string& a, const Term& t) {
  return detail::replace(f, detail::Replacement{TermKind::Param, a, t, free_objects(t)});
}

inline Term replace_param(const Term& term, const std::string& a, const Term& t) {
  return detail::replace_in_term(term, detail::Replacement{TermKind::Param, a, t, free_objects(t)});
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

inline int bound_index(const std::vector<std::string>& stack, const std::string& name) {
  for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
    if (stack[i] == name) return i;
  return -1;
}

inline bool alpha_term(const Term& a, const Term& b, const std::vector<std::string>& sa,
                       const std::vector<std::string>& sb) {
  if (a.kind != b.kind) return false;
  if (a.kind == TermKind::Var) {
    int ia = bound_index(sa, a.name), ib = bound_index(sb, b.name);
    if (ia != ib) return false;
    return ia >= 0 || a.name == b.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_term(a.args[i], b.args[i], sa, sb)) return false;
  return true;
}

inline bool alpha(const Formula& a, const Formula& b, std::vector<std::string>& sa, std::vector<std::string>& sb) {
  if (a.get() == b.get() && sa == sb) return true;
  if (a.kind() != b.kind() || a.flavor() != b.flavor()) return false;
  switch (a.kind()) {
    case FormulaKind::Atom:
      if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], sa, sb)) return false;
      return true;
    case FormulaKind::Bot: return true;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      sa.push_back(a.var());
      sb.push_back(b.var());
      bool r = alpha(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    case FormulaKind::CLabel: return alpha(a.body(), b.body(), sa, sb);
    default: return alpha(a.left(), b.left(), sa, sb) && alpha(a.right(), b.right(), sa, sb);
  }
}

inline void key_term(const Term& t, const std::vector<std::string>& stack, std::string& out) {
  switch (t.kind) {
    case TermKind::Var: {
      int i = bound_index(stack, t.name);
      if (i >= 0)
        out += "#" + std::to_string(i);
      else
        out += "v:" + t.name;
      return;
    }
    case TermKind::Param: out += "p:" + t.name; return;
    case TermKind::App:
      out += "f:" + t.name + "(";
      for (const auto& a : t.args) {
        key_term(a, stack, out);
        out += ",";
      }
      out += ")";
  }
}

inline char flavor_char(Flavor f) { return f == Flavor::Int ? 'i' : f == Flavor::Cls ? 'c' : 'n'; }

inline void key(const Formula& f, std::vector<std::string>& stack, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += "A";
      out += flavor_char(f.flavor());
      out += f.pred() + "(";
      for (const auto& a : f.args()) {
        key_term(a, stack, out);
        out += ",";
      }
      out += ")";
      return;
    case FormulaKind::Bot: out += "F"; return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "(V" : "(E";
      out += flavor_char(f.flavor());
      stack.push_back(f.var());
      key(f.body(), stack, out);
      stack.pop_back();
      out += ")";
      return;
    case FormulaKind::CLabel:
      out += "(L";
      key(f.body(), stack, out);
      out += ")";
      return;
    default:
      out += f.kind() == FormulaKind::And ? "(&" : f.kind() == FormulaKind::Or ? "(|" : "(>";
      out += flavor_char(f.flavor());
      key(f.left(), stack, out);
      out += " ";
      key(f.right(), stack, out);
      out += ")";
  }
}

}  // namespace detail

/// Formula equality used throughout: equal up to renaming of bound variables.
inline bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::string> sa, sb;
  return detail::alpha(a, b, sa, sb);
}

/// Canonical string; two formulas have the same key iff they are alpha-equivalent.
inline std::string canonical_key(const Formula& f) {
  std::string out;
  std::vector<std::string> stack;
  detail::key(f, stack, out);
  return out;
}

/// Order-preserving removal of alpha-equivalent duplicates.
inline std::vector<Formula> dedupe(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const auto& f : fs)
    if (seen.insert(canonical_key(f)).second) out.push_back(f);
  return out;
}

/// Set equality up to alpha-equivalence (duplicates collapsed).
inline bool same_formula_set(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::set<std::string> ka, kb;
  for (const auto& f : a) ka.insert(canonical_key(f));
  for (const auto& f : b) kb.insert(canonical_key(f));
  return ka == kb;
}

// ---------------------------------------------------------------------------
// Dialect well-formedness

struct Violation {
  std::string path;  // e.g. "root.left.body"
  std::string message;
};

namespace detail {

inline const char* kind_symbol(FormulaKind k) {
  switch (k) {
    case FormulaKind::And: return "conjunction";
    case FormulaKind::Or: return "disjunction";
    case FormulaKind::Imp: return "implication";
    case FormulaKind::Forall: return "universal quantifier";
    case FormulaKind::Exists: return "existential quantifier";
    case FormulaKind::Atom: return "atom";
    case FormulaKind::CLabel: return "classical label";
    default: return "bot";
  }
}

inline const char* flavor_word(Flavor f) {
  return f == Flavor::Int ? "intuitionistic" : f == Flavor::Cls ? "classical" : "neutral";
}

inline bool flavor_allowed(SystemId s, FormulaKind k, Flavor fl) {
  switch (s) {
    case SystemId::NE:
      if (k == FormulaKind::And || k == FormulaKind::Forall) return fl == Flavor::Neutral;
      return fl == Flavor::Int || fl == Flavor::Cls;
    case SystemId::NEK: return fl == Flavor::Int || fl == Flavor::Cls;
    default: return k == FormulaKind::Atom ? fl == Flavor::Int : fl == Flavor::Neutral;
  }
}

inline void check_wf(SystemId s, const Formula& f, const std::string& path, std::vector<Violation>& out) {
  switch (f.kind()) {
    case FormulaKind::Bot: return;
    case FormulaKind::Atom:
      if (f.flavor() == Flavor::Neutral || !flavor_allowed(s, FormulaKind::Atom, f.flavor()))
        out.push_back({path, std::string(flavor_word(f.flavor())) + " atom " + f.pred() + " not in " +
                                 system_name(s)});
      return;
    case FormulaKind::CLabel:
      if (s != SystemId::ECI) out.push_back({path, std::string("classical label not in ") + system_name(s)});
      check_wf(s, f.body(), path + ".body", out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (!flavor_allowed(s, f.kind(), f.flavor()))
        out.push_back({path, std::string(flavor_word(f.flavor())) + " " + kind_symbol(f.kind()) + " not in " +
                                 system_name(s)});
      check_wf(s, f.body(), path + ".body", out);
      return;
    default:
      if (!flavor_allowed(s, f.kind(), f.flavor()))
        out.push_back({path, std::string(flavor_word(f.flavor())) + " " + kind_symbol(f.kind()) + " not in " +
                                 system_name(s)});
      check_wf(s, f.left(), path + ".left", out);
      check_wf(s, f.right(), path + ".right", out);
  }
}

}  // namespace detail

inline std::vector<Violation> well_formed(SystemId dialect, const Formula& f) {
  std::vector<Violation> out;
  detail::check_wf(dialect, f, "root", out);
  return out;
}

inline bool is_well_formed(SystemId dialect, const Formula& f) { return well_formed(dialect, f).empty(); }

}  // namespace ecumene
