#pragma once

// Decision procedures for the propositional fragments.
//
//   cpl_valid      truth tables
//   ipl_provable   G4ip (Dyckhoff's contraction-free calculus), memoized
//   eci_provable   ipl_provable on t_eci images
//   nek_provable   eci_provable on untranslate_nek images

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecumene/syntax.hpp"
#include "ecumene/syntax_io.hpp"
#include "ecumene/translate.hpp"

namespace ecumene {

class OracleError : public std::runtime_error {
 public:
  enum class Kind { TooManyAtoms, NotPropositional, UniversalQuantifier, Dialect, Bound };
  OracleError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Sequent {
  std::vector<Formula> context;
  Formula goal;
};

struct Verdict {
  bool provable = false;
  std::optional<std::map<std::string, bool>> countermodel;  // cpl only
  std::size_t explored = 0;                                  // sequents visited by the ipl search
  std::string note;
};

namespace detail {

inline void require_propositional(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (f.flavor() == Flavor::Cls)
        throw OracleError(OracleError::Kind::NotPropositional, "classical atom outside nek/ne input");
      return;
    case FormulaKind::Bot: return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw OracleError(OracleError::Kind::NotPropositional, "quantifiers are outside the decidable fragment");
    case FormulaKind::CLabel:
      throw OracleError(OracleError::Kind::NotPropositional, "classical label in a pure propositional formula");
    default:
      if (f.flavor() == Flavor::Cls)
        throw OracleError(OracleError::Kind::NotPropositional, "classical connective in a pure propositional formula");
      require_propositional(f.left());
      require_propositional(f.right());
  }
}

inline std::string atom_key(const Formula& f) { return print_formula(f, SystemId::NJ); }

inline bool eval(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case FormulaKind::Atom: return v.at(atom_key(f));
    case FormulaKind::Bot: return false;
    case FormulaKind::And: return eval(f.left(), v) && eval(f.right(), v);
    case FormulaKind::Or: return eval(f.left(), v) || eval(f.right(), v);
    case FormulaKind::Imp: return !eval(f.left(), v) || eval(f.right(), v);
    default: throw OracleError(OracleError::Kind::NotPropositional, "not propositional");
  }
}

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(FormulaKind::Atom)) {
    out.insert(atom_key(f));
  } else if (f.is_binary()) {
    collect_atoms(f.left(), out);
    collect_atoms(f.right(), out);
  }
}

/// G4ip over hash-consed formulas. Contexts are sorted sets of node ids.
class G4ip {
 public:
  bool prove(const std::vector<Formula>& ctx, const Formula& goal) {
    std::vector<int> c;
    for (const auto& f : ctx) c.push_back(intern(f));
    return search(normal(std::move(c)), intern(goal));
  }
  std::size_t explored() const { return explored_; }

 private:
  enum Op : std::uint8_t { Atom, Bot, And, Or, Imp };
  struct Node {
    Op op;
    int l, r;
  };

  int node(Op op, int l, int r) {
    std::uint64_t key = (std::uint64_t(op) << 56) ^ (std::uint64_t(std::uint32_t(l)) << 28) ^ std::uint32_t(r);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    nodes_.push_back({op, l, r});
    int id = int(nodes_.size()) - 1;
    ids_.emplace(key, id);
    return id;
  }

  int intern(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        auto [it, fresh] = atoms_.emplace(atom_key(f), int(atoms_.size()));
        return node(Atom, it->second, 0);
      }
      case FormulaKind::Bot: return node(Bot, 0, 0);
      case FormulaKind::And: return node(And, intern(f.left()), intern(f.right()));
      case FormulaKind::Or: return node(Or, intern(f.left()), intern(f.right()));
      case FormulaKind::Imp: return node(Imp, intern(f.left()), intern(f.right()));
      default: throw OracleError(OracleError::Kind::NotPropositional, "not propositional");
    }
  }

  static std::vector<int> normal(std::vector<int> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  static bool has(const std::vector<int>& c, int x) { return std::binary_search(c.begin(), c.end(), x); }

  static std::vector<int> with(std::vector<int> c, std::initializer_list<int> add, int drop = -1) {
    if (drop >= 0) c.erase(std::remove(c.begin(), c.end(), drop), c.end());
    c.insert(c.end(), add);
    return normal(std::move(c));
  }

  std::string key(const std::vector<int>& c, int goal) const {
    std::string k;
    k.reserve(4 * (c.size() + 1));
    auto put = [&](int x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(goal);
    for (int x : c) put(x);
    return k;
  }

  bool search(const std::vector<int>& c, int goal) {
    std::string k = key(c, goal);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    bool r = step(c, goal);
    memo_[k] = r;
    return r;
  }

  bool step(const std::vector<int>& c, int goal) {
    ++explored_;
    const Node g = nodes_[std::size_t(goal)];
    if (has(c, goal)) return true;
    for (int x : c)
      if (nodes_[std::size_t(x)].op == Bot) return true;

    // invertible left rules
    for (int x : c) {
      const Node n = nodes_[std::size_t(x)];
      if (n.op == And) return search(with(c, {n.l, n.r}, x), goal);
      if (n.op == Or) return search(with(c, {n.l}, x), goal) && search(with(c, {n.r}, x), goal);
      if (n.op != Imp) continue;
      const Node a = nodes_[std::size_t(n.l)];
      if (a.op == Bot) return search(with(c, {}, x), goal);
      if (a.op == Atom && has(c, n.l)) return search(with(c, {n.r}, x), goal);
      if (a.op == And) return search(with(c, {node(Imp, a.l, node(Imp, a.r, n.r))}, x), goal);
      if (a.op == Or) return search(with(c, {node(Imp, a.l, n.r), node(Imp, a.r, n.r)}, x), goal);
    }

    // invertible right rules
    if (g.op == And) return search(c, g.l) && search(c, g.r);
    if (g.op == Imp) return search(with(c, {g.l}), g.r);

    if (g.op == Or && (search(c, g.l) || search(c, g.r))) return true;
    for (int x : c) {
      const Node n = nodes_[std::size_t(x)];
      if (n.op != Imp) continue;
      const Node a = nodes_[std::size_t(n.l)];
      if (a.op != Imp) continue;
      // (A -> B) -> D:  Gamma, B -> D |- A -> B   and   Gamma, D |- goal
      std::vector<int> rest = with(c, {}, x);
      if (search(with(rest, {node(Imp, a.r, n.r)}), n.l) && search(with(rest, {n.r}), goal)) return true;
    }
    return false;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> ids_;
  std::map<std::string, int> atoms_;
  std::unordered_map<std::string, bool> memo_;
  std::size_t explored_ = 0;
};

}  // namespace detail

inline Verdict cpl_valid(const Sequent& s) {
  std::set<std::string> atoms;
  for (const auto& f : s.context) {
    detail::require_propositional(f);
    detail::collect_atoms(f, atoms);
  }
  detail::require_propositional(s.goal);
  detail::collect_atoms(s.goal, atoms);
  if (atoms.size() > 16) throw OracleError(OracleError::Kind::TooManyAtoms, "more than 16 atoms");
  std::vector<std::string> names(atoms.begin(), atoms.end());
  std::map<std::string, bool> v;
  Verdict out;
  for (std::uint32_t bits = 0; bits < (1u << names.size()); ++bits) {
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (bits >> i) & 1u;
    bool ctx = true;
    for (const auto& f : s.context) ctx = ctx && detail::eval(f, v);
    if (ctx && !detail::eval(s.goal, v)) {
      out.countermodel = v;
      return out;
    }
  }
  out.provable = true;
  return out;
}

inline Verdict ipl_provable(const Sequent& s) {
  for (const auto& f : s.context) detail::require_propositional(f);
  detail::require_propositional(s.goal);
  detail::G4ip g;
  Verdict out;
  out.provable = g.prove(s.context, s.goal);
  out.explored = g.explored();
  return out;
}

inline Verdict eci_provable(const Sequent& s) {
  Sequent t;
  for (const auto& f : s.context) t.context.push_back(t_eci(f));
  t.goal = t_eci(s.goal);
  Verdict v = ipl_provable(t);
  v.note = "(via tECI reduction)";
  return v;
}

inline Verdict nek_provable(const Sequent& s) {
  Sequent e;
  auto down = [](const Formula& f) {
    detail::require_dialect(SystemId::NEK, f);
    if (contains_forall(f))
      throw OracleError(OracleError::Kind::UniversalQuantifier, "nek decider excludes universal quantifiers");
    return detail::untnek(f);
  };
  for (const auto& f : s.context) e.context.push_back(down(f));
  e.goal = down(s.goal);
  return eci_provable(e);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

struct EnumSpec {
  std::vector<Formula> leaves;
  std::vector<std::pair<FormulaKind, Flavor>> binaries;
  bool labels = false;
};

inline EnumSpec enum_spec(const std::vector<std::string>& atoms, SystemId d) {
  EnumSpec s;
  for (const auto& a : atoms) {
    s.leaves.push_back(atom(a));
    if (is_ecumenical(d)) s.leaves.push_back(atom(a, {}, Flavor::Cls));
  }
  s.leaves.push_back(bot());
  if (is_ecumenical(d)) {
    s.binaries.push_back({FormulaKind::And, shared_flavor(d)});
    if (d == SystemId::NEK) s.binaries.push_back({FormulaKind::And, Flavor::Cls});
    for (FormulaKind k : {FormulaKind::Or, FormulaKind::Imp}) {
      s.binaries.push_back({k, Flavor::Int});
      s.binaries.push_back({k, Flavor::Cls});
    }
  } else {
    for (FormulaKind k : {FormulaKind::And, FormulaKind::Or, FormulaKind::Imp}) s.binaries.push_back({k, Flavor::Neutral});
  }
  s.labels = d == SystemId::ECI;
  return s;
}

// label() collapses a labelled atom, so those are skipped to stay duplicate-free.
inline void each_of_size(const EnumSpec& s, int n, const std::function<void(const Formula&)>& fn) {
  if (n == 0) {
    for (const auto& f : s.leaves) fn(f);
    return;
  }
  for (const auto& [k, fl] : s.binaries)
    for (int left = 0; left < n; ++left)
      each_of_size(s, left, [&, k = k, fl = fl](const Formula& a) {
        each_of_size(s, n - 1 - left, [&](const Formula& b) { fn(make(k, fl, {}, {}, a, b)); });
      });
  if (s.labels)
    each_of_size(s, n - 1, [&](const Formula& a) {
      if (!a.is(FormulaKind::CLabel) || !a.body().is(FormulaKind::Atom)) fn(label(a));
    });
}

}  // namespace detail

/// Calls fn on every formula with at most max_connectives internal nodes,
/// smallest first.
inline void enumerate_formulas(const std::vector<std::string>& atoms, int max_connectives, SystemId dialect,
                               const std::function<void(const Formula&)>& fn) {
  if (atoms.empty()) throw OracleError(OracleError::Kind::Bound, "no atoms given");
  if (max_connectives < 0 || max_connectives > 8)
    throw OracleError(OracleError::Kind::Bound, "max_connectives must be between 0 and 8");
  detail::EnumSpec s = detail::enum_spec(atoms, dialect);
  for (int n = 0; n <= max_connectives; ++n) detail::each_of_size(s, n, fn);
}

inline std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms, int max_connectives,
                                               SystemId dialect) {
  std::vector<Formula> out;
  enumerate_formulas(atoms, max_connectives, dialect, [&](const Formula& f) { out.push_back(f); });
  return out;
}

}  // namespace ecumene
