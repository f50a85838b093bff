#pragma once

// The trusted checker. Every Infer node is matched against the schema of its rule
// in the system's table; discharge bookkeeping and eigenvariable freshness are
// enforced here and nowhere else.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecumene/proof.hpp"
#include "ecumene/rules.hpp"
#include "ecumene/syntax.hpp"
#include "ecumene/syntax_io.hpp"

namespace ecumene {

struct Judgment {
  std::vector<Formula> context;  // open assumptions, duplicates collapsed
  Formula conclusion;

  bool same_as(const Judgment& o) const {
    return alpha_equal(conclusion, o.conclusion) && same_formula_set(context, o.context);
  }
};

inline std::string print_judgment(const Judgment& j, SystemId dialect) {
  std::string out = "{";
  for (std::size_t i = 0; i < j.context.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(j.context[i], dialect);
  }
  return out + "} |- " + print_formula(j.conclusion, dialect);
}

struct CheckReport {
  bool ok = false;
  Judgment judgment;     // valid when ok
  std::string path;      // offending node when !ok, e.g. "root.2.1"
  std::string message;   // violated condition when !ok

  explicit operator bool() const { return ok; }
};

namespace detail {

class Checker {
 public:
  explicit Checker(SystemId s) : system_(s), table_(rule_table(s)) {}

  CheckReport run(const Proof& p) {
    CheckReport rep;
    Opens opens;
    if (!visit(p, "root", opens, rep)) return rep;
    for (const auto& [l, leaf] : opens) {
      if (discharged_.count(l)) {
        rep.path = leaf;
        rep.message = "hypothesis " + std::to_string(l) + " occurs outside the scope that discharges it";
        return rep;
      }
    }
    rep.ok = true;
    std::vector<int> order;
    for (const auto& kv : opens) order.push_back(kv.first);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return seen_order_[a] < seen_order_[b]; });
    std::vector<Formula> ctx;
    for (int l : order) ctx.push_back(label_formula_.at(l));
    rep.judgment = Judgment{dedupe(ctx), p.conclusion};
    return rep;
  }

 private:
  using Opens = std::map<int, std::string>;  // open label -> path of one leaf carrying it

  static bool fail(CheckReport& rep, const std::string& path, std::string msg) {
    rep.ok = false;
    rep.path = path;
    rep.message = std::move(msg);
    return false;
  }

  std::string show(const Formula& f) const { return print_formula(f, system_); }

  bool well_formed_at(const Formula& f, const std::string& path, CheckReport& rep) const {
    if (!f.valid()) return fail(rep, path, "missing formula");
    auto v = well_formed(system_, f);
    if (!v.empty()) return fail(rep, path, "formula not well-formed in " + std::string(system_name(system_)) + ": " +
                                               v.front().message);
    return true;
  }

  bool visit(const Proof& p, const std::string& path, Opens& opens, CheckReport& rep) {
    if (p.is_hyp()) {
      if (p.label <= 0) return fail(rep, path, "hypothesis label must be positive");
      if (!well_formed_at(p.conclusion, path, rep)) return false;
      auto it = label_formula_.find(p.label);
      if (it == label_formula_.end()) {
        label_formula_[p.label] = p.conclusion;
        seen_order_[p.label] = static_cast<int>(seen_order_.size());
      } else if (!alpha_equal(it->second, p.conclusion)) {
        return fail(rep, path, "label " + std::to_string(p.label) + " already names " + show(it->second));
      }
      opens.emplace(p.label, path);
      return true;
    }

    std::vector<Opens> sub(p.premises.size());
    for (std::size_t i = 0; i < p.premises.size(); ++i)
      if (!visit(p.premises[i], path + "." + std::to_string(i + 1), sub[i], rep)) return false;

    const RuleSchema* schema = find_schema(table_, p.rule);
    if (!schema)
      return fail(rep, path, "rule " + std::string(rule_name(p.rule)) + " not in " + system_name(system_));
    if (!well_formed_at(p.conclusion, path, rep)) return false;
    if (p.premises.size() != schema->premises.size())
      return fail(rep, path, std::string(rule_name(p.rule)) + " expects " + std::to_string(schema->premises.size()) +
                                 " premise(s), got " + std::to_string(p.premises.size()));
    if (p.discharges.size() != schema->slots.size())
      return fail(rep, path, std::string(rule_name(p.rule)) + " expects " + std::to_string(schema->slots.size()) +
                                 " discharge label(s), got " + std::to_string(p.discharges.size()));

    bool needs_witness = schema->side == SideCondition::Witness;
    bool needs_eigen = schema->side == SideCondition::Fresh;
    if (needs_witness != p.witness.has_value())
      return fail(rep, path, needs_witness ? "missing witness term" : "unexpected witness term");
    if (needs_eigen != p.eigen.has_value())
      return fail(rep, path, needs_eigen ? "missing eigenvariable" : "unexpected eigenvariable");
    if (p.eigen && (p.eigen->empty() || is_variable_name(*p.eigen)))
      return fail(rep, path, "eigenvariable '" + p.eigen.value_or("") + "' must be a parameter name");

    MatchEnv env{system_, {}, p.witness, p.eigen ? std::optional<Term>(Term::param(*p.eigen)) : std::nullopt};
    // Patterns without A(t/x) instances first, so quantifier bodies are bound.
    std::vector<std::pair<const Pattern*, const Formula*>> work;
    work.push_back({&schema->conclusion, &p.conclusion});
    for (std::size_t i = 0; i < p.premises.size(); ++i) work.push_back({&schema->premises[i], &p.premises[i].conclusion});
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < work.size(); ++i) {
        const auto& [pat, f] = work[i];
        if (pat->has_instance() != (pass == 1)) continue;
        MatchEnv before = env;
        if (!match(*pat, *f, env)) {
          std::string where = i == 0 ? "conclusion " : "premise " + std::to_string(i) + " ";
          std::string want = detail::all_bound(*pat, before) ? show(instantiate(*pat, before)) : pat->display();
          return fail(rep, path, std::string(rule_name(p.rule)) + ": " + where + show(*f) + " does not match " + want);
        }
      }
    }

    std::set<int> local;
    for (std::size_t k = 0; k < schema->slots.size(); ++k) {
      int l = p.discharges[k];
      if (l == 0) continue;
      if (l < 0) return fail(rep, path, "discharge labels must be non-negative");
      if (!local.insert(l).second) return fail(rep, path, "label " + std::to_string(l) + " discharged twice at one node");
      if (!discharged_.insert(l).second)
        return fail(rep, path, "label " + std::to_string(l) + " is discharged more than once in the proof");
      const DischargeSlot& slot = schema->slots[k];
      Formula expected = instantiate(slot.pattern, env);
      auto& ops = sub[slot.premise];
      if (ops.count(l)) {
        if (!alpha_equal(label_formula_.at(l), expected))
          return fail(rep, path, std::string(rule_name(p.rule)) + ": label " + std::to_string(l) + " names " +
                                     show(label_formula_.at(l)) + ", slot requires " + show(expected));
        ops.erase(l);
      }
    }

    if (needs_eigen) {
      const std::string& a = *p.eigen;
      if (occurs_param(p.conclusion, a))
        return fail(rep, path, "eigenvariable " + a + " occurs in the conclusion");
      for (std::size_t i = 0; i < p.premises.size(); ++i)
        if (static_cast<int>(i) != schema->eigen_carrier && occurs_param(p.premises[i].conclusion, a))
          return fail(rep, path, "eigenvariable " + a + " occurs in premise " + std::to_string(i + 1));
      for (const auto& [l, leaf] : sub[static_cast<std::size_t>(schema->fresh_premise)])
        if (occurs_param(label_formula_.at(l), a))
          return fail(rep, path, "eigenvariable " + a + " occurs in open assumption " + show(label_formula_.at(l)));
    }

    for (const auto& s : sub) opens.insert(s.begin(), s.end());
    return true;
  }

  SystemId system_;
  std::vector<RuleSchema> table_;
  std::map<int, Formula> label_formula_;
  std::map<int, int> seen_order_;
  std::set<int> discharged_;
};

}  // namespace detail

inline CheckReport check(SystemId system, const Proof& p) { return detail::Checker(system).run(p); }

/// Hypotheses not discharged by any ancestor, duplicates (up to alpha) collapsed, in tree order.
inline std::vector<Formula> open_assumptions(const Proof& p) {
  std::vector<Formula> out;
  auto walk = [&](auto&& self, const Proof& q, std::set<int>& closed) -> void {
    if (q.is_hyp()) {
      if (!closed.count(q.label)) out.push_back(q.conclusion);
      return;
    }
    auto where = slot_premises(q.rule);
    for (std::size_t i = 0; i < q.premises.size(); ++i) {
      std::vector<int> added;
      for (std::size_t k = 0; k < q.discharges.size(); ++k) {
        std::size_t prem = k < where.size() ? where[k] : 0;
        int l = q.discharges[k];
        if (prem == i && l != 0 && closed.insert(l).second) added.push_back(l);
      }
      self(self, q.premises[i], closed);
      for (int l : added) closed.erase(l);
    }
  };
  std::set<int> closed;
  walk(walk, p, closed);
  return dedupe(out);
}

}  // namespace ecumene
