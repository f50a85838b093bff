#pragma once

// Tree surgery used by the transformers: label allocation, relabelling,
// grafting a derivation onto hypothesis leaves, eigenvariable renaming.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecumene/proof.hpp"
#include "ecumene/rules.hpp"

namespace ecumene {

class LabelAllocator {
 public:
  explicit LabelAllocator(int next = 1) : next_(next) {}

  int operator()() { return next_++; }
  void reserve(int used) { next_ = std::max(next_, used + 1); }
  void reserve(const Proof& p) { reserve(max_label(p)); }

 private:
  int next_;
};

inline std::set<int> discharged_labels(const Proof& p) {
  std::set<int> out;
  auto walk = [&](auto&& self, const Proof& q) -> void {
    for (int d : q.discharges)
      if (d != 0) out.insert(d);
    for (const auto& r : q.premises) self(self, r);
  };
  walk(walk, p);
  return out;
}

/// Labels carried by at least one undischarged leaf, with the formula they name.
inline std::map<int, Formula> open_labels(const Proof& p) {
  std::map<int, Formula> out;
  auto walk = [&](auto&& self, const Proof& q, std::multiset<int>& closed) -> void {
    if (q.is_hyp()) {
      if (!closed.count(q.label)) out.emplace(q.label, q.conclusion);
      return;
    }
    auto where = slot_premises(q.rule);
    for (std::size_t i = 0; i < q.premises.size(); ++i) {
      std::vector<int> added;
      for (std::size_t k = 0; k < q.discharges.size(); ++k)
        if (k < where.size() && where[k] == i && q.discharges[k] != 0) {
          closed.insert(q.discharges[k]);
          added.push_back(q.discharges[k]);
        }
      self(self, q.premises[i], closed);
      for (int l : added) closed.erase(closed.find(l));
    }
  };
  std::multiset<int> closed;
  walk(walk, p, closed);
  return out;
}

/// Renames hypothesis and discharge labels through `m`; unmapped labels stay.
inline Proof relabel(const Proof& p, const std::map<int, int>& m) {
  auto re = [&](int l) {
    auto it = m.find(l);
    return it == m.end() ? l : it->second;
  };
  Proof q = p;
  if (q.is_hyp()) {
    q.label = re(q.label);
    return q;
  }
  for (int& d : q.discharges)
    if (d != 0) d = re(d);
  for (auto& r : q.premises) r = relabel(r, m);
  return q;
}

/// A copy whose internally discharged labels are fresh, so it can be pasted
/// several times into one tree.
inline Proof copy_fresh(const Proof& p, LabelAllocator& alloc) {
  std::map<int, int> m;
  for (int l : discharged_labels(p)) m[l] = alloc();
  return relabel(p, m);
}

/// Every label of `p`, open or not, moved to a fresh number.
inline Proof relabel_all(const Proof& p, LabelAllocator& alloc) {
  std::map<int, int> m;
  auto walk = [&](auto&& self, const Proof& q) -> void {
    if (q.is_hyp() && !m.count(q.label)) m[q.label] = alloc();
    for (int d : q.discharges)
      if (d != 0 && !m.count(d)) m[d] = alloc();
    for (const auto& r : q.premises) self(self, r);
  };
  walk(walk, p);
  return relabel(p, m);
}

/// Replaces the parameter `a` by `t` everywhere in the tree, including witnesses.
/// An eigenvariable named `a` is renamed only when `t` is itself a parameter.
inline Proof rename_param(const Proof& p, const std::string& a, const Term& t) {
  Proof q = p;
  q.conclusion = replace_param(q.conclusion, a, t);
  if (q.witness) q.witness = replace_param(*q.witness, a, t);
  if (q.eigen && *q.eigen == a && t.kind == TermKind::Param) q.eigen = t.name;
  for (auto& r : q.premises) r = rename_param(r, a, t);
  return q;
}

namespace detail {

inline std::size_t eigen_scope(const Proof& q) { return q.premises.size() == 1 ? 0 : 1; }

}  // namespace detail

/// Renames every eigenvariable that belongs to `clash` to a name outside `avoid`
/// (and adds the new name to `avoid`). Renaming is confined to the scope of the
/// binding rule, so the judgment is unchanged.
inline Proof freshen_eigens(const Proof& p, const std::set<std::string>& clash, std::set<std::string>& avoid) {
  Proof q = p;
  if (q.is_hyp()) return q;
  if (q.eigen && clash.count(*q.eigen) && !q.premises.empty()) {
    std::string b = fresh_name(*q.eigen, avoid);
    avoid.insert(b);
    std::size_t s = detail::eigen_scope(q);
    q.premises[s] = rename_param(q.premises[s], *q.eigen, Term::param(b));
    q.eigen = b;
  }
  for (auto& r : q.premises) r = freshen_eigens(r, clash, avoid);
  return q;
}

/// Replaces each leaf labelled `label` by a fresh copy of `repl`. Eigenvariables
/// of `host` that clash with names in `repl` are renamed first.
inline Proof graft(const Proof& host, int label, const Proof& repl, LabelAllocator& alloc) {
  if (label == 0) return host;
  std::set<std::string> clash = names_in(repl);
  std::set<std::string> avoid = names_in(host);
  avoid.insert(clash.begin(), clash.end());
  Proof h = freshen_eigens(host, clash, avoid);
  auto walk = [&](auto&& self, const Proof& q) -> Proof {
    if (q.is_hyp()) return q.label == label ? copy_fresh(repl, alloc) : q;
    Proof r = q;
    for (auto& s : r.premises) s = self(self, s);
    return r;
  };
  return walk(walk, h);
}

/// Grafts `repl` onto every open leaf whose formula is `f`. Returns false in
/// `found` when no such leaf exists.
inline Proof graft_open(const Proof& host, const Formula& f, const Proof& repl, LabelAllocator& alloc,
                        bool* found = nullptr) {
  Proof out = host;
  bool any = false;
  for (const auto& [l, g] : open_labels(host))
    if (alpha_equal(g, f)) {
      out = graft(out, l, repl, alloc);
      any = true;
    }
  if (found) *found = any;
  return out;
}

/// A parameter name absent from every name in `avoid`.
inline std::string fresh_param(const std::set<std::string>& avoid, const std::string& base = "a") {
  return fresh_name(base, avoid);
}

}  // namespace ecumene
