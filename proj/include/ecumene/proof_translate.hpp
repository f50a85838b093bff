#pragma once

// Derivations carried across t_nek: ECI proofs to NE_K proofs and back.
// Intuitionistic rules go over one to one; the classical label rules are
// replaced by small constructions around the translated subproofs.

#include <map>
#include <string>

#include "ecumene/transform.hpp"

namespace ecumene {

namespace detail {

inline RuleId nek_rule_of(RuleId r) {
  switch (r) {
    case RuleId::imp_intro: return RuleId::imp_i_intro;
    case RuleId::imp_elim: return RuleId::imp_i_elim;
    case RuleId::or_intro_1: return RuleId::or_i_intro_1;
    case RuleId::or_intro_2: return RuleId::or_i_intro_2;
    case RuleId::or_elim: return RuleId::or_i_elim;
    case RuleId::ex_intro: return RuleId::ex_i_intro;
    case RuleId::ex_elim: return RuleId::ex_i_elim;
    default: return r;
  }
}

inline RuleId eci_rule_of(RuleId r) {
  switch (r) {
    case RuleId::imp_i_intro: return RuleId::imp_intro;
    case RuleId::imp_i_elim: return RuleId::imp_elim;
    case RuleId::or_i_intro_1: return RuleId::or_intro_1;
    case RuleId::or_i_intro_2: return RuleId::or_intro_2;
    case RuleId::or_i_elim: return RuleId::or_elim;
    case RuleId::ex_i_intro: return RuleId::ex_intro;
    case RuleId::ex_i_elim: return RuleId::ex_elim;
    default: return r;
  }
}

/// The formula ~A discharged by a refutation step, read off its leaves when there are any.
inline Formula discharged_formula(const Proof& body, int l, const Formula& fallback) {
  auto open = open_labels(body);
  auto it = open.find(l);
  return it == open.end() ? fallback : it->second;
}

/// forall_i x ~A(x) for the NE_K existential rules.
inline Formula nek_all_neg(const Formula& ex) {
  return forall(Flavor::Int, ex.var(), neg(Flavor::Int, ex.body()));
}

/// bot from z (a classical-rooted NE_K formula) and proofs of the hypotheses its
/// introduction rule discharges.
inline Proof nek_cls_elim(const Formula& z, Proof zp, std::vector<Proof> hs, int which = 1) {
  Builder b{SystemId::NEK};
  switch (z.kind()) {
    case FormulaKind::Or: return b.falsum(RuleId::or_c_elim, {std::move(zp), std::move(hs[0]), std::move(hs[1])});
    case FormulaKind::Imp: return b.falsum(RuleId::imp_c_elim, {std::move(zp), std::move(hs[0]), std::move(hs[1])});
    case FormulaKind::Exists: return b.falsum(RuleId::ex_c_elim, {std::move(zp), std::move(hs[0])});
    case FormulaKind::Atom: return b.falsum(RuleId::atom_c_elim, {std::move(zp), std::move(hs[0])});
    case FormulaKind::And:
      return b.falsum(which == 1 ? RuleId::and_c_elim_1 : RuleId::and_c_elim_2, {std::move(zp), std::move(hs[0])});
    default: throw TransformError("no classical elimination for " + print_formula(z, SystemId::NEK));
  }
}

/// Hypotheses discharged by the introduction rule of z (premise `which` for and_c).
inline std::vector<Formula> nek_cls_hyps(const Formula& z, int which = 1) {
  Builder b{SystemId::NEK};
  switch (z.kind()) {
    case FormulaKind::Or: return {b.n(z.left()), b.n(z.right())};
    case FormulaKind::Imp: return {z.left(), b.n(z.right())};
    case FormulaKind::Exists: return {nek_all_neg(z)};
    case FormulaKind::Atom: return {b.n(with_flavor(z, Flavor::Int))};
    case FormulaKind::And: return {b.n(which == 1 ? z.left() : z.right())};
    default: throw TransformError("no classical introduction for " + print_formula(z, SystemId::NEK));
  }
}

inline RuleId nek_cls_intro_rule(const Formula& z) {
  switch (z.kind()) {
    case FormulaKind::Or: return RuleId::or_c_intro;
    case FormulaKind::Imp: return RuleId::imp_c_intro;
    case FormulaKind::Exists: return RuleId::ex_c_intro;
    case FormulaKind::Atom: return RuleId::atom_c_intro;
    default: return RuleId::and_c_intro;
  }
}

/// ~x (x intuitionistic-rooted, classicalize(x) = z) from the hypotheses of z's
/// introduction rule, which are the open leaves `ls`.
inline Proof nek_neg_from_hyps(const Formula& x, const std::vector<int>& ls, const std::vector<Formula>& hs,
                               LabelAllocator& alloc, int which) {
  Builder b{SystemId::NEK};
  int k = alloc();
  switch (x.kind()) {
    case FormulaKind::Or: {
      int k1 = alloc(), k2 = alloc();
      Proof split = b.or_elim(hyp(k, x), k1, b.imp_elim(hyp(ls[0], hs[0]), hyp(k1, x.left())), k2,
                              b.imp_elim(hyp(ls[1], hs[1]), hyp(k2, x.right())));
      return b.imp_intro(x, k, std::move(split));
    }
    case FormulaKind::Imp:
      return b.imp_intro(x, k, b.imp_elim(hyp(ls[1], hs[1]), b.imp_elim(hyp(k, x), hyp(ls[0], hs[0]))));
    case FormulaKind::Exists: {
      int k1 = alloc();
      std::string a = fresh_eigen({x, hs[0]});
      Proof inst = b.imp_elim(b.all_elim(hyp(ls[0], hs[0]), Term::param(a)), hyp(k1, instance(x, a)));
      return b.imp_intro(x, k, b.ex_elim(hyp(k, x), a, k1, std::move(inst)));
    }
    case FormulaKind::And:
      return b.imp_intro(x, k, b.imp_elim(hyp(ls[0], hs[0]), b.and_elim(which, hyp(k, x))));
    default: throw TransformError("unexpected formula " + print_formula(x, SystemId::NEK));
  }
}

/// classicalize(x) from a refutation whose ~x leaves carry label l.
inline Proof nek_refute_to(const Formula& x, Proof ref, int l, LabelAllocator& alloc) {
  Builder b{SystemId::NEK};
  if (x.is(FormulaKind::Bot)) {
    int k = alloc();
    return graft(ref, l, b.imp_intro(bot(), k, hyp(k, bot())), alloc);
  }
  if (x.is(FormulaKind::Atom) && x.flavor() == Flavor::Int)
    return infer(RuleId::atom_c_intro, with_flavor(x, Flavor::Cls), {std::move(ref)}, {l});
  Formula z = has_classical_root(x) ? x : with_flavor(x, Flavor::Cls);
  int premises = z.is(FormulaKind::And) ? 2 : 1;
  std::vector<Proof> ps;
  std::vector<int> ds;
  for (int which = 1; which <= premises; ++which) {
    std::vector<Formula> hs = nek_cls_hyps(z, which);
    std::vector<int> ls;
    for (std::size_t i = 0; i < hs.size(); ++i) ls.push_back(alloc());
    Proof not_x;
    if (has_classical_root(x)) {
      int k = alloc();
      std::vector<Proof> hp;
      for (std::size_t i = 0; i < hs.size(); ++i) hp.push_back(hyp(ls[i], hs[i]));
      not_x = b.imp_intro(x, k, nek_cls_elim(z, hyp(k, x), std::move(hp), which));
    } else {
      not_x = nek_neg_from_hyps(x, ls, hs, alloc, which);
    }
    ps.push_back(graft(which == 1 ? ref : copy_fresh(ref, alloc), l, not_x, alloc));
    ds.insert(ds.end(), ls.begin(), ls.end());
  }
  return infer(nek_cls_intro_rule(z), z, std::move(ps), std::move(ds));
}

/// bot from proofs of classicalize(x) and ~x.
inline Proof nek_clash(const Formula& x, Proof zp, Proof negp, LabelAllocator& alloc) {
  Builder b{SystemId::NEK};
  if (x.is(FormulaKind::Bot) || has_classical_root(x)) return b.imp_elim(std::move(negp), std::move(zp));
  // the body of z |- ~~x, with Pi1* on the z leaves and Pi2* on the ~x leaves
  Formula z = with_flavor(x, Flavor::Cls);
  Proof g = relabel_all(glivenko1_internal(SystemId::NEK, z), alloc);
  int zl = open_labels(g).begin()->first;
  Proof body = graft(g.premises[0], zl, zp, alloc);
  return graft(body, g.discharges[0], negp, alloc);
}

inline Proof eci_to_nek_rec(const Proof& p, LabelAllocator& alloc) {
  if (p.is_hyp()) return hyp(p.label, tnek(p.conclusion));
  std::vector<Proof> ps;
  for (const auto& q : p.premises) ps.push_back(eci_to_nek_rec(q, alloc));
  if (p.rule == RuleId::i_c) {
    Formula a = discharged_formula(p.premises[0], p.discharges[0], neg(Flavor::Neutral, p.conclusion.body())).left();
    return nek_refute_to(tnek(a), std::move(ps[0]), p.discharges[0], alloc);
  }
  if (p.rule == RuleId::e_c) {
    Formula a = p.premises[1].conclusion.left();
    return nek_clash(tnek(a), std::move(ps[0]), std::move(ps[1]), alloc);
  }
  if (p.rule == RuleId::all_intro || p.rule == RuleId::all_elim)
    throw TransformError("eci_to_nek needs a proof without universal quantifiers");
  Proof out = p;
  out.rule = nek_rule_of(p.rule);
  out.conclusion = tnek(p.conclusion);
  out.premises = std::move(ps);
  return out;
}

/// The refutation `ref` with its NE_K introduction hypotheses (labels `ds`)
/// derived in ECI from ~w, where ~w carries label m.
inline Proof eci_fill_hyps(const Formula& z, Proof ref, const std::vector<int>& ds, int m, const Formula& w,
                           LabelAllocator& alloc) {
  Builder b{SystemId::ECI};
  Proof not_w = hyp(m, b.n(w));
  switch (z.kind()) {
    case FormulaKind::Or: {
      for (int j = 0; j < 2; ++j) {
        const Formula& side = j == 0 ? w.left() : w.right();
        int k = alloc();
        Proof nside = b.imp_intro(side, k, b.imp_elim(not_w, b.or_intro(j + 1, hyp(k, side), w)));
        ref = graft(ref, ds[j], nside, alloc);
      }
      return ref;
    }
    case FormulaKind::Imp: {
      int k = alloc();
      Proof nb = b.imp_intro(w.right(), k, b.imp_elim(not_w, b.imp_intro(w.left(), alloc(), hyp(k, w.right()))));
      Proof body = b.bot_elim(w.right(), graft(ref, ds[1], nb, alloc));
      return b.imp_elim(not_w, b.imp_intro(w.left(), ds[0], std::move(body)));
    }
    case FormulaKind::Exists: {
      std::set<std::string> avoid = names_in(ref);
      std::string a = fresh_eigen({w}, avoid);
      int k = alloc();
      Formula inst = instance(w, a);
      Proof each = b.imp_intro(inst, k, b.imp_elim(not_w, b.ex_intro(w, Term::param(a), hyp(k, inst))));
      Formula all = forall(Flavor::Neutral, w.var(), b.n(w.body()));
      return graft(ref, ds[0], b.all_intro(all, a, std::move(each)), alloc);
    }
    default: throw TransformError("unexpected formula " + print_formula(z, SystemId::NEK));
  }
}

/// graft, except that a vacuous `l` still keeps repl's open assumptions:
/// host becomes the left half of an and_intro/and_elim_1 detour with repl.
inline Proof graft_keeping(const Proof& host, int l, const Proof& repl, LabelAllocator& alloc) {
  if (open_labels(host).count(l)) return graft(host, l, repl, alloc);
  Builder b{SystemId::ECI};
  return b.and_elim(1, b.and_intro(host, repl));
}

inline Proof nek_to_eci_rec(const Proof& p, LabelAllocator& alloc) {
  Builder b{SystemId::ECI};
  if (p.is_hyp()) return hyp(p.label, untnek(p.conclusion));
  if (p.rule == RuleId::all_c_intro || p.rule == RuleId::all_c_elim)
    throw TransformError("nek_to_eci cannot translate classical universal rules");
  std::vector<Proof> ps;
  for (const auto& q : p.premises) ps.push_back(nek_to_eci_rec(q, alloc));
  const Formula& c = p.conclusion;
  switch (p.rule) {
    case RuleId::atom_c_intro: return infer(RuleId::i_c, untnek(c), std::move(ps), p.discharges);
    case RuleId::atom_c_elim: return b.falsum(RuleId::e_c, std::move(ps));
    case RuleId::or_c_intro:
    case RuleId::imp_c_intro:
    case RuleId::ex_c_intro: {
      Formula w = untnek(star(c));
      int m = alloc();
      Proof body = eci_fill_hyps(c, std::move(ps[0]), p.discharges, m, w, alloc);
      return infer(RuleId::i_c, label(w), {std::move(body)}, {m});
    }
    case RuleId::and_c_intro: {
      // ~B from [A] and ~(A /\ B) closes the second refutation; that yields ~A for the first
      Formula w = untnek(star(c));
      int m = alloc(), k1 = alloc(), k2 = alloc();
      Proof nb = b.imp_intro(w.right(), k2,
                             b.imp_elim(hyp(m, b.n(w)), b.and_intro(hyp(k1, w.left()), hyp(k2, w.right()))));
      Proof na = b.imp_intro(w.left(), k1, graft(ps[1], p.discharges[1], nb, alloc));
      return infer(RuleId::i_c, label(w), {graft_keeping(ps[0], p.discharges[0], na, alloc)}, {m});
    }
    case RuleId::and_c_elim_1:
    case RuleId::and_c_elim_2: {
      Formula w = untnek(star(p.premises[0].conclusion));
      int k = alloc();
      int j = p.rule == RuleId::and_c_elim_1 ? 1 : 2;
      Proof nw = b.imp_intro(w, k, b.imp_elim(std::move(ps[1]), b.and_elim(j, hyp(k, w))));
      return b.falsum(RuleId::e_c, {std::move(ps[0]), std::move(nw)});
    }
    case RuleId::or_c_elim: {
      Formula w = untnek(star(p.premises[0].conclusion));
      int k = alloc(), k1 = alloc(), k2 = alloc();
      Proof split = b.or_elim(hyp(k, w), k1, b.imp_elim(std::move(ps[1]), hyp(k1, w.left())), k2,
                              b.imp_elim(std::move(ps[2]), hyp(k2, w.right())));
      return b.falsum(RuleId::e_c, {std::move(ps[0]), b.imp_intro(w, k, std::move(split))});
    }
    case RuleId::imp_c_elim: {
      Formula w = untnek(star(p.premises[0].conclusion));
      int k = alloc();
      Proof nw = b.imp_intro(w, k, b.imp_elim(std::move(ps[2]), b.imp_elim(hyp(k, w), std::move(ps[1]))));
      return b.falsum(RuleId::e_c, {std::move(ps[0]), std::move(nw)});
    }
    case RuleId::ex_c_elim: {
      Formula w = untnek(star(p.premises[0].conclusion));
      std::string a = fresh_eigen({w}, names_in(ps[1]));
      int k = alloc(), k1 = alloc();
      Proof inst = b.imp_elim(b.all_elim(std::move(ps[1]), Term::param(a)), hyp(k1, instance(w, a)));
      Proof nw = b.imp_intro(w, k, b.ex_elim(hyp(k, w), a, k1, std::move(inst)));
      return b.falsum(RuleId::e_c, {std::move(ps[0]), std::move(nw)});
    }
    default: break;
  }
  Proof out = p;
  out.rule = eci_rule_of(p.rule);
  out.conclusion = untnek(c);
  out.premises = std::move(ps);
  return out;
}

}  // namespace detail

/// t_nek[Gamma] |- t_nek[A] in NE_K from Gamma |- A in ECI.
inline Proof eci_to_nek(const Proof& p) {
  detail::require_checks(SystemId::ECI, p, "input");
  if (proof_contains_forall(p)) throw TransformError("eci_to_nek needs a proof without universal quantifiers");
  LabelAllocator alloc(max_label(p) + 1);
  return detail::eci_to_nek_rec(p, alloc);
}

/// untranslate_nek[Gamma] |- untranslate_nek[A] in ECI from a NE_K proof.
inline Proof nek_to_eci(const Proof& p) {
  detail::require_checks(SystemId::NEK, p, "input");
  LabelAllocator alloc(max_label(p) + 1);
  return detail::nek_to_eci_rec(p, alloc);
}

}  // namespace ecumene
