#pragma once

// Proof-producing constructions. Each returns a tree the kernel accepts; the
// tests re-check every output rather than trusting this file.

#include <stdexcept>
#include <string>

#include "ecumene/kernel.hpp"
#include "ecumene/proof_build.hpp"
#include "ecumene/translate.hpp"

namespace ecumene {

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Node constructors that fill in conclusions and pick the rule ids of a system.
struct Builder {
  SystemId sys;

  bool single() const { return !is_ecumenical(sys); }
  Flavor ifl() const { return intuitionistic_flavor(sys); }
  Formula n(const Formula& a) const { return neg(negation_flavor(sys), a); }
  RuleId pick(RuleId ecumenical, RuleId plain) const { return single() ? plain : ecumenical; }

  Proof imp_intro(const Formula& a, int l, Proof body) const {
    Formula c = imp(ifl(), a, body.conclusion);
    return infer(pick(RuleId::imp_i_intro, RuleId::imp_intro), c, {std::move(body)}, {l});
  }
  Proof imp_elim(Proof major, Proof minor) const {
    Formula c = major.conclusion.right();
    return infer(pick(RuleId::imp_i_elim, RuleId::imp_elim), c, {std::move(major), std::move(minor)});
  }
  Proof or_intro(int j, Proof p, const Formula& target) const {
    RuleId r = j == 1 ? pick(RuleId::or_i_intro_1, RuleId::or_intro_1) : pick(RuleId::or_i_intro_2, RuleId::or_intro_2);
    return infer(r, target, {std::move(p)});
  }
  Proof or_elim(Proof major, int l1, Proof left, int l2, Proof right) const {
    Formula c = left.conclusion;
    return infer(pick(RuleId::or_i_elim, RuleId::or_elim), c, {std::move(major), std::move(left), std::move(right)},
                 {l1, l2});
  }
  Proof ex_intro(const Formula& target, const Term& t, Proof p) const {
    return infer(pick(RuleId::ex_i_intro, RuleId::ex_intro), target, {std::move(p)}, {}, std::nullopt, t);
  }
  Proof ex_elim(Proof major, const std::string& a, int l, Proof minor) const {
    Formula c = minor.conclusion;
    return infer(pick(RuleId::ex_i_elim, RuleId::ex_elim), c, {std::move(major), std::move(minor)}, {l}, a);
  }
  Proof all_intro(const Formula& target, const std::string& a, Proof p) const {
    return infer(RuleId::all_intro, target, {std::move(p)}, {}, a);
  }
  Proof all_elim(Proof major, const Term& t) const {
    Formula c = substitute(major.conclusion.body(), major.conclusion.var(), t);
    return infer(RuleId::all_elim, c, {std::move(major)}, {}, std::nullopt, t);
  }
  Proof and_intro(Proof a, Proof b) const {
    Formula c = conj(shared_flavor(sys), a.conclusion, b.conclusion);
    return infer(RuleId::and_intro, c, {std::move(a), std::move(b)});
  }
  Proof and_elim(int j, Proof p) const {
    Formula c = j == 1 ? p.conclusion.left() : p.conclusion.right();
    return infer(j == 1 ? RuleId::and_elim_1 : RuleId::and_elim_2, c, {std::move(p)});
  }
  Proof bot_elim(const Formula& c, Proof p) const { return infer(RuleId::bot_elim, c, {std::move(p)}); }
  Proof falsum(RuleId r, std::vector<Proof> ps) const { return infer(r, bot(), std::move(ps)); }
};

inline Formula instance(const Formula& quantified, const std::string& a) {
  return substitute(quantified.body(), quantified.var(), Term::param(a));
}

inline std::string fresh_eigen(std::initializer_list<Formula> fs, std::set<std::string> avoid = {}) {
  for (const auto& f : fs) collect_names(f, avoid);
  return fresh_param(avoid);
}

inline void require_wf(SystemId s, const Formula& f) {
  auto v = well_formed(s, f);
  if (!v.empty())
    throw TransformError("not a " + std::string(system_name(s)) + " formula: " + v.front().message + " at " +
                         v.front().path);
}

inline void require_ecumenical(SystemId s) {
  if (!is_ecumenical(s)) throw TransformError("construction needs system ne or nek");
}

inline CheckReport require_checks(SystemId s, const Proof& p, const char* what) {
  CheckReport rep = check(s, p);
  if (!rep) throw TransformError(std::string(what) + " does not check in " + system_name(s) + ": " + rep.path + ": " +
                                 rep.message);
  return rep;
}

inline bool is_labelled_atom(const Formula& a) { return a.is(FormulaKind::CLabel) && a.body().is(FormulaKind::Atom); }

/// a^c from a refutation of ~a whose ~a leaves carry label l.
inline Proof label_intro(const Formula& a, int l, Proof refutation, LabelAllocator& alloc) {
  Builder b{SystemId::ECI};
  if (!is_labelled_atom(a)) return infer(RuleId::i_c, label(a), {std::move(refutation)}, {l});
  // (p)^c labelled again is (p)^c; refute ~p instead.
  int m = alloc(), k = alloc();
  Proof not_a = b.imp_intro(a, k, b.falsum(RuleId::e_c, {hyp(k, a), hyp(m, b.n(a.body()))}));
  return infer(RuleId::i_c, a, {graft(refutation, l, not_a, alloc)}, {m});
}

/// bot from a^c and ~a.
inline Proof label_elim(const Formula& a, Proof labelled, Proof negated) {
  Builder b{SystemId::ECI};
  if (is_labelled_atom(a)) return b.imp_elim(std::move(negated), std::move(labelled));
  return b.falsum(RuleId::e_c, {std::move(labelled), std::move(negated)});
}

inline void require_classical_root(const Formula& c) {
  if (!has_classical_root(c)) throw TransformError("main operator is not classical");
}

/// star(c) |- c, with the star(c) leaf labelled `top`.
inline Proof star_embed_at(SystemId s, const Formula& c, int top) {
  Builder b{s};
  Formula cs = star(c);
  switch (c.kind()) {
    case FormulaKind::Or: {
      Proof left = b.imp_elim(hyp(1 + top, b.n(c.left())), hyp(3 + top, c.left()));
      Proof right = b.imp_elim(hyp(2 + top, b.n(c.right())), hyp(4 + top, c.right()));
      Proof split = b.or_elim(hyp(top, cs), 3 + top, std::move(left), 4 + top, std::move(right));
      return infer(RuleId::or_c_intro, c, {std::move(split)}, {1 + top, 2 + top});
    }
    case FormulaKind::Imp: {
      Proof mp = b.imp_elim(hyp(top, cs), hyp(1 + top, c.left()));
      return infer(RuleId::imp_c_intro, c, {b.imp_elim(hyp(2 + top, b.n(c.right())), std::move(mp))},
                   {1 + top, 2 + top});
    }
    case FormulaKind::Exists: {
      std::string a = fresh_eigen({c});
      Formula all_not = forall(shared_flavor(s), c.var(), b.n(c.body()));
      Proof refute = b.imp_elim(b.all_elim(hyp(1 + top, all_not), Term::param(a)), hyp(2 + top, instance(c, a)));
      return infer(RuleId::ex_c_intro, c, {b.ex_elim(hyp(top, cs), a, 2 + top, std::move(refute))}, {1 + top});
    }
    case FormulaKind::And: {
      Proof l = b.imp_elim(hyp(1 + top, b.n(c.left())), b.and_elim(1, hyp(top, cs)));
      Proof r = b.imp_elim(hyp(2 + top, b.n(c.right())), b.and_elim(2, hyp(top, cs)));
      return infer(RuleId::and_c_intro, c, {std::move(l), std::move(r)}, {1 + top, 2 + top});
    }
    case FormulaKind::Atom:
      return infer(RuleId::atom_c_intro, c, {b.imp_elim(hyp(1 + top, b.n(cs)), hyp(top, cs))}, {1 + top});
    case FormulaKind::Forall: {
      std::string a = fresh_eigen({c});
      Formula ex_not = exists(Flavor::Int, c.var(), b.n(c.body()));
      Proof refute = b.imp_elim(hyp(2 + top, b.n(instance(c, a))), b.all_elim(hyp(top, cs), Term::param(a)));
      return infer(RuleId::all_c_intro, c, {b.ex_elim(hyp(1 + top, ex_not), a, 2 + top, std::move(refute))}, {1 + top});
    }
    default: throw TransformError("main operator is not classical");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Internal Glivenko results for NE / NE_K

/// C |- ~~C* for a classical main operator other than forall_c.
inline Proof glivenko1_internal(SystemId s, const Formula& c) {
  using detail::Builder;
  detail::require_ecumenical(s);
  detail::require_wf(s, c);
  detail::require_classical_root(c);
  Builder b{s};
  Formula cs = star(c);
  Formula ncs = b.n(cs);
  switch (c.kind()) {
    case FormulaKind::Or: {
      Proof not_a = b.imp_intro(c.left(), 1, b.imp_elim(hyp(3, ncs), b.or_intro(1, hyp(1, c.left()), cs)));
      Proof not_b = b.imp_intro(c.right(), 2, b.imp_elim(hyp(3, ncs), b.or_intro(2, hyp(2, c.right()), cs)));
      return b.imp_intro(ncs, 3, b.falsum(RuleId::or_c_elim, {hyp(4, c), std::move(not_a), std::move(not_b)}));
    }
    case FormulaKind::Imp: {
      Proof vac = b.imp_intro(c.left(), 0, hyp(1, c.right()));
      Proof not_b = b.imp_intro(c.right(), 1, b.imp_elim(hyp(3, ncs), std::move(vac)));
      Proof contra = b.falsum(RuleId::imp_c_elim, {hyp(4, c), hyp(2, c.left()), std::move(not_b)});
      Proof a_imp_b = b.imp_intro(c.left(), 2, b.bot_elim(c.right(), std::move(contra)));
      return b.imp_intro(ncs, 3, b.imp_elim(hyp(3, ncs), std::move(a_imp_b)));
    }
    case FormulaKind::Exists: {
      std::string a = detail::fresh_eigen({c});
      Formula inst = detail::instance(c, a);
      Proof not_inst = b.imp_intro(inst, 1, b.imp_elim(hyp(2, ncs), b.ex_intro(cs, Term::param(a), hyp(1, inst))));
      Proof all_not = b.all_intro(forall(shared_flavor(s), c.var(), b.n(c.body())), a, std::move(not_inst));
      return b.imp_intro(ncs, 2, b.falsum(RuleId::ex_c_elim, {hyp(3, c), std::move(all_not)}));
    }
    case FormulaKind::And: {
      Proof both = b.imp_elim(hyp(3, ncs), b.and_intro(hyp(1, c.left()), hyp(2, c.right())));
      Proof not_c = b.imp_intro(c.right(), 2, std::move(both));
      Proof not_b = b.imp_intro(c.left(), 1, b.falsum(RuleId::and_c_elim_2, {hyp(4, c), std::move(not_c)}));
      return b.imp_intro(ncs, 3, b.falsum(RuleId::and_c_elim_1, {hyp(4, c), std::move(not_b)}));
    }
    case FormulaKind::Atom:
      return b.imp_intro(ncs, 1, b.falsum(RuleId::atom_c_elim, {hyp(2, c), hyp(1, ncs)}));
    case FormulaKind::Forall:
      throw TransformError("no internal Glivenko result for a classical universal quantifier");
    default: throw TransformError("main operator is not classical");
  }
}

/// C* |- C. Accepts forall_c in NE_K.
inline Proof star_embed(SystemId s, const Formula& c) {
  detail::require_ecumenical(s);
  detail::require_wf(s, c);
  detail::require_classical_root(c);
  return detail::star_embed_at(s, c, 1);
}

/// ~C |- ~C*. Contraposes star_embed, except for forall_c.
inline Proof neg_forallc_elim(const Formula& body, const std::string& x, bool to_existsc);

inline Proof glivenko2_internal(SystemId s, const Formula& c) {
  detail::require_ecumenical(s);
  detail::require_wf(s, c);
  detail::require_classical_root(c);
  if (c.is(FormulaKind::Forall)) return neg_forallc_elim(c.body(), c.var(), false);
  detail::Builder b{s};
  Proof embed = detail::star_embed_at(s, c, 1);
  int top = max_label(embed) + 1;
  return b.imp_intro(star(c), 1, b.imp_elim(hyp(top, b.n(c)), std::move(embed)));
}

// ---------------------------------------------------------------------------
// ECI

/// a^c |- ~~a
inline Proof eci_label_to_dn(const Formula& a) {
  detail::require_wf(SystemId::ECI, a);
  detail::Builder b{SystemId::ECI};
  return b.imp_intro(b.n(a), 1, detail::label_elim(a, hyp(2, label(a)), hyp(1, b.n(a))));
}

/// ~~a |- a^c
inline Proof eci_dn_to_label(const Formula& a) {
  detail::require_wf(SystemId::ECI, a);
  detail::Builder b{SystemId::ECI};
  LabelAllocator alloc(3);
  return detail::label_intro(a, 1, b.imp_elim(hyp(2, b.n(b.n(a))), hyp(1, b.n(a))), alloc);
}

/// (~a)^c |- ~a
inline Proof eci_glivenko2(const Formula& a) {
  detail::require_wf(SystemId::ECI, a);
  detail::Builder b{SystemId::ECI};
  Proof triple = eci_label_to_dn(b.n(a));
  Proof dn = b.imp_intro(b.n(a), 4, b.imp_elim(hyp(4, b.n(a)), hyp(3, a)));
  return b.imp_intro(a, 3, b.imp_elim(std::move(triple), std::move(dn)));
}

/// forward: (~a)^c |- ~(a^c); backward: ~(a^c) |- (~a)^c
inline Proof eci_neg_label_comm(const Formula& a, bool forward) {
  detail::require_wf(SystemId::ECI, a);
  detail::Builder b{SystemId::ECI};
  Formula na = b.n(a);
  if (forward) {
    Proof dn = b.imp_intro(na, 3, detail::label_elim(a, hyp(1, label(a)), hyp(3, na)));
    return b.imp_intro(label(a), 1, detail::label_elim(na, hyp(2, label(na)), std::move(dn)));
  }
  LabelAllocator alloc(4);
  Proof inner = detail::label_intro(a, 3, b.imp_elim(hyp(1, b.n(na)), hyp(3, na)), alloc);
  return detail::label_intro(na, 1, b.imp_elim(hyp(2, b.n(label(a))), std::move(inner)), alloc);
}

// ---------------------------------------------------------------------------
// Classical universal quantification in NE_K

/// ~forall_c x A |- exists_c x ~A  (to_existsc) or  ~forall_c x A |- ~forall_i x A.
inline Proof neg_forallc_elim(const Formula& body, const std::string& x, bool to_existsc) {
  Formula fc = forall(Flavor::Cls, x, body);
  detail::require_wf(SystemId::NEK, fc);
  detail::Builder b{SystemId::NEK};
  std::string a = detail::fresh_eigen({fc});
  Formula inst = detail::instance(fc, a);
  Formula ex_not = exists(Flavor::Int, x, b.n(body));
  Proof refute;
  if (to_existsc) {
    Formula all_nn = forall(Flavor::Int, x, b.n(b.n(body)));
    refute = b.imp_elim(b.all_elim(hyp(3, all_nn), Term::param(a)), hyp(1, b.n(inst)));
  } else {
    refute = b.imp_elim(hyp(1, b.n(inst)), b.all_elim(hyp(3, forall(Flavor::Int, x, body)), Term::param(a)));
  }
  Proof all_c = infer(RuleId::all_c_intro, fc, {b.ex_elim(hyp(2, ex_not), a, 1, std::move(refute))}, {2});
  Proof contra = b.imp_elim(hyp(4, b.n(fc)), std::move(all_c));
  if (to_existsc) return infer(RuleId::ex_c_intro, exists(Flavor::Cls, x, b.n(body)), {std::move(contra)}, {3});
  return b.imp_intro(forall(Flavor::Int, x, body), 3, std::move(contra));
}

namespace detail {

/// Contracts every ex_i_elim whose major premise is ex_i_intro over a leaf labelled m.
inline Proof contract_exists_detours(const Proof& p, int m, LabelAllocator& alloc) {
  if (p.is_hyp()) return p;
  Proof q = p;
  for (auto& r : q.premises) r = contract_exists_detours(r, m, alloc);
  if (q.rule != RuleId::ex_i_elim) return q;
  const Proof& major = q.premises[0];
  if (major.is_hyp() || major.rule != RuleId::ex_i_intro || !major.premises[0].is_hyp() ||
      major.premises[0].label != m)
    return q;
  const Term& t = *major.witness;
  const std::string& a = *q.eigen;
  std::set<std::string> clash;
  collect_names(t, clash);
  clash.insert(a);
  std::set<std::string> avoid = names_in(q);
  avoid.insert(clash.begin(), clash.end());
  Proof minor = freshen_eigens(q.premises[1], clash, avoid);
  minor = rename_param(minor, a, t);
  return graft(minor, q.discharges[0], major.premises[0], alloc);
}

}  // namespace detail

/// The harmony reduction: all_c_elim directly below all_c_intro.
inline Proof forallc_detour_reduce(const Proof& p) {
  if (p.is_hyp() || p.rule != RuleId::all_c_elim || p.premises.empty() || p.premises[0].is_hyp() ||
      p.premises[0].rule != RuleId::all_c_intro)
    throw TransformError("no forall_c detour at the root");
  detail::require_checks(SystemId::NEK, p, "input");
  detail::Builder b{SystemId::NEK};
  const Proof& intro = p.premises[0];
  const Formula& fc = intro.conclusion;
  const Term& t = *p.witness;
  Formula not_inst = b.n(substitute(fc.body(), fc.var(), t));
  LabelAllocator alloc;
  alloc.reserve(p);
  int m = alloc();
  Proof witness = b.ex_intro(exists(Flavor::Int, fc.var(), b.n(fc.body())), t, hyp(m, not_inst));
  Proof body = graft(intro.premises[0], intro.discharges[0], witness, alloc);
  body = detail::contract_exists_detours(body, m, alloc);
  return b.imp_intro(not_inst, m, std::move(body));
}

/// From a refutation Gamma, ~forall_i x A |- bot, a proof of Gamma |- forall_c x A.
inline Proof nek_forallc_from_refutation(const Formula& body, const std::string& x, const Proof& refutation) {
  Formula fc = forall(Flavor::Cls, x, body);
  detail::require_wf(SystemId::NEK, fc);
  CheckReport rep = detail::require_checks(SystemId::NEK, refutation, "refutation");
  if (!rep.judgment.conclusion.is(FormulaKind::Bot)) throw TransformError("refutation does not conclude bot");
  detail::Builder b{SystemId::NEK};
  Formula fi = forall(Flavor::Int, x, body);
  LabelAllocator alloc;
  alloc.reserve(refutation);
  int l1 = alloc(), l2 = alloc(), l3 = alloc();
  std::string a = detail::fresh_eigen({fc}, names_in(refutation));
  Formula inst = detail::instance(fc, a);
  Proof refute = b.imp_elim(hyp(l1, b.n(inst)), b.all_elim(hyp(l2, fi), Term::param(a)));
  Proof not_fi = b.imp_intro(fi, l2, b.ex_elim(hyp(l3, exists(Flavor::Int, x, b.n(body))), a, l1, std::move(refute)));
  Proof grafted = graft_open(refutation, b.n(fi), not_fi, alloc);
  return infer(RuleId::all_c_intro, fc, {std::move(grafted)}, {l3});
}

/// From Gamma |- (forall x A)^c, a proof of Gamma |- ~~A(t/x).
inline Proof eci_forall_label_instantiate(const Proof& p, const Term& t) {
  CheckReport rep = detail::require_checks(SystemId::ECI, p, "proof");
  const Formula& c = rep.judgment.conclusion;
  if (!c.is(FormulaKind::CLabel) || !c.body().is(FormulaKind::Forall))
    throw TransformError("proof does not conclude a labelled universal formula");
  detail::Builder b{SystemId::ECI};
  Formula all = c.body();
  Formula inst = substitute(all.body(), all.var(), t);
  LabelAllocator alloc;
  alloc.reserve(p);
  int l1 = alloc(), l2 = alloc();
  Proof not_all = b.imp_intro(all, l1, b.imp_elim(hyp(l2, b.n(inst)), b.all_elim(hyp(l1, all), t)));
  return b.imp_intro(b.n(inst), l2, b.falsum(RuleId::e_c, {p, std::move(not_all)}));
}

/// The modus-ponens rewrite: from Gamma1, ~A |- bot and Gamma2 |- A -> B, a proof of
/// Gamma1, Gamma2 |- B^c.
inline Proof mp_classicalize(const Proof& refutation, const Proof& implication) {
  CheckReport r1 = detail::require_checks(SystemId::ECI, refutation, "refutation");
  CheckReport r2 = detail::require_checks(SystemId::ECI, implication, "implication");
  if (!r1.judgment.conclusion.is(FormulaKind::Bot)) throw TransformError("refutation does not conclude bot");
  const Formula& ab = r2.judgment.conclusion;
  if (!ab.is(FormulaKind::Imp)) throw TransformError("second proof does not conclude an implication");
  detail::Builder b{SystemId::ECI};
  LabelAllocator alloc;
  alloc.reserve(refutation);
  Proof imp2 = relabel_all(implication, alloc);
  int lb = alloc(), la = alloc();
  Proof not_a = b.imp_intro(ab.left(), la, b.imp_elim(hyp(lb, b.n(ab.right())), b.imp_elim(std::move(imp2), hyp(la, ab.left()))));
  bool found = false;
  Proof grafted = graft_open(refutation, b.n(ab.left()), not_a, alloc, &found);
  if (!found) throw TransformError("refutation has no open assumption " + print_formula(b.n(ab.left()), SystemId::ECI));
  return detail::label_intro(ab.right(), lb, std::move(grafted), alloc);
}

}  // namespace ecumene
