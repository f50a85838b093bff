#pragma once

// Formula translations between the dialects.
//
//   t_eci          ECI  -> NJ    A^c becomes ~~A
//   t_nek          ECI  -> NE_K  (A * B)^c becomes A *_c B  (forall-free input)
//   untranslate_nek NE_K -> ECI  right inverse of t_nek
//   star           flips the root classical operator to its intuitionistic twin
//   nek_to_ipl     NE_K -> NJ    t_eci after untranslate_nek

#include <stdexcept>
#include <string>

#include "ecumene/syntax.hpp"
#include "ecumene/syntax_io.hpp"

namespace ecumene {

class TranslationError : public std::runtime_error {
 public:
  enum class Kind { Dialect, UniversalQuantifier, NotClassical };
  TranslationError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class TranslationId { TECI, TNEK, UNTNEK, STAR, NEK_TO_IPL };

inline TranslationId parse_translation(const std::string& s) {
  if (s == "teci") return TranslationId::TECI;
  if (s == "tnek") return TranslationId::TNEK;
  if (s == "untnek") return TranslationId::UNTNEK;
  if (s == "star") return TranslationId::STAR;
  if (s == "nek2ipl") return TranslationId::NEK_TO_IPL;
  throw std::invalid_argument("unknown translation '" + s + "'");
}

namespace detail {

inline void require_dialect(SystemId d, const Formula& f) {
  auto v = well_formed(d, f);
  if (!v.empty())
    throw TranslationError(TranslationError::Kind::Dialect,
                           "not a " + std::string(system_name(d)) + " formula at " + v.front().path + ": " +
                               v.front().message);
}

inline Formula teci(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot: return f;
    case FormulaKind::CLabel: return neg(Flavor::Neutral, neg(Flavor::Neutral, teci(f.body())));
    case FormulaKind::Forall:
    case FormulaKind::Exists: return rebuild(f, teci(f.body()));
    default: return rebuild(f, teci(f.left()), teci(f.right()));
  }
}

/// Gives the root of an intuitionistic-rooted NE_K formula its classical flavor.
inline Formula classicalize(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bot: return f;
    case FormulaKind::Forall:
      throw TranslationError(TranslationError::Kind::UniversalQuantifier,
                             "universal quantifier under a classical label has no forall-free image");
    default: return with_flavor(f, Flavor::Cls);
  }
}

inline Formula tnek(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bot: return f;
    case FormulaKind::Forall:
      throw TranslationError(TranslationError::Kind::UniversalQuantifier,
                             "t_nek is defined only for formulas without universal quantifiers");
    case FormulaKind::Exists: return with_flavor(rebuild(f, tnek(f.body())), Flavor::Int);
    case FormulaKind::CLabel: return classicalize(tnek(f.body()));
    default: return with_flavor(rebuild(f, tnek(f.left()), tnek(f.right())), Flavor::Int);
  }
}

inline Formula untnek(const Formula& f) {
  auto wrap = [&](Formula g) { return f.flavor() == Flavor::Cls ? label(std::move(g)) : g; };
  switch (f.kind()) {
    case FormulaKind::Bot: return f;
    case FormulaKind::Atom: return wrap(with_flavor(f, Flavor::Int));
    case FormulaKind::Forall:
      if (f.flavor() == Flavor::Cls)
        throw TranslationError(TranslationError::Kind::UniversalQuantifier,
                               "classical universal quantifier has no ECI counterpart");
      return with_flavor(rebuild(f, untnek(f.body())), Flavor::Neutral);
    case FormulaKind::Exists: return wrap(with_flavor(rebuild(f, untnek(f.body())), Flavor::Neutral));
    case FormulaKind::CLabel: return f;
    default: return wrap(with_flavor(rebuild(f, untnek(f.left()), untnek(f.right())), Flavor::Neutral));
  }
}

}  // namespace detail

inline Formula t_eci(const Formula& f) {
  detail::require_dialect(SystemId::ECI, f);
  return detail::teci(f);
}

inline Formula t_nek(const Formula& f) {
  detail::require_dialect(SystemId::ECI, f);
  return detail::tnek(f);
}

/// Inverse of t_nek. Also maps forall_i homomorphically; only forall_c is rejected.
inline Formula untranslate_nek(const Formula& f) {
  detail::require_dialect(SystemId::NEK, f);
  return detail::untnek(f);
}

inline bool has_classical_root(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bot:
    case FormulaKind::CLabel: return false;
    default: return f.flavor() == Flavor::Cls;
  }
}

inline Formula star(const Formula& f) {
  if (!has_classical_root(f))
    throw TranslationError(TranslationError::Kind::NotClassical, "main operator is not classical");
  return with_flavor(f, Flavor::Int);
}

inline Formula nek_to_ipl(const Formula& f) {
  detail::require_dialect(SystemId::NEK, f);
  if (contains_forall(f))
    throw TranslationError(TranslationError::Kind::UniversalQuantifier,
                           "nek2ipl is defined only for formulas without universal quantifiers");
  return detail::teci(detail::untnek(f));
}

/// Dialect a translation reads.
inline SystemId translation_source(TranslationId t, SystemId star_system = SystemId::NEK) {
  switch (t) {
    case TranslationId::TECI:
    case TranslationId::TNEK: return SystemId::ECI;
    case TranslationId::UNTNEK:
    case TranslationId::NEK_TO_IPL: return SystemId::NEK;
    case TranslationId::STAR: return star_system;
  }
  return SystemId::ECI;
}

/// Dialect a translation writes.
inline SystemId translation_target(TranslationId t, SystemId star_system = SystemId::NEK) {
  switch (t) {
    case TranslationId::TECI:
    case TranslationId::NEK_TO_IPL: return SystemId::NJ;
    case TranslationId::TNEK: return SystemId::NEK;
    case TranslationId::UNTNEK: return SystemId::ECI;
    case TranslationId::STAR: return star_system;
  }
  return SystemId::NJ;
}

inline Formula apply_translation(TranslationId t, const Formula& f) {
  switch (t) {
    case TranslationId::TECI: return t_eci(f);
    case TranslationId::TNEK: return t_nek(f);
    case TranslationId::UNTNEK: return untranslate_nek(f);
    case TranslationId::STAR: return star(f);
    case TranslationId::NEK_TO_IPL: return nek_to_ipl(f);
  }
  return f;
}

}  // namespace ecumene
