#pragma once

// ASCII surface syntax: parsing and minimal-parenthesis printing.
//
//   ->   right-assoc, loosest
//   \/   left
//   /\   left
//   ~    prefix
//   ^c   postfix (ECI only), tightest
//   quantifier bodies extend as far right as possible.

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecumene/syntax.hpp"

namespace ecumene {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("col " + std::to_string(pos + 1) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Raised when the text is syntactically fine but uses a construct outside the dialect.
class DialectError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Bare free identifiers starting with u..z are variables; others are parameters.
inline bool is_variable_name(std::string_view name) {
  return !name.empty() && name.front() >= 'u' && name.front() <= 'z';
}

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Tilde, Label, And, Or, Imp, End };

struct Token {
  Tok kind;
  std::string text;
  char flavor = 0;  // 'i', 'c' or 0 for unsuffixed operators
  std::size_t pos = 0;
};

inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto suffix = [&](std::size_t at) -> char {
    if (at < s.size() && (s[at] == 'i' || s[at] == 'c') && (at + 1 >= s.size() || !ident_char(s[at + 1])))
      return s[at];
    return 0;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), 0, start});
      continue;
    }
    auto op = [&](Tok k, std::size_t len) {
      char fl = suffix(i + len);
      out.push_back({k, std::string(s.substr(i, len + (fl ? 1 : 0))), fl, start});
      i += len + (fl ? 1 : 0);
    };
    if (s.compare(i, 2, "->") == 0) {
      op(Tok::Imp, 2);
      continue;
    }
    if (s.compare(i, 2, "\\/") == 0) {
      op(Tok::Or, 2);
      continue;
    }
    if (s.compare(i, 2, "/\\") == 0) {
      op(Tok::And, 2);
      continue;
    }
    if (s.compare(i, 2, "^c") == 0) {
      out.push_back({Tok::Label, "^c", 0, start});
      i += 2;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", 0, start}); break;
      case ')': out.push_back({Tok::RParen, ")", 0, start}); break;
      case ',': out.push_back({Tok::Comma, ",", 0, start}); break;
      case '.': out.push_back({Tok::Dot, ".", 0, start}); break;
      case '~': out.push_back({Tok::Tilde, "~", 0, start}); break;
      default: throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    ++i;
  }
  out.push_back({Tok::End, "", 0, s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, SystemId dialect) : toks_(tokenize(text)), dialect_(dialect) {}

  Formula formula_eof() {
    Formula f = implication();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_eof() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(peek().pos, std::string("expected ") + what +
                                       (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
    return next();
  }

  Flavor binary_flavor(const Token& t, FormulaKind k) const {
    bool eco = is_ecumenical(dialect_);
    if (!eco) {
      if (t.flavor) throw DialectError(t.pos, "flavored operator '" + t.text + "' not in " + system_name(dialect_));
      return Flavor::Neutral;
    }
    if (k == FormulaKind::And) {
      if (dialect_ == SystemId::NE) {
        if (t.flavor) throw DialectError(t.pos, "flavored conjunction '" + t.text + "' not in ne");
        return Flavor::Neutral;
      }
      return t.flavor == 'c' ? Flavor::Cls : Flavor::Int;
    }
    if (!t.flavor) throw DialectError(t.pos, "operator '" + t.text + "' needs an i/c flavor in " + system_name(dialect_));
    return t.flavor == 'c' ? Flavor::Cls : Flavor::Int;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Imp) {
      const Token& t = next();
      Flavor fl = binary_flavor(t, FormulaKind::Imp);
      Formula rhs = implication();
      return imp(fl, lhs, rhs);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Or) {
      const Token& t = next();
      Flavor fl = binary_flavor(t, FormulaKind::Or);
      lhs = disj(fl, lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (peek().kind == Tok::And) {
      const Token& t = next();
      Flavor fl = binary_flavor(t, FormulaKind::And);
      lhs = conj(fl, lhs, unary());
    }
    return lhs;
  }

  bool quantifier(const Token& t, FormulaKind& kind, Flavor& fl) const {
    static const std::set<std::string> words = {"forall", "foralli", "forallc", "exists", "existsi", "existsc"};
    if (t.kind != Tok::Ident || !words.count(t.text)) return false;
    kind = t.text.rfind("forall", 0) == 0 ? FormulaKind::Forall : FormulaKind::Exists;
    char suffix = (t.text == "forall" || t.text == "exists") ? 0 : t.text.back();
    bool eco = is_ecumenical(dialect_);
    if (!eco) {
      if (suffix) throw DialectError(t.pos, "flavored quantifier '" + t.text + "' not in " + system_name(dialect_));
      fl = Flavor::Neutral;
      return true;
    }
    if (kind == FormulaKind::Forall) {
      if (suffix == 'c') {
        if (dialect_ == SystemId::NE) throw DialectError(t.pos, "forallc not in ne");
        fl = Flavor::Cls;
      } else {
        fl = shared_flavor(dialect_);
      }
      return true;
    }
    if (!suffix) throw DialectError(t.pos, "'exists' needs an i/c flavor in " + std::string(system_name(dialect_)));
    fl = suffix == 'c' ? Flavor::Cls : Flavor::Int;
    return true;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return neg(negation_flavor(dialect_), unary());
    FormulaKind qk;
    Flavor qf;
    if (quantifier(peek(), qk, qf)) {
      next();
      const Token& v = expect(Tok::Ident, "bound variable");
      expect(Tok::Dot, "'.' after bound variable");
      bound_.push_back(v.text);
      Formula body = implication();
      bound_.pop_back();
      return qk == FormulaKind::Forall ? forall(qf, v.text, body) : exists(qf, v.text, body);
    }
    return postfix();
  }

  Formula postfix() {
    Formula f = primary();
    while (peek().kind == Tok::Label) {
      const Token& t = next();
      if (dialect_ != SystemId::ECI) throw DialectError(t.pos, std::string("classical label not in ") + system_name(dialect_));
      f = label(f);
    }
    return f;
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = expect(Tok::Ident, "formula");
    if (t.text == "bot") return bot();
    std::string pred = t.text;
    Flavor fl = Flavor::Int;
    auto ends_with = [&](const char* suf) { return pred.size() > 2 && pred.compare(pred.size() - 2, 2, suf) == 0; };
    if (ends_with("_c")) {
      if (!is_ecumenical(dialect_))
        throw DialectError(t.pos, "classical atom '" + pred + "' not in " + system_name(dialect_) +
                                      (dialect_ == SystemId::ECI ? " (write (P)^c)" : ""));
      fl = Flavor::Cls;
      pred.resize(pred.size() - 2);
    } else if (ends_with("_i")) {
      pred.resize(pred.size() - 2);
    }
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        do args.push_back(term());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "')' after arguments");
      }
    }
    return atom(pred, std::move(args), fl);
  }

  Term term() {
    const Token& t = expect(Tok::Ident, "term");
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      if (!accept(Tok::RParen)) {
        do args.push_back(term());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "')' after arguments");
      }
      return Term::app(t.text, std::move(args));
    }
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == t.text) return Term::var(t.text);
    return is_variable_name(t.text) ? Term::var(t.text) : Term::param(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SystemId dialect_;
  std::vector<std::string> bound_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, SystemId dialect) {
  return detail::Parser(text, dialect).formula_eof();
}

inline Term parse_term(std::string_view text) { return detail::Parser(text, SystemId::NJ).term_eof(); }

// ---------------------------------------------------------------------------
// Printing

inline std::string print_term(const Term& t) {
  if (t.kind != TermKind::App) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += print_term(t.args[i]);
  }
  return out + ")";
}

namespace detail {

enum Prec { kTop = 0, kImp = 1, kOr = 2, kAnd = 3, kUnary = 4, kPostfix = 5 };

class Printer {
 public:
  explicit Printer(SystemId d) : d_(d) {}

  std::string print(const Formula& f, int ctx, bool rightmost) const {
    switch (f.kind()) {
      case FormulaKind::Bot: return "bot";
      case FormulaKind::Atom: return print_atom(f);
      case FormulaKind::CLabel: return "(" + print(f.body(), kTop, true) + ")^c";
      case FormulaKind::Imp:
        if (f.right().is(FormulaKind::Bot) && f.flavor() == negation_flavor(d_)) {
          std::string s = "~" + print(f.left(), kUnary, rightmost);
          return ctx > kUnary ? "(" + s + ")" : s;
        }
        return wrap(print(f.left(), kOr, false) + " " + op(f) + " " + print(f.right(), kImp, rightmost || ctx > kImp),
                    ctx > kImp);
      case FormulaKind::Or:
        return wrap(print(f.left(), kOr, false) + " " + op(f) + " " + print(f.right(), kAnd, rightmost || ctx > kOr),
                    ctx > kOr);
      case FormulaKind::And:
        return wrap(print(f.left(), kAnd, false) + " " + op(f) + " " + print(f.right(), kUnary, rightmost || ctx > kAnd),
                    ctx > kAnd);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::string x = f.var();
        Formula body = f.body();
        auto params = free_objects(body).params;
        if (params.count(x)) {
          std::set<std::string> avoid;
          collect_names(body, avoid);
          x = fresh_name(x, avoid);
          body = substitute(body, f.var(), Term::var(x));
        }
        std::string s = op(f) + " " + x + ". " + print(body, kTop, true);
        return wrap(s, ctx > kUnary || !rightmost);
      }
    }
    return "?";
  }

 private:
  static std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

  std::string print_atom(const Formula& f) const {
    std::string out = f.pred();
    if (f.flavor() == Flavor::Cls) out += "_c";
    if (!f.args().empty()) {
      out += "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ",";
        out += print_term(f.args()[i]);
      }
      out += ")";
    }
    return out;
  }

  std::string op(const Formula& f) const {
    const char* suffix = f.flavor() == Flavor::Cls ? "c" : f.flavor() == Flavor::Int ? "i" : "";
    switch (f.kind()) {
      case FormulaKind::And:
        if (d_ == SystemId::NEK) return std::string("/\\") + suffix;
        return "/\\";
      case FormulaKind::Or: return std::string("\\/") + suffix;
      case FormulaKind::Imp: return std::string("->") + suffix;
      case FormulaKind::Forall:
        if (d_ == SystemId::NEK) return std::string("forall") + suffix;
        return "forall";
      case FormulaKind::Exists: return std::string("exists") + suffix;
      default: return "?";
    }
  }

  SystemId d_;
};

}  // namespace detail

inline std::string print_formula(const Formula& f, SystemId dialect) {
  return detail::Printer(dialect).print(f, detail::kTop, true);
}

}  // namespace ecumene
