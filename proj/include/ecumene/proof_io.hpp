#pragma once

// Proof files: line-agnostic s-expressions.
//
//   node := (hyp <label> "<formula>")
//         | (<rule> "<conclusion>" [:d <label>...] [:eigen <ident>] [:wit "<term>"] <node>...)
//
// `;` starts a comment running to end of line.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecumene/proof.hpp"
#include "ecumene/syntax_io.hpp"

namespace ecumene {

class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

namespace detail {

struct SexpToken {
  enum Kind { Open, Close, String, Atom, End } kind;
  std::string text;
  std::size_t line;
};

class SexpLexer {
 public:
  explicit SexpLexer(std::string_view s) : s_(s) {}

  SexpToken next() {
    skip();
    if (i_ >= s_.size()) return {SexpToken::End, "", line_};
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      return {SexpToken::Open, "(", line_};
    }
    if (c == ')') {
      ++i_;
      return {SexpToken::Close, ")", line_};
    }
    if (c == '"') {
      std::size_t start_line = line_;
      ++i_;
      std::string out;
      while (true) {
        if (i_ >= s_.size()) throw ProofFormatError(start_line, "unterminated string");
        char d = s_[i_++];
        if (d == '"') break;
        if (d == '\n') ++line_;
        if (d == '\\' && i_ < s_.size() && (s_[i_] == '"' || s_[i_] == '\\')) d = s_[i_++];
        out += d;
      }
      return {SexpToken::String, out, start_line};
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != '"' && s_[i_] != ';')
      ++i_;
    return {SexpToken::Atom, std::string(s_.substr(start, i_ - start)), line_};
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '\n') {
        ++line_;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

class ProofReader {
 public:
  ProofReader(std::string_view text, SystemId dialect) : lex_(text), dialect_(dialect) { advance(); }

  Proof read_top() {
    Proof p = node();
    if (tok_.kind != SexpToken::End) throw ProofFormatError(tok_.line, "trailing input after proof");
    return p;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  Formula formula(const SexpToken& t) {
    try {
      return parse_formula(t.text, dialect_);
    } catch (const ParseError& e) {
      throw ProofFormatError(t.line, "in formula \"" + t.text + "\": " + e.what());
    }
  }

  static bool is_int(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  }

  Proof node() {
    if (tok_.kind != SexpToken::Open) throw ProofFormatError(tok_.line, "expected '('");
    advance();
    if (tok_.kind != SexpToken::Atom) throw ProofFormatError(tok_.line, "expected rule name or 'hyp'");
    std::string head = tok_.text;
    std::size_t line = tok_.line;
    advance();
    if (head == "hyp") {
      if (tok_.kind != SexpToken::Atom || !is_int(tok_.text)) throw ProofFormatError(tok_.line, "expected hypothesis label");
      int label = std::stoi(tok_.text);
      advance();
      if (tok_.kind != SexpToken::String) throw ProofFormatError(tok_.line, "expected quoted hypothesis formula");
      Formula f = formula(tok_);
      advance();
      close();
      return hyp(label, f);
    }
    auto rule = rule_from_name(head);
    if (!rule) throw ProofFormatError(line, "unknown rule '" + head + "'");
    if (tok_.kind != SexpToken::String) throw ProofFormatError(tok_.line, "expected quoted conclusion");
    Formula concl = formula(tok_);
    advance();
    std::vector<int> discharges;
    std::optional<std::string> eigen;
    std::optional<Term> witness;
    while (tok_.kind == SexpToken::Atom) {
      if (tok_.text == ":d") {
        advance();
        if (tok_.kind != SexpToken::Atom || !is_int(tok_.text)) throw ProofFormatError(tok_.line, ":d needs labels");
        while (tok_.kind == SexpToken::Atom && is_int(tok_.text)) {
          discharges.push_back(std::stoi(tok_.text));
          advance();
        }
      } else if (tok_.text == ":eigen") {
        advance();
        if (tok_.kind != SexpToken::Atom) throw ProofFormatError(tok_.line, ":eigen needs an identifier");
        eigen = tok_.text;
        advance();
      } else if (tok_.text == ":wit") {
        advance();
        if (tok_.kind != SexpToken::String) throw ProofFormatError(tok_.line, ":wit needs a quoted term");
        try {
          witness = parse_term(tok_.text);
        } catch (const ParseError& e) {
          throw ProofFormatError(tok_.line, std::string("in witness: ") + e.what());
        }
        advance();
      } else {
        throw ProofFormatError(tok_.line, "unknown option '" + tok_.text + "'");
      }
    }
    std::vector<Proof> premises;
    while (tok_.kind == SexpToken::Open) premises.push_back(node());
    close();
    return infer(*rule, concl, std::move(premises), std::move(discharges), std::move(eigen), std::move(witness));
  }

  void close() {
    if (tok_.kind != SexpToken::Close) throw ProofFormatError(tok_.line, "expected ')'");
    advance();
  }

  SexpLexer lex_;
  SexpToken tok_{SexpToken::End, "", 0};
  SystemId dialect_;
};

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool escape = c == '"' || (c == '\\' && (i + 1 == s.size() || s[i + 1] == '"' || s[i + 1] == '\\'));
    if (escape) out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void write_node(const Proof& p, SystemId d, int indent, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(indent), ' ');
  if (p.is_hyp()) {
    out << "(hyp " << p.label << " " << quote(print_formula(p.conclusion, d)) << ")";
    return;
  }
  out << "(" << rule_name(p.rule) << " " << quote(print_formula(p.conclusion, d));
  if (!p.discharges.empty()) {
    out << " :d";
    for (int l : p.discharges) out << " " << l;
  }
  if (p.eigen) out << " :eigen " << *p.eigen;
  if (p.witness) out << " :wit " << quote(print_term(*p.witness));
  for (const auto& q : p.premises) {
    out << "\n";
    write_node(q, d, indent + 2, out);
  }
  out << ")";
}

}  // namespace detail

inline Proof read_proof(std::string_view text, SystemId dialect) {
  return detail::ProofReader(text, dialect).read_top();
}

inline std::string write_proof(const Proof& p, SystemId dialect) {
  std::ostringstream out;
  detail::write_node(p, dialect, 0, out);
  out << "\n";
  return out.str();
}

}  // namespace ecumene
