#pragma once

// Runner for directories of *.proof files. Each file starts with
//   ;; system: <s> expect: ok|fail judgment: "<G |- A>"
// and the rest is one proof in the s-expression format.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ecumene/kernel.hpp"
#include "ecumene/proof_io.hpp"

namespace ecumene {

inline constexpr const char* corpus_version = "1.0";

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads "{f1, f2} |- g"; commas inside parentheses do not split.
inline Judgment parse_judgment(std::string_view text, SystemId dialect) {
  std::string s(text);
  auto turn = s.find("|-");
  if (turn == std::string::npos) throw ParseError(0, "judgment without '|-'");
  std::string lhs = s.substr(0, turn), rhs = s.substr(turn + 2);
  auto open = lhs.find('{'), close = lhs.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError(0, "judgment context must be braced");
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if ((i < open || i > close) && !std::isspace(static_cast<unsigned char>(lhs[i])))
      throw ParseError(i, "stray text around judgment context");
  Judgment j;
  std::string inner = lhs.substr(open + 1, close - open - 1);
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    if (cur.find_first_not_of(" \t") != std::string::npos) j.context.push_back(parse_formula(cur, dialect));
    cur.clear();
  };
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  j.conclusion = parse_formula(rhs, dialect);
  return j;
}

struct CorpusHeader {
  SystemId system = SystemId::NJ;
  bool expect_ok = true;
  std::string judgment;
};

inline CorpusHeader parse_corpus_header(const std::string& line) {
  static const std::regex re(R"(^;;\s*system:\s*(\S+)\s+expect:\s*(ok|fail)\s+judgment:\s*\"(.*)\"\s*$)");
  std::smatch m;
  if (!std::regex_match(line, m, re)) throw CorpusError("malformed header: " + line);
  CorpusHeader h;
  try {
    h.system = parse_system(m[1].str());
  } catch (const std::invalid_argument& e) {
    throw CorpusError(std::string("malformed header: ") + e.what());
  }
  h.expect_ok = m[2] == "ok";
  h.judgment = m[3];
  return h;
}

struct CorpusEntry {
  std::string file;
  CorpusHeader header;
  bool checked = false;   // kernel verdict
  bool passed = false;    // verdict and judgment match the header
  std::string detail;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  bool all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const CorpusEntry& e) { return e.passed; });
  }
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CorpusEntry run_corpus_file(const std::filesystem::path& path) {
  CorpusEntry e;
  e.file = path.filename().string();
  std::string text = slurp(path);
  std::string first = text.substr(0, text.find('\n'));
  if (!first.empty() && first.back() == '\r') first.pop_back();
  try {
    e.header = parse_corpus_header(first);
  } catch (const CorpusError& err) {
    e.detail = err.what();
    return e;
  }
  Judgment want;
  try {
    want = parse_judgment(e.header.judgment, e.header.system);
  } catch (const std::exception& err) {
    e.detail = std::string("bad judgment: ") + err.what();
    return e;
  }
  CheckReport r;
  try {
    r = check(e.header.system, read_proof(text, e.header.system));
  } catch (const std::exception& err) {
    r.ok = false;
    r.message = err.what();
  }
  e.checked = r.ok;
  if (!r.ok) {
    e.detail = (r.path.empty() ? "" : r.path + ": ") + r.message;
    e.passed = !e.header.expect_ok;
    return e;
  }
  bool same = r.judgment.same_as(want);
  e.detail = print_judgment(r.judgment, e.header.system);
  if (!same) e.detail += " (header says " + e.header.judgment + ")";
  e.passed = e.header.expect_ok && same;
  return e;
}

/// Every *.proof file in dir, in name order.
inline CorpusReport run_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw CorpusError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& d : std::filesystem::directory_iterator(dir))
    if (d.is_regular_file() && d.path().extension() == ".proof") files.push_back(d.path());
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  for (const auto& f : files) rep.entries.push_back(run_corpus_file(f));
  return rep;
}

}  // namespace ecumene
