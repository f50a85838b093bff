#pragma once

// The `ecumene` command line. run() never touches files other than its inputs
// and an explicit --out path; results go to `out`, diagnostics to `err`.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ecumene/corpus.hpp"
#include "ecumene/oracle.hpp"
#include "ecumene/proof_translate.hpp"
#include "ecumene/transform.hpp"

#ifndef ECUMENE_VERSION
#define ECUMENE_VERSION "dev"
#endif
#ifndef ECUMENE_CORPUS_DIR
#define ECUMENE_CORPUS_DIR "corpus"
#endif

namespace ecumene::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Proof load_proof(const std::string& path, SystemId s) {
  return read_proof(slurp(path), s);
}

inline SystemId logic_dialect(const std::string& logic) {
  if (logic == "cpl" || logic == "ipl") return SystemId::NJ;
  if (logic == "eci") return SystemId::ECI;
  if (logic == "nek") return SystemId::NEK;
  throw UsageError("unknown logic '" + logic + "'");
}

inline std::vector<std::string> split_atoms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return out;
}

struct TransformArgs {
  std::string name;
  SystemId system;
  std::optional<Formula> formula, formula2;
  std::vector<std::string> proofs;
  std::optional<Term> term;
};

inline const Formula& need_formula(const TransformArgs& a) {
  if (!a.formula) throw UsageError(a.name + " needs --formula");
  return *a.formula;
}

inline Proof need_proof(const TransformArgs& a, std::size_t i, SystemId s) {
  if (a.proofs.size() <= i) throw UsageError(a.name + " needs " + std::to_string(i + 1) + " --proof file(s)");
  return load_proof(a.proofs[i], s);
}

inline void need_system(const TransformArgs& a, SystemId s) {
  if (a.system != s) throw UsageError(a.name + " works in " + system_name(s));
}

inline const Formula& need_forallc(const TransformArgs& a) {
  const Formula& f = need_formula(a);
  if (!f.is(FormulaKind::Forall) || f.flavor() != Flavor::Cls) throw UsageError(a.name + " wants --formula \"forallc x. A\"");
  return f;
}

/// Returns the emitted proof and the system it lives in.
inline std::pair<Proof, SystemId> run_transform(const TransformArgs& a) {
  const std::string& n = a.name;
  SystemId s = a.system;
  if (n == "glivenko1") return {glivenko1_internal(s, need_formula(a)), s};
  if (n == "star_embed") return {star_embed(s, need_formula(a)), s};
  if (n == "glivenko2") return {glivenko2_internal(s, need_formula(a)), s};
  if (n == "eci_label_to_dn" || n == "eci_dn_to_label" || n == "eci_glivenko2" || n == "eci_neg_label_comm_fwd" ||
      n == "eci_neg_label_comm_bwd") {
    need_system(a, SystemId::ECI);
    const Formula& f = need_formula(a);
    if (n == "eci_label_to_dn") return {eci_label_to_dn(f), s};
    if (n == "eci_dn_to_label") return {eci_dn_to_label(f), s};
    if (n == "eci_glivenko2") return {eci_glivenko2(f), s};
    return {eci_neg_label_comm(f, n == "eci_neg_label_comm_fwd"), s};
  }
  if (n == "eci_to_nek") {
    need_system(a, SystemId::ECI);
    return {eci_to_nek(need_proof(a, 0, SystemId::ECI)), SystemId::NEK};
  }
  if (n == "nek_to_eci") {
    need_system(a, SystemId::NEK);
    return {nek_to_eci(need_proof(a, 0, SystemId::NEK)), SystemId::ECI};
  }
  if (n == "forallc_detour_reduce") {
    need_system(a, SystemId::NEK);
    return {forallc_detour_reduce(need_proof(a, 0, s)), s};
  }
  if (n == "neg_forallc_to_existsc" || n == "neg_forallc_to_neg_foralli") {
    need_system(a, SystemId::NEK);
    const Formula& f = need_forallc(a);
    return {neg_forallc_elim(f.body(), f.var(), n == "neg_forallc_to_existsc"), s};
  }
  if (n == "nek_forallc_from_refutation") {
    need_system(a, SystemId::NEK);
    const Formula& f = need_forallc(a);
    return {nek_forallc_from_refutation(f.body(), f.var(), need_proof(a, 0, s)), s};
  }
  if (n == "eci_forall_label_instantiate") {
    need_system(a, SystemId::ECI);
    if (!a.term) throw UsageError(n + " needs --term");
    return {eci_forall_label_instantiate(need_proof(a, 0, s), *a.term), s};
  }
  if (n == "mp_classicalize") {
    need_system(a, SystemId::ECI);
    return {mp_classicalize(need_proof(a, 0, s), need_proof(a, 1, s)), s};
  }
  throw UsageError("unknown transform '" + n + "'");
}

}  // namespace detail

inline const char* transform_names =
    "glivenko1 star_embed glivenko2 eci_label_to_dn eci_dn_to_label eci_glivenko2 eci_neg_label_comm_fwd "
    "eci_neg_label_comm_bwd eci_to_nek nek_to_eci forallc_detour_reduce neg_forallc_to_existsc "
    "neg_forallc_to_neg_foralli nek_forallc_from_refutation eci_forall_label_instantiate mp_classicalize";

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"ecumene: ecumenical natural deduction toolkit", "ecumene"};
  app.set_version_flag("--version", std::string("ecumene ") + ECUMENE_VERSION + " (corpus " + corpus_version + ")");
  app.require_subcommand(1);

  std::string system_s, path, map, formula_s, formula2_s, term_s, name, logic, goal_s, atoms_s, dialect_s = "nj",
                                                                                        out_path;
  std::vector<std::string> assume_s, proof_files;
  int max_size = 0;
  std::string corpus_dir = ECUMENE_CORPUS_DIR;

  auto* c_check = app.add_subcommand("check", "check a proof file");
  c_check->add_option("--system", system_s, "ne|nek|eci|nj|nk")->required();
  c_check->add_option("file", path, "proof file")->required();

  auto* c_tr = app.add_subcommand("translate", "apply a formula translation");
  c_tr->add_option("--map", map, "teci|tnek|untnek|star|nek2ipl")->required();
  c_tr->add_option("--formula", formula_s)->required();

  auto* c_tf = app.add_subcommand("transform", "emit a derivation");
  c_tf->add_option("--name", name, transform_names)->required();
  c_tf->add_option("--system", system_s)->required();
  c_tf->add_option("--formula", formula_s);
  c_tf->add_option("--formula2", formula2_s);
  c_tf->add_option("--proof", proof_files, "proof file (repeat for two)");
  c_tf->add_option("--term", term_s);
  c_tf->add_option("--out", out_path, "write the proof here instead of stdout");

  auto* c_dec = app.add_subcommand("decide", "decide a propositional sequent");
  c_dec->add_option("--logic", logic, "cpl|ipl|eci|nek")->required();
  c_dec->add_option("--assume", assume_s);
  c_dec->add_option("--goal", goal_s)->required();

  auto* c_enum = app.add_subcommand("enum", "list formulas up to a size");
  c_enum->add_option("--atoms", atoms_s)->required();
  c_enum->add_option("--max-size", max_size)->required();
  c_enum->add_option("--dialect", dialect_s);

  auto* c_corpus = app.add_subcommand("corpus", "check every *.proof file in a directory");
  c_corpus->add_option("dir", corpus_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_check) {
      SystemId s = parse_system(system_s);
      Proof p = detail::load_proof(path, s);
      CheckReport r = check(s, p);
      if (r) {
        out << "OK: " << print_judgment(r.judgment, s) << "\n";
        return 0;
      }
      out << "FAIL: " << (r.path.empty() ? "" : r.path + ": ") << r.message << "\n";
      return 1;
    }
    if (*c_tr) {
      TranslationId t = parse_translation(map);
      Formula f = parse_formula(formula_s, translation_source(t));
      out << print_formula(apply_translation(t, f), translation_target(t)) << "\n";
      return 0;
    }
    if (*c_tf) {
      detail::TransformArgs a{name, parse_system(system_s), {}, {}, proof_files, {}};
      if (!formula_s.empty()) a.formula = parse_formula(formula_s, a.system);
      if (!formula2_s.empty()) a.formula2 = parse_formula(formula2_s, a.system);
      if (!term_s.empty()) a.term = parse_term(term_s);
      auto [p, s] = detail::run_transform(a);
      std::string text = write_proof(p, s);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << text)) throw UsageError("cannot write " + out_path);
      }
      return 0;
    }
    if (*c_dec) {
      SystemId d = detail::logic_dialect(logic);
      Sequent sq;
      for (const auto& a : assume_s) sq.context.push_back(parse_formula(a, d));
      sq.goal = parse_formula(goal_s, d);
      Verdict v = logic == "cpl"   ? cpl_valid(sq)
                  : logic == "ipl" ? ipl_provable(sq)
                  : logic == "eci" ? eci_provable(sq)
                                   : nek_provable(sq);
      out << (v.provable ? "provable" : "not provable");
      if (!v.note.empty()) out << " " << v.note;
      out << "\n";
      if (v.countermodel) {
        out << "countermodel:";
        for (const auto& [k, val] : *v.countermodel) out << " " << k << "=" << (val ? 1 : 0);
        out << "\n";
      }
      return v.provable ? 0 : 1;
    }
    if (*c_enum) {
      SystemId d = parse_system(dialect_s);
      enumerate_formulas(detail::split_atoms(atoms_s), max_size, d,
                         [&](const Formula& f) { out << print_formula(f, d) << "\n"; });
      return 0;
    }
    if (*c_corpus) {
      CorpusReport rep = run_corpus(corpus_dir);
      std::size_t passed = 0;
      for (const auto& e : rep.entries) {
        passed += e.passed ? 1 : 0;
        out << (e.passed ? "pass " : "FAIL ") << e.file << "  " << system_name(e.header.system) << "  expect "
            << (e.header.expect_ok ? "ok" : "fail") << "  got " << (e.checked ? "ok" : "fail") << "  " << e.detail
            << "\n";
      }
      out << rep.entries.size() << " files, " << passed << " passed\n";
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ProofFormatError& e) {
    err << "proof format error: " << e.what() << "\n";
    return 2;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // transformer preconditions, oracle limits, translation dialects
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ecumene::cli
