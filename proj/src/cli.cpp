#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qiana/runner.hpp"

namespace qiana {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonFlags {
  std::string input;
  std::optional<int> vars;
  int vars_auto = 0;
  bool typed = false, temporal = false;
  std::string modal;
  bool explosion = false, disambiguation = false, explicit_equality = false;
  std::string prover;
  double timeout = 0;
  std::string out;

  Overrides overrides() const {
    Overrides o;
    if (vars) o.vars = vars;
    if (typed) o.typed = true;
    if (temporal) o.temporal = true;
    if (!modal.empty()) o.modal = modal;
    if (explosion) o.explosion = true;
    if (disambiguation) o.disambiguation = true;
    if (explicit_equality) o.explicit_equality = true;
    return o;
  }

  void add_to(CLI::App* cmd, bool with_prover) {
    cmd->add_option("input", input, "a .qiana source file")->required();
    cmd->add_option("--vars", vars, "pad |V| up to N");
    cmd->add_flag("--typed", typed, "many-sorted mode");
    cmd->add_flag("--temporal", temporal, "event-calculus mode");
    cmd->add_option("--modal", modal, "modal system: k, t, s4, s5, d");
    cmd->add_flag("--explosion", explosion, "include the explosion axiom");
    cmd->add_flag("--disambiguation", disambiguation,
                  "include the term-disambiguation axioms");
    cmd->add_flag("--explicit-equality", explicit_equality,
                  "emit equality as an axiomatized predicate");
    if (with_prover) {
      cmd->add_option("--vars-auto", vars_auto,
                      "retry with |V| growing up to MAX");
      cmd->add_option("--prover", prover, "prover executable");
      cmd->add_option("--timeout", timeout, "prover timeout in seconds");
    }
    cmd->add_option("--out", out, "output file (default stdout)");
  }

  ProverConfig prover_config(const TheoryDocument& doc) const {
    double t = timeout > 0  ? timeout
               : doc.options.timeout ? *doc.options.timeout
                                     : 30.0;
    ProverConfig cfg;
    if (!prover.empty()) {
      cfg.executable = prover;
      cfg.timeout_seconds = t;
    } else if (doc.options.prover) {
      cfg.executable = *doc.options.prover;
      cfg.timeout_seconds = t;
    } else {
      cfg = default_prover_config(t);
    }
    return cfg;
  }
};

void write_out(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

int run_check(const CommonFlags& flags) {
  TheoryDocument doc = parse(slurp(flags.input));
  Elaborated e = elaborate(doc, flags.overrides());
  if (e.typed) {
    for (const auto& ua : e.axioms) {
      auto tc = typecheck(ua.formula, *e.tsig);
      if (!tc.ok()) {
        for (const auto& d : tc.diagnostics)
          std::cerr << flags.input << ": " << ua.label << ": " << d.message
                    << "\n";
        return 2;
      }
    }
  }
  std::cout << flags.input << ": ok (" << e.axioms.size() << " axioms, |V|="
            << e.asig.base.quotable_vars.size()
            << (e.conjecture ? ", conjecture present" : "") << ")\n";
  return 0;
}

int run_axioms(const CommonFlags& flags) {
  CompileResult r = compile(parse(slurp(flags.input)), flags.overrides());
  std::ostringstream os;
  for (const auto& a : r.axioms.axioms) {
    os << a.name << " [" << a.provenance;
    if (!a.params.empty()) os << " " << a.params;
    os << "]\n  " << to_string(a.formula) << "\n";
  }
  os << "\n" << r.axioms.manifest;
  write_out(flags.out, os.str());
  return 0;
}

int run_compile(const CommonFlags& flags) {
  CompileResult r = compile(parse(slurp(flags.input)), flags.overrides());
  write_out(flags.out, render(r.doc));
  return 0;
}

int run_prove(const CommonFlags& flags) {
  TheoryDocument doc = parse(slurp(flags.input));
  ProverConfig cfg = flags.prover_config(doc);
  if (flags.vars_auto > 0) {
    GrowthResult g =
        solve_with_var_growth(doc, flags.overrides(), cfg, flags.vars_auto);
    for (const auto& a : g.attempts)
      std::cout << "|V|=" << a.vars << ": SZS " << to_string(a.verdict.status)
                << " (" << a.verdict.wall_seconds << "s)\n";
    return g.verdict.status == ProverVerdict::Status::Theorem ? 0 : 1;
  }
  CompileResult r = compile(doc, flags.overrides());
  if (!r.elab.conjecture) {
    std::cerr << "prove: no #conjecture in " << flags.input << "\n";
    return 2;
  }
  ProverVerdict v = run_prover(r.doc, cfg);
  std::cout << "SZS " << to_string(v.status) << " (" << v.wall_seconds
            << "s, " << r.axioms.axioms.size() << " axioms)\n";
  if (v.status == ProverVerdict::Status::Error) {
    std::cerr << v.raw_excerpt << "\n";
    return 2;
  }
  return v.status == ProverVerdict::Status::Theorem ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Qiana compiler and prover frontend"};
  app.require_subcommand(1);

  CommonFlags check_flags, axioms_flags, compile_flags, prove_flags;
  auto* check = app.add_subcommand("check", "parse, elaborate and typecheck");
  check_flags.add_to(check, false);
  auto* axioms = app.add_subcommand("axioms", "print the generated axiom set");
  axioms_flags.add_to(axioms, false);
  auto* compile_cmd = app.add_subcommand("compile", "write TPTP output");
  compile_flags.add_to(compile_cmd, false);
  auto* prove = app.add_subcommand("prove", "compile and run the prover");
  prove_flags.add_to(prove, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    std::cerr << os.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(check_flags);
    if (axioms->parsed()) return run_axioms(axioms_flags);
    if (compile_cmd->parsed()) return run_compile(compile_flags);
    if (prove->parsed()) return run_prove(prove_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace qiana
