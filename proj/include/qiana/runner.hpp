// Compilation pipeline and external-prover integration.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qiana/frontend.hpp"
#include "qiana/tptp.hpp"

namespace qiana {

struct ProverConfig {
  std::string executable;
  // Tokens; "{file}" and "{timeout}" are substituted. When empty, a preset
  // is chosen from the executable basename (vampire, eprover, fallback).
  std::vector<std::string> args;
  double timeout_seconds = 30;
  int parallel_goals = 1;
};

// QIANA_PROVER, else vampire/eprover on PATH, else the bundled qprover
// looked up next to the running executable.
ProverConfig default_prover_config(double timeout_seconds = 30);
std::vector<std::string> args_for(const ProverConfig& cfg,
                                  const std::string& file);

struct ProverVerdict {
  enum class Status {
    Theorem,
    CounterSatisfiable,
    Satisfiable,
    Unsatisfiable,
    Timeout,
    GaveUp,
    Error
  };
  Status status = Status::Error;
  double wall_seconds = 0;
  std::string raw_excerpt;
};

std::string to_string(ProverVerdict::Status s);

// Pure function of the prover output: the first "SZS status <word>" line
// decides; no such line yields Error.
ProverVerdict::Status parse_szs(const std::string& output);

// Writes the document to a private temporary file, launches the prover,
// enforces the timeout (with a grace margin over the prover's own limit) and
// maps the SZS line. The temporary file never outlives the call.
ProverVerdict run_prover(const TptpDocument& doc, const ProverConfig& cfg);
ProverVerdict run_prover_text(const std::string& tptp_text,
                              const ProverConfig& cfg);

// ---- pipeline -----------------------------------------------------------

struct CompileResult {
  Elaborated elab;
  AxiomSet axioms;    // closure plus EC/modal packs, manifest finalized
  TptpDocument doc;   // rendered problem
};

// parse -> (temporal sugar) -> elaborate -> closure + packs -> emit.
CompileResult compile(const TheoryDocument& doc, const Overrides& o = {});
CompileResult compile_source(const std::string& source, const Overrides& o = {});

struct GrowthAttempt {
  int vars;
  ProverVerdict verdict;
};

struct GrowthResult {
  ProverVerdict verdict;
  std::vector<GrowthAttempt> attempts;
};

// Iterative deepening on |V|: recompiles with |V| = n for n from the default
// size up to n_max and returns the first Theorem verdict, else the last one.
GrowthResult solve_with_var_growth(const TheoryDocument& doc,
                                   const Overrides& o,
                                   const ProverConfig& cfg, int n_max);

int cli_main(int argc, char** argv);

}  // namespace qiana
