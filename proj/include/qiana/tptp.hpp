// TPTP rendering (FOF untyped, TFF typed) and a reader for the emitted
// dialect, used for idempotence checks and by the bundled prover.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qiana/axioms.hpp"
#include "qiana/typed.hpp"

namespace qiana {

struct TptpFormula {
  std::string name;
  enum class Role { Axiom, Conjecture } role = Role::Axiom;
  Formula formula;

  friend bool operator==(const TptpFormula&, const TptpFormula&) = default;
};

struct TffTypeDecl {
  std::string name;          // declaration name (e.g. "decl_believes")
  std::string symbol;        // mangled symbol
  std::vector<std::string> arg_sorts;
  std::string result_sort;   // "$o" for predicates, "$tType" for sorts
  friend bool operator==(const TffTypeDecl&, const TffTypeDecl&) = default;
};

struct TptpDocument {
  std::vector<std::string> header;  // comment lines, without the leading '%'
  bool typed = false;
  std::vector<TffTypeDecl> type_decls;
  std::vector<TptpFormula> formulas;

  friend bool operator==(const TptpDocument&, const TptpDocument&) = default;
};

struct EmitOptions {
  // Render "=" as the qeq predicate and keep A12-A16 meaningful.
  bool explicit_equality = false;
};

// Deterministic injective symbol mangling for one signature. Builtins map to
// fixed names; base symbols are lowercased with collisions resolved by an s_
// prefix and then numeric suffixes.
class SymbolMangler {
 public:
  explicit SymbolMangler(const AugmentedSignature& asig,
                         const EmitOptions& opts = {});
  std::string mangle(const Symbol& sym) const;
  // Extra non-signature symbols (modal helpers); claimed at construction.
  void claim_fixed(const std::string& symbol_name, const std::string& mangled);

 private:
  std::map<std::string, std::string> table_;  // symbol name -> mangled
  std::map<std::string, int> used_;
  std::string assign(const std::string& name);
  friend SymbolMangler make_mangler_for_tests(const AugmentedSignature&);
};

// Renames symbols through the mangler and bound variables to TPTP upper
// words (deterministically, collision-suffixed per formula). fill_sorts
// replaces empty binder sorts by the object sort for TFF output.
Formula tptp_mangled_formula(const Formula& f, const SymbolMangler& m,
                             bool fill_sorts = false);

TptpDocument emit_fof(const AxiomSet& axioms,
                      const std::optional<Formula>& conjecture,
                      const AugmentedSignature& asig,
                      const EmitOptions& opts = {});

// Monomorphic typed first-order output: sort declarations for all sorts and
// symbols, then tff formula lines. Pre: axioms typecheck against tsig.
TptpDocument emit_tff(const AxiomSet& axioms,
                      const std::optional<Formula>& conjecture,
                      const TypedSignature& tsig,
                      const EmitOptions& opts = {});

// Renders with LF line endings; byte-stable for equal documents.
std::string render(const TptpDocument& doc);

// Parses the emitter's dialect (fof/tff annotated formulas). Throws Error
// with line information on malformed input.
TptpDocument parse_tptp(const std::string& text);

}  // namespace qiana
