// Many-sorted Qiana: the sort set {o, q, c, tau, a} plus user object
// subsorts, sorted signatures, the typechecker and the typed closure.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qiana/axioms.hpp"

namespace qiana {

namespace sorts {
inline constexpr const char* kObject = "o";
inline constexpr const char* kQuotation = "q";
inline constexpr const char* kContext = "c";
inline constexpr const char* kTime = "tau";
inline constexpr const char* kAction = "a";
}  // namespace sorts

struct FunctionSig {
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  friend bool operator==(const FunctionSig&, const FunctionSig&) = default;
};

struct TypedSignature {
  AugmentedSignature asig;  // the untyped skeleton (symbols and arities)

  std::vector<std::string> sorts;  // {o,q,c,tau,a} + user subsorts, ordered
  std::map<std::string, FunctionSig> function_sigs;        // base functions
  std::map<std::string, std::vector<std::string>> predicate_sigs;  // base preds
  std::map<std::string, std::string> quotable_var_sorts;   // x in V -> sort

  bool has_sort(const std::string& s) const;
  // quot_gamma / eval_gamma / reach_gamma / wft_gamma symbol builders.
  Symbol quot_of(const std::string& sort) const;
  Symbol eval_of(const std::string& sort) const;
  Symbol reach_of(const std::string& sort) const;
  Symbol wft_of(const std::string& sort) const;

  friend bool operator==(const TypedSignature&, const TypedSignature&) = default;
};

// Builds the typed signature: validates sort declarations, defaults
// undeclared base symbols to object sorts, assigns builtin signatures
// (ist: c x q, truth: q, quoted counterparts q^n -> q) and the per-sort
// helper families.
TypedSignature make_typed_signature(
    const Signature& base,
    const std::map<std::string, FunctionSig>& function_sigs,
    const std::map<std::string, std::vector<std::string>>& predicate_sigs,
    const std::map<std::string, std::string>& quotable_var_sorts,
    const std::vector<std::string>& extra_sorts = {});

// Sort of a term / check of a formula under an environment of variable sorts.
// Diagnostics are the result; empty diagnostics means well-typed.
struct TypecheckResult {
  std::optional<std::string> sort;  // terms only
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};
TypecheckResult typecheck(const Term& t, const TypedSignature& tsig,
                          const std::map<std::string, std::string>& env = {});
TypecheckResult typecheck(const Formula& f, const TypedSignature& tsig,
                          const std::map<std::string, std::string>& env = {});

// The typed analog of qiana_closure; instance counts additionally range over
// sorts where the schema ranges say so. Throws Error("ill-typed...") when a
// user axiom does not typecheck.
AxiomSet gen_typed_closure(const std::vector<UserAxiom>& theory,
                           const TypedSignature& tsig,
                           const ClosureOptions& opts);

// Typed event-calculus pack (EC1-EC7 with the Table-3 sorts).
AxiomSet gen_typed_event_calculus_axioms(const TypedSignature& tsig);

// Erasure: drops binder sorts and collapses the per-sort helper families to
// the untyped helper symbols (reach_q -> reach, quot_o -> quot, ...).
Formula erase_sorts(const Formula& f, const TypedSignature& tsig);

}  // namespace qiana
