// Base and augmented signatures for the Qiana language.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qiana {

// Raised for unrecoverable misuse of the library (reserved names, arity
// clashes, quoting something unquotable, ...). Diagnostics that are part of a
// function's result use the Diagnostic type instead.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Diagnostic {
  std::string message;
};

enum class SymbolKind { Function, Predicate, Variable };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Function;
  int arity = 0;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.kind == b.kind && a.arity == b.arity;
  }
  friend auto operator<=>(const Symbol& a, const Symbol& b) = default;
};

inline Symbol func(std::string name, int arity) {
  return Symbol{std::move(name), SymbolKind::Function, arity};
}
inline Symbol pred(std::string name, int arity) {
  return Symbol{std::move(name), SymbolKind::Predicate, arity};
}

// Well-known symbol names. "ist" lives in the base predicate set (injected on
// augmentation when absent); the others are added by augment().
namespace names {
inline constexpr const char* kTruth = "truth";
inline constexpr const char* kIst = "ist";
inline constexpr const char* kQuot = "quot";
inline constexpr const char* kQand = "qand";
inline constexpr const char* kQneg = "qneg";
inline constexpr const char* kQforall = "qforall";
inline constexpr const char* kWft = "wft";
inline constexpr const char* kReach = "reach";
inline constexpr const char* kEval = "eval";   // the paper's E
inline constexpr const char* kSubq = "subq";   // the paper's Sub
inline constexpr const char* kEq = "=";        // equality predicate
inline constexpr const char* kQeq = "qeq";     // rendering of "=" in explicit-equality mode
inline constexpr const char* kBox = "box";     // modal context constant
inline constexpr const char* kWff = "wff";     // modal helper
inline constexpr const char* kTauto = "tauto"; // modal helper
inline constexpr const char* kQuotedPrefix = "q_";
inline constexpr const char* kQuotedVarPrefix = "qv_";
inline constexpr const char* kMangleEscapePrefix = "s_";
}  // namespace names

// A base signature: function and predicate symbols plus the ordered finite
// set V of quotable variables.
struct Signature {
  std::map<std::string, Symbol> functions;
  std::map<std::string, Symbol> predicates;
  std::vector<std::string> quotable_vars;

  void add_function(const std::string& name, int arity);
  void add_predicate(const std::string& name, int arity);

  const Symbol* find_function(const std::string& name) const;
  const Symbol* find_predicate(const std::string& name) const;
  bool has_quotable_var(const std::string& name) const;
  int max_arity() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Diagnostics are the result; empty means all invariants hold.
std::vector<Diagnostic> validate_base(const Signature& sig);

// Augmentation per the definition of the augmented signature: one quoted
// counterpart per base function, per predicate except truth, per quotable
// variable, plus the connective symbols, quot and truth.
struct AugmentedSignature {
  Signature base;  // normalized: contains ist/2 (and "="/2 when used)

  std::map<std::string, Symbol> quoted_functions;   // base name -> q_ symbol
  std::map<std::string, Symbol> quoted_predicates;  // base name -> q_ symbol
  std::map<std::string, Symbol> quoted_vars;        // var name  -> qv_ constant

  Symbol qand{names::kQand, SymbolKind::Function, 2};
  Symbol qforall{names::kQforall, SymbolKind::Function, 2};
  Symbol qneg{names::kQneg, SymbolKind::Function, 1};
  Symbol quot{names::kQuot, SymbolKind::Function, 1};
  Symbol truth{names::kTruth, SymbolKind::Predicate, 1};
  Symbol ist{names::kIst, SymbolKind::Predicate, 2};

  // Helper symbols of the finite axiomatization (the extended signature S').
  Symbol wft{names::kWft, SymbolKind::Predicate, 1};
  Symbol reach{names::kReach, SymbolKind::Predicate, 1};
  Symbol eval{names::kEval, SymbolKind::Function, 1};
  Symbol subq{names::kSubq, SymbolKind::Function, 3};

  const Symbol* quoted_of_function(const std::string& base_name) const;
  const Symbol* quoted_of_predicate(const std::string& base_name) const;
  const Symbol* quoted_of_var(const std::string& var_name) const;

  // Reverse lookups on quoted names; null when the name is not a counterpart.
  const Symbol* base_function_of(const std::string& quoted_name) const;
  const Symbol* base_predicate_of(const std::string& quoted_name) const;
  std::optional<std::string> var_of(const std::string& quoted_name) const;

  bool is_quoted_function(const Symbol& s) const;
  bool is_quoted_predicate(const Symbol& s) const;
  bool is_quoted_var(const Symbol& s) const;
  // Any symbol a quotation may be built from (counterparts, connectives, quot).
  bool is_quotation_symbol(const Symbol& s) const;

  friend bool operator==(const AugmentedSignature&, const AugmentedSignature&) = default;

 private:
  std::map<std::string, std::string> reverse_functions_;
  std::map<std::string, std::string> reverse_predicates_;
  std::map<std::string, std::string> reverse_vars_;
  friend AugmentedSignature augment(const Signature&);
};

// Pre: validate_base(sig) is empty. Throws Error on reserved-name misuse.
AugmentedSignature augment(const Signature& sig);

// True for names the user may not declare symbols under.
bool is_reserved_name(const std::string& name);

}  // namespace qiana
