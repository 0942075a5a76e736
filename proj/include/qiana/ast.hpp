// First-order term and formula trees, plus the membership classifiers for the
// quotation sets (Q, Qv, boldT, boldTv, boldL, boldLv, T_q, L_q).
#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qiana/signature.hpp"

namespace qiana {

class Term {
 public:
  enum class Kind { Var, App };

  static Term var(std::string name);
  // Checks that args.size() matches f.arity.
  static Term app(Symbol f, std::vector<Term> args = {});

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Var; }
  bool is_app() const { return node_->kind == Kind::App; }
  const std::string& var_name() const { return node_->name; }
  const Symbol& symbol() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->args; }

  size_t size() const;   // node count
  size_t depth() const;  // 1 for leaves

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;  // structural, for ordered containers
  size_t hash() const { return node_->hash; }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Var only
    Symbol symbol;     // App only
    std::vector<Term> args;
    size_t hash = 0;
  };
  std::shared_ptr<const Node> node_;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

class Formula {
 public:
  enum class Kind { Atom, Not, And, Forall };

  static Formula atom(Symbol p, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  // sort is empty for untyped formulas; typed mode annotates binders.
  static Formula forall(std::string var, Formula body, std::string sort = "");

  // Sugar, elaborated straight into the {Atom, Not, And, Forall} core.
  static Formula disj(Formula a, Formula b);     // ~(~a & ~b)
  static Formula implies(Formula a, Formula b);  // ~a | b
  static Formula iff(Formula a, Formula b);      // (a=>b) & (b=>a)
  static Formula exists(std::string var, Formula body, std::string sort = "");  // ~forall ~
  static Formula equal(Term a, Term b);          // atom over "="

  Kind kind() const { return node_->kind; }
  const Symbol& predicate() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->args; }
  const Formula& child(size_t i = 0) const { return node_->children[i]; }
  const std::string& bound_var() const { return node_->name; }
  const std::string& bound_sort() const { return node_->sort; }

  size_t size() const;
  size_t depth() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const;
  size_t hash() const { return node_->hash; }

 private:
  struct Node {
    Kind kind;
    Symbol symbol;  // Atom only
    std::vector<Term> args;
    std::vector<Formula> children;
    std::string name;  // Forall only
    std::string sort;  // Forall only; empty when untyped
    size_t hash = 0;
  };
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// A term or a formula; unquote and some frontend paths produce either.
using TermOrFormula = std::variant<Term, Formula>;

struct MembershipFlags {
  bool in_Q = false;
  bool in_Qv = false;
  bool in_boldT = false;
  bool in_boldTv = false;
  bool in_boldL = false;
  bool in_boldLv = false;
};

// Structural recursion over the Backus-Naur definitions of the quotation
// sets. The v-variants accept quot(t) for arbitrary t (value injection).
MembershipFlags classify(const Term& t, const AugmentedSignature& asig);

// T_q / L_q membership: variables drawn from V only, no truth predicate,
// subterms base applications, quotable, or quotation fragments (in Qv).
bool is_quotable(const Term& t, const AugmentedSignature& asig);
bool is_quotable(const Formula& f, const AugmentedSignature& asig);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);

// Human-readable rendering in the surface syntax (used by diagnostics, the
// axioms listing and the document renderer).
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

// Arity/wellformedness check against a signature-ish symbol table is done at
// construction; this verifies every symbol is known to asig (base, quoted,
// builtin or helper).
bool well_formed_over(const Term& t, const AugmentedSignature& asig);
bool well_formed_over(const Formula& f, const AugmentedSignature& asig);

}  // namespace qiana
