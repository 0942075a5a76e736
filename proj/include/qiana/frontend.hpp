// Surface-language parser and elaborator.
//
// Grammar sketch (statements end with '.'):
//   formula   :=  iff-chain over => | & ~ with the usual precedences
//   atoms     :=  p(t,...) | t = t | t < t | t <= t | prefix 'box'/'dia'
//   quantifier:=  forall X Y. f    exists X:o. f
//   quotation :=  [[ formula-or-term ]]      escape: quot(term)
//   sugar     :=  <c> f   -->  ist(c, [[f]])     <c>! t  -->  ist(c, t)
//   directives:=  #option key value.  #conjecture f.  #quotable X Y Z.
//                 #sort name : s1 * s2 -> s.   #sort name : s1 * s2.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qiana/axioms.hpp"
#include "qiana/modal.hpp"
#include "qiana/typed.hpp"

namespace qiana {

// One unified parse-tree node; terms and formulas are distinguished by
// position during elaboration.
struct PNode;
using PNodePtr = std::shared_ptr<const PNode>;

struct PNode {
  enum class Kind {
    // term-ish
    Var, App, Number, Quotation, Escape,
    // formula-ish
    Atom, Not, And, Or, Implies, Iff, Forall, Exists, Box, Diamond,
  };
  Kind kind;
  std::string name;                // Var/App/Atom head
  std::vector<PNodePtr> children;  // args, operands or payload
  std::vector<std::pair<std::string, std::string>> binders;  // (var, sort)
  int line = 0, col = 0;

  static PNodePtr make(Kind k, std::string name = "",
                       std::vector<PNodePtr> children = {}, int line = 0,
                       int col = 0);
};

bool equal(const PNodePtr& a, const PNodePtr& b);

struct PStatement {
  PNodePtr node;
  int line = 0;
};

struct SortDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::optional<std::string> result_sort;  // nullopt: predicate
  int line = 0;
  friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

struct DocOptions {
  std::optional<int> vars;  // pad |V| up to this
  std::vector<std::string> quotable;  // explicit V (ordered)
  bool temporal = false;
  bool typed = false;
  std::optional<std::string> modal;  // k, t, s4, s5, d
  bool explosion = false;
  bool disambiguation = false;
  bool explicit_equality = false;
  std::optional<double> timeout;
  std::optional<std::string> prover;
  friend bool operator==(const DocOptions&, const DocOptions&) = default;
};

struct TheoryDocument {
  DocOptions options;
  std::vector<SortDecl> sorts;
  std::vector<PStatement> axioms;
  std::optional<PStatement> conjecture;
};

bool equal(const TheoryDocument& a, const TheoryDocument& b);

// Throws Error with line:col on syntax errors.
TheoryDocument parse(const std::string& source);

// Canonical surface rendering; parse(render(doc)) is structurally equal to
// doc (sugar is expanded at parse time, so rendering is already canonical).
std::string render(const TheoryDocument& doc);

// CLI-level overrides merged over the document options.
struct Overrides {
  std::optional<int> vars;
  std::optional<bool> temporal, typed, explosion, disambiguation,
      explicit_equality;
  std::optional<std::string> modal;
};

struct Elaborated {
  AugmentedSignature asig;
  std::vector<UserAxiom> axioms;
  std::optional<Formula> conjecture;
  ClosureOptions closure_options;
  bool temporal = false;
  bool typed = false;
  std::optional<ModalSystem> modal;
  // typed mode only:
  std::optional<TypedSignature> tsig;
};

// Derives the signature from symbol occurrences, computes V, applies the
// quotation operator to every quotation node bottom-up, expands modal
// operators, and universally closes free variables. Throws Error with
// locations on quotability violations, arity clashes and unknown sorts.
Elaborated elaborate(const TheoryDocument& doc, const Overrides& cli = {});

}  // namespace qiana
