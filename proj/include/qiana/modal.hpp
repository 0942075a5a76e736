// Embedding of the propositional modal systems K, T, S4, S5, D.
#pragma once

#include <memory>

#include "qiana/axioms.hpp"

namespace qiana {

enum class ModalSystem { K, T, S4, S5, D };

std::optional<ModalSystem> modal_system_from_name(const std::string& name);
std::string to_string(ModalSystem s);

class ModalFormula {
 public:
  enum class Kind { Prop, Not, And, Or, Implies, Box, Diamond };

  static ModalFormula prop(std::string name);
  static ModalFormula negation(ModalFormula f);
  static ModalFormula conj(ModalFormula a, ModalFormula b);
  static ModalFormula disj(ModalFormula a, ModalFormula b);
  static ModalFormula implies(ModalFormula a, ModalFormula b);
  static ModalFormula box(ModalFormula f);
  static ModalFormula diamond(ModalFormula f);

  Kind kind() const { return node_->kind; }
  const std::string& prop_name() const { return node_->name; }
  const ModalFormula& child(size_t i = 0) const { return node_->children[i]; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<ModalFormula> children;
  };
  std::shared_ptr<const Node> node_;
  explicit ModalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// The modal context constant (a reserved arity-0 function symbol).
Symbol modal_box_symbol();
// The Wff / Tauto helper predicates.
Symbol modal_wff_symbol();
Symbol modal_tauto_symbol();

// box phi  :=  ist(box, quote(phi));   dia phi  :=  ~ist(box, qneg(quote(phi))).
// Every Prop must be a declared arity-0 predicate of asig.
Formula embed_modal_formula(const ModalFormula& mf,
                            const AugmentedSignature& asig);

// H_tauto (T1-T9) plus the system axioms: QK+QN always, then QT/Q4/Q5/QD per
// the system table.
AxiomSet gen_modal_system(ModalSystem sys, const AugmentedSignature& asig);

}  // namespace qiana
