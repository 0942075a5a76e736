#include <algorithm>
#include <set>

#include "qiana/frontend.hpp"
#include "qiana/quotation.hpp"
#include "qiana/temporal.hpp"

namespace qiana {

namespace {

[[noreturn]] void fail_at(const PNodePtr& n, const std::string& msg) {
  throw Error(msg + " (line " + std::to_string(n->line) + ")");
}

bool is_formula_kind(PNode::Kind k) {
  switch (k) {
    case PNode::Kind::Atom:
    case PNode::Kind::Not:
    case PNode::Kind::And:
    case PNode::Kind::Or:
    case PNode::Kind::Implies:
    case PNode::Kind::Iff:
    case PNode::Kind::Forall:
    case PNode::Kind::Exists:
    case PNode::Kind::Box:
    case PNode::Kind::Diamond:
      return true;
    default:
      return false;
  }
}

bool uppercase_head(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

// Symbol usage collected across the document before elaboration.
struct Collector {
  std::map<std::string, int> functions;   // name -> arity
  std::map<std::string, int> predicates;  // name -> arity
  std::set<std::string> quotation_vars;   // variable names seen inside [[ ]]
  std::set<std::string> flex_heads;       // payload-root atoms, kind unknown
  bool equality_used = false;
  bool modal_ops_used = false;
  int max_user_arity = 0;

  void note_function(const PNodePtr& at, const std::string& name, int arity) {
    if (name == names::kQuot) {
      if (arity != 1) fail_at(at, "quot takes one argument");
      return;
    }
    auto [it, inserted] = functions.emplace(name, arity);
    if (!inserted && it->second != arity)
      fail_at(at, "arity clash: function " + name + " used with " +
                      std::to_string(arity) + " and " +
                      std::to_string(it->second) + " arguments");
    if (predicates.count(name))
      fail_at(at, "name used both as function and predicate: " + name);
    max_user_arity = std::max(max_user_arity, arity);
  }

  void note_predicate(const PNodePtr& at, const std::string& name, int arity) {
    if (name == names::kTruth) {
      if (arity != 1) fail_at(at, "truth takes one argument");
      return;
    }
    if (name == names::kIst) {
      if (arity != 2) fail_at(at, "ist takes two arguments");
      return;
    }
    if (name == names::kEq) {
      equality_used = true;
      return;
    }
    auto [it, inserted] = predicates.emplace(name, arity);
    if (!inserted && it->second != arity)
      fail_at(at, "arity clash: predicate " + name + " used with " +
                      std::to_string(arity) + " and " +
                      std::to_string(it->second) + " arguments");
    if (functions.count(name))
      fail_at(at, "name used both as function and predicate: " + name);
    max_user_arity = std::max(max_user_arity, arity);
  }
};

struct Scope {
  std::vector<std::string> stack;
  bool bound(const std::string& n) const {
    return std::find(stack.begin(), stack.end(), n) != stack.end();
  }
};

class DocWalker {
 public:
  Collector collect(const TheoryDocument& doc) {
    for (const auto& st : doc.axioms) walk_formula(st.node, {}, false);
    if (doc.conjecture) walk_formula(doc.conjecture->node, {}, false);
    resolve_flex();
    return c_;
  }

 private:
  Collector c_;

  void resolve_flex() {
    // A payload-root atom whose head is known as a function elsewhere is a
    // term quotation; otherwise it defaults to a formula quotation.
    for (const auto& head : c_.flex_heads)
      if (!c_.functions.count(head) && !c_.predicates.count(head) &&
          head != names::kTruth && head != names::kIst && head != names::kEq)
        c_.predicates.emplace(head, 0);
  }

  void walk_term(const PNodePtr& n, Scope scope, bool in_quotation) {
    switch (n->kind) {
      case PNode::Kind::Var:
        if (in_quotation) c_.quotation_vars.insert(n->name);
        return;
      case PNode::Kind::Number:
        c_.note_function(n, n->name, 0);
        return;
      case PNode::Kind::App:
        if (n->children.empty() &&
            (scope.bound(n->name) || uppercase_head(n->name))) {
          if (in_quotation) c_.quotation_vars.insert(n->name);
          return;
        }
        c_.note_function(n, n->name, static_cast<int>(n->children.size()));
        for (const auto& a : n->children) walk_term(a, scope, in_quotation);
        return;
      case PNode::Kind::Quotation:
        walk_payload(n->children[0], scope);
        return;
      case PNode::Kind::Escape:
        // The escape argument lives in the enclosing scope, but its variables
        // still count as "occurring inside a quotation" for the default V.
        walk_term(n->children[0], scope, in_quotation);
        return;
      default:
        fail_at(n, "expected a term");
    }
  }

  void walk_formula(const PNodePtr& n, Scope scope, bool in_quotation) {
    switch (n->kind) {
      case PNode::Kind::Atom: {
        c_.note_predicate(n, n->name, static_cast<int>(n->children.size()));
        for (const auto& a : n->children) walk_term(a, scope, in_quotation);
        return;
      }
      case PNode::Kind::Not:
        walk_formula(n->children[0], scope, in_quotation);
        return;
      case PNode::Kind::And:
      case PNode::Kind::Or:
      case PNode::Kind::Implies:
      case PNode::Kind::Iff:
        walk_formula(n->children[0], scope, in_quotation);
        walk_formula(n->children[1], scope, in_quotation);
        return;
      case PNode::Kind::Forall:
      case PNode::Kind::Exists: {
        Scope inner = scope;
        for (const auto& [v, _] : n->binders) {
          inner.stack.push_back(v);
          if (in_quotation) c_.quotation_vars.insert(v);
        }
        walk_formula(n->children[0], inner, in_quotation);
        return;
      }
      case PNode::Kind::Box:
      case PNode::Kind::Diamond:
        c_.modal_ops_used = true;
        walk_formula(n->children[0], scope, in_quotation);
        return;
      default:
        fail_at(n, "expected a formula");
    }
  }

  void walk_payload(const PNodePtr& n, Scope scope) {
    // Payload-root atoms may turn out to be term quotations (or quoted
    // variables, when the head is bound by an enclosing quantifier).
    if (n->kind == PNode::Kind::Atom && n->name != names::kEq) {
      if (n->children.empty() && scope.bound(n->name)) {
        c_.quotation_vars.insert(n->name);
        return;
      }
      bool known_pred = c_.predicates.count(n->name) || n->name == names::kIst;
      if (!known_pred) {
        if (!c_.functions.count(n->name)) c_.flex_heads.insert(n->name);
        for (const auto& a : n->children) walk_term(a, scope, true);
        return;
      }
    }
    if (is_formula_kind(n->kind))
      walk_formula(n, scope, true);
    else
      walk_term(n, scope, true);
  }
};

class Elaborator {
 public:
  Elaborator(const AugmentedSignature& asig, const Collector& c, bool modal)
      : asig_(asig), c_(c), modal_(modal) {}

  // Elaborates one statement: builds the core formula and universally closes
  // its free variables.
  Formula statement(const PNodePtr& n) {
    Formula f = formula(n, {});
    auto vars = free_vars(f);
    std::vector<std::string> ordered(vars.begin(), vars.end());
    for (auto it = ordered.rbegin(); it != ordered.rend(); ++it)
      f = Formula::forall(*it, std::move(f));
    return f;
  }

 private:
  const AugmentedSignature& asig_;
  const Collector& c_;
  bool modal_ = false;

  bool treat_as_var(const PNodePtr& n, const Scope& scope) const {
    if (n->kind == PNode::Kind::Var) return true;
    return n->kind == PNode::Kind::App && n->children.empty() &&
           scope.bound(n->name);
  }

  Term term(const PNodePtr& n, const Scope& scope) {
    switch (n->kind) {
      case PNode::Kind::Var:
      case PNode::Kind::App: {
        if (treat_as_var(n, scope)) return Term::var(n->name);
        if (n->kind == PNode::Kind::Var) return Term::var(n->name);
        const Symbol* f = asig_.base.find_function(n->name);
        if (!f) fail_at(n, "unknown function " + n->name);
        std::vector<Term> args;
        for (const auto& a : n->children) args.push_back(term(a, scope));
        return Term::app(*f, std::move(args));
      }
      case PNode::Kind::Number: {
        const Symbol* f = asig_.base.find_function(n->name);
        if (!f) fail_at(n, "unknown constant " + n->name);
        return Term::app(*f);
      }
      case PNode::Kind::Quotation:
        return payload(n->children[0], scope);
      case PNode::Kind::Escape:
        return Term::app(asig_.quot, {term(n->children[0], scope)});
      default:
        fail_at(n, "expected a term");
    }
  }

  Formula formula(const PNodePtr& n, Scope scope) {
    switch (n->kind) {
      case PNode::Kind::Atom: {
        std::vector<Term> args;
        for (const auto& a : n->children) args.push_back(term(a, scope));
        if (n->name == names::kEq)
          return Formula::equal(args[0], args[1]);
        if (n->name == names::kTruth)
          return Formula::atom(asig_.truth, std::move(args));
        if (n->name == names::kIst)
          return Formula::atom(asig_.ist, std::move(args));
        const Symbol* p = asig_.base.find_predicate(n->name);
        if (!p) fail_at(n, "unknown predicate " + n->name);
        return Formula::atom(*p, std::move(args));
      }
      case PNode::Kind::Not:
        return Formula::negation(formula(n->children[0], scope));
      case PNode::Kind::And:
        return Formula::conj(formula(n->children[0], scope),
                             formula(n->children[1], scope));
      case PNode::Kind::Or:
        return Formula::disj(formula(n->children[0], scope),
                             formula(n->children[1], scope));
      case PNode::Kind::Implies:
        return Formula::implies(formula(n->children[0], scope),
                                formula(n->children[1], scope));
      case PNode::Kind::Iff:
        return Formula::iff(formula(n->children[0], scope),
                            formula(n->children[1], scope));
      case PNode::Kind::Forall:
      case PNode::Kind::Exists: {
        Scope inner = scope;
        for (const auto& [v, _] : n->binders) inner.stack.push_back(v);
        Formula body = formula(n->children[0], inner);
        for (auto it = n->binders.rbegin(); it != n->binders.rend(); ++it) {
          if (n->kind == PNode::Kind::Forall)
            body = Formula::forall(it->first, std::move(body), it->second);
          else
            body = Formula::exists(it->first, std::move(body), it->second);
        }
        return body;
      }
      case PNode::Kind::Box:
      case PNode::Kind::Diamond: {
        if (!modal_)
          fail_at(n, "box/dia need modal mode (#option modal <system>)");
        return embed_modal_formula(modal_formula(n), asig_);
      }
      default:
        fail_at(n, "expected a formula");
    }
  }

  ModalFormula modal_formula(const PNodePtr& n) {
    switch (n->kind) {
      case PNode::Kind::Atom:
        if (!n->children.empty())
          fail_at(n, "modal operators are propositional");
        return ModalFormula::prop(n->name);
      case PNode::Kind::Not:
        return ModalFormula::negation(modal_formula(n->children[0]));
      case PNode::Kind::And:
        return ModalFormula::conj(modal_formula(n->children[0]),
                                  modal_formula(n->children[1]));
      case PNode::Kind::Or:
        return ModalFormula::disj(modal_formula(n->children[0]),
                                  modal_formula(n->children[1]));
      case PNode::Kind::Implies:
        return ModalFormula::implies(modal_formula(n->children[0]),
                                     modal_formula(n->children[1]));
      case PNode::Kind::Box:
        return ModalFormula::box(modal_formula(n->children[0]));
      case PNode::Kind::Diamond:
        return ModalFormula::diamond(modal_formula(n->children[0]));
      default:
        fail_at(n, "modal operators are propositional");
    }
  }

  // --- quotation payloads: the quotation operator on parse trees ---------

  Term quoted_var(const PNodePtr& at, const std::string& name) {
    const Symbol* qv = asig_.quoted_of_var(name);
    if (!qv)
      fail_at(at, "variable " + name + " is not quotable (outside V)");
    return Term::app(*qv);
  }

  Term payload_term(const PNodePtr& n, const Scope& scope) {
    switch (n->kind) {
      case PNode::Kind::Var:
        return quoted_var(n, n->name);
      case PNode::Kind::App: {
        if (treat_as_var(n, scope)) return quoted_var(n, n->name);
        const Symbol* qf = asig_.quoted_of_function(n->name);
        if (!qf) fail_at(n, "unknown function " + n->name + " in quotation");
        std::vector<Term> args;
        for (const auto& a : n->children) args.push_back(payload_term(a, scope));
        return Term::app(*qf, std::move(args));
      }
      case PNode::Kind::Number: {
        const Symbol* qf = asig_.quoted_of_function(n->name);
        if (!qf) fail_at(n, "unknown constant " + n->name + " in quotation");
        return Term::app(*qf);
      }
      case PNode::Kind::Quotation: {
        // A nested quotation becomes quot(<inner image>).
        Term inner = payload(n->children[0], scope);
        return Term::app(asig_.quot, {inner});
      }
      case PNode::Kind::Escape:
        // The escape argument is elaborated in the enclosing scope.
        return Term::app(asig_.quot, {term(n->children[0], scope)});
      default:
        fail_at(n, "expected a term inside a quotation");
    }
  }

  Term payload_formula(const PNodePtr& n, const Scope& scope) {
    switch (n->kind) {
      case PNode::Kind::Atom: {
        if (n->name == names::kTruth)
          fail_at(n, "truth is not quotable");
        const Symbol* qp = n->name == names::kIst
                               ? asig_.quoted_of_predicate(names::kIst)
                               : asig_.quoted_of_predicate(n->name);
        if (n->name == names::kEq) qp = asig_.quoted_of_predicate(names::kEq);
        if (!qp) fail_at(n, "unknown predicate " + n->name + " in quotation");
        std::vector<Term> args;
        for (const auto& a : n->children) args.push_back(payload_term(a, scope));
        return Term::app(*qp, std::move(args));
      }
      case PNode::Kind::Not:
        return Term::app(asig_.qneg, {payload_formula(n->children[0], scope)});
      case PNode::Kind::And:
        return Term::app(asig_.qand, {payload_formula(n->children[0], scope),
                                      payload_formula(n->children[1], scope)});
      case PNode::Kind::Or:
        return qor(asig_, payload_formula(n->children[0], scope),
                   payload_formula(n->children[1], scope));
      case PNode::Kind::Implies:
        return qimplies(asig_, payload_formula(n->children[0], scope),
                        payload_formula(n->children[1], scope));
      case PNode::Kind::Iff:
        return qiff(asig_, payload_formula(n->children[0], scope),
                    payload_formula(n->children[1], scope));
      case PNode::Kind::Forall:
      case PNode::Kind::Exists: {
        Scope inner = scope;
        for (const auto& [v, _] : n->binders) inner.stack.push_back(v);
        Term body = payload_formula(n->children[0], inner);
        for (auto it = n->binders.rbegin(); it != n->binders.rend(); ++it) {
          Term qv = quoted_var(n, it->first);
          if (n->kind == PNode::Kind::Exists) {
            body = Term::app(asig_.qneg, {std::move(body)});
            body = Term::app(asig_.qforall, {std::move(qv), std::move(body)});
            body = Term::app(asig_.qneg, {std::move(body)});
          } else {
            body = Term::app(asig_.qforall, {std::move(qv), std::move(body)});
          }
        }
        return body;
      }
      case PNode::Kind::Box:
      case PNode::Kind::Diamond:
        fail_at(n, "modal operators cannot appear inside quotations");
      default:
        fail_at(n, "expected a formula inside a quotation");
    }
  }

  Term payload(const PNodePtr& n, const Scope& scope) {
    // Payload-root atoms resolve to quoted variables when bound, and to term
    // quotations when their head is a known function.
    if (n->kind == PNode::Kind::Atom) {
      if (n->children.empty() && scope.bound(n->name))
        return quoted_var(n, n->name);
      if (asig_.base.find_function(n->name) != nullptr)
        return payload_term(PNode::make(PNode::Kind::App, n->name, n->children,
                                        n->line, n->col),
                            scope);
    }
    if (is_formula_kind(n->kind)) return payload_formula(n, scope);
    return payload_term(n, scope);
  }
};

std::string option_summary(bool temporal, bool typed,
                           const std::optional<ModalSystem>& modal) {
  std::string s;
  if (temporal) s += "temporal ";
  if (typed) s += "typed ";
  if (modal) s += "modal-" + to_string(*modal) + " ";
  if (!s.empty()) s.pop_back();
  return s;
}

}  // namespace

Elaborated elaborate(const TheoryDocument& input, const Overrides& cli) {
  bool temporal = cli.temporal.value_or(input.options.temporal);
  bool typed = cli.typed.value_or(input.options.typed);
  std::optional<std::string> modal_name =
      cli.modal ? cli.modal : input.options.modal;
  std::optional<ModalSystem> modal;
  if (modal_name) {
    modal = modal_system_from_name(*modal_name);
    if (!modal) throw Error("unknown modal system: " + *modal_name);
  }

  TheoryDocument doc = temporal ? elaborate_temporal(input) : input;

  DocWalker walker;
  Collector c = walker.collect(doc);
  if (c.modal_ops_used && !modal)
    throw Error("box/dia need modal mode (#option modal <system>)");

  // Assemble the base signature.
  Signature sig;
  for (const auto& [name, arity] : c.functions) sig.add_function(name, arity);
  for (const auto& [name, arity] : c.predicates) sig.add_predicate(name, arity);
  if (temporal) {
    TemporalSignature ec;
    for (const auto& p : ec.predicates()) sig.add_predicate(p.name, p.arity);
    sig.add_function(ec.zero.name, 0);
  }
  if (modal) sig.add_function(names::kBox, 0);
  bool disambiguation =
      cli.disambiguation.value_or(input.options.disambiguation);
  if (c.equality_used || disambiguation)
    sig.add_predicate(names::kEq, 2);

  // The quotable variable set V: explicit #quotable first, then every
  // variable that occurs inside a quotation, padded with canonical names.
  std::vector<std::string> V = doc.options.quotable;
  for (const auto& v : c.quotation_vars)
    if (std::find(V.begin(), V.end(), v) == V.end()) V.push_back(v);
  int target = std::max(3, sig.max_arity());
  if (input.options.vars) target = std::max(target, *input.options.vars);
  if (cli.vars) target = std::max(*cli.vars, static_cast<int>(V.size()));
  for (int i = 1; static_cast<int>(V.size()) < target; ++i) {
    std::string cand = "v" + std::to_string(i);
    if (std::find(V.begin(), V.end(), cand) != V.end()) continue;
    if (sig.functions.count(cand) || sig.predicates.count(cand)) continue;
    V.push_back(cand);
  }
  sig.quotable_vars = V;

  {
    auto diags = validate_base(sig);
    if (!diags.empty())
      throw Error("invalid signature: " + diags.front().message);
  }

  Elaborated out;
  out.asig = augment(sig);
  out.temporal = temporal;
  out.typed = typed;
  out.modal = modal;
  out.closure_options.explicit_equality =
      cli.explicit_equality.value_or(input.options.explicit_equality);
  out.closure_options.explosion = cli.explosion.value_or(input.options.explosion);
  out.closure_options.disambiguation = disambiguation;
  out.closure_options.mode_note = option_summary(temporal, typed, modal);

  Elaborator el(out.asig, c, modal.has_value());
  for (const auto& st : doc.axioms)
    out.axioms.push_back(
        UserAxiom{el.statement(st.node), "line " + std::to_string(st.line)});
  if (doc.conjecture) out.conjecture = el.statement(doc.conjecture->node);

  if (typed) {
    std::map<std::string, FunctionSig> fn_sigs;
    std::map<std::string, std::vector<std::string>> pred_sigs;
    std::map<std::string, std::string> var_sorts;
    for (const auto& sd : doc.sorts) {
      if (sd.result_sort)
        fn_sigs[sd.name] = FunctionSig{sd.arg_sorts, *sd.result_sort};
      else
        pred_sigs[sd.name] = sd.arg_sorts;
    }
    out.tsig = make_typed_signature(sig, fn_sigs, pred_sigs, var_sorts);
  }
  return out;
}

}  // namespace qiana
