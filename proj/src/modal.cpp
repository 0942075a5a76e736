#include "qiana/modal.hpp"

#include "qiana/quotation.hpp"

namespace qiana {

std::optional<ModalSystem> modal_system_from_name(const std::string& name) {
  if (name == "k") return ModalSystem::K;
  if (name == "t") return ModalSystem::T;
  if (name == "s4") return ModalSystem::S4;
  if (name == "s5") return ModalSystem::S5;
  if (name == "d") return ModalSystem::D;
  return std::nullopt;
}

std::string to_string(ModalSystem s) {
  switch (s) {
    case ModalSystem::K: return "k";
    case ModalSystem::T: return "t";
    case ModalSystem::S4: return "s4";
    case ModalSystem::S5: return "s5";
    case ModalSystem::D: return "d";
  }
  return "?";
}

ModalFormula ModalFormula::prop(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->name = std::move(name);
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::negation(ModalFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children.push_back(std::move(f));
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::conj(ModalFormula a, ModalFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::disj(ModalFormula a, ModalFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::implies(ModalFormula a, ModalFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::box(ModalFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->children.push_back(std::move(f));
  return ModalFormula(std::move(n));
}
ModalFormula ModalFormula::diamond(ModalFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diamond;
  n->children.push_back(std::move(f));
  return ModalFormula(std::move(n));
}

Symbol modal_box_symbol() { return func(names::kBox, 0); }
Symbol modal_wff_symbol() { return pred(names::kWff, 1); }
Symbol modal_tauto_symbol() { return pred(names::kTauto, 1); }

namespace {

Formula unembedded(const ModalFormula& mf, const AugmentedSignature& asig) {
  switch (mf.kind()) {
    case ModalFormula::Kind::Prop: {
      const Symbol* p = asig.base.find_predicate(mf.prop_name());
      if (!p || p->arity != 0)
        throw Error("undeclared proposition: " + mf.prop_name());
      return Formula::atom(*p);
    }
    case ModalFormula::Kind::Not:
      return Formula::negation(unembedded(mf.child(), asig));
    case ModalFormula::Kind::And:
      return Formula::conj(unembedded(mf.child(0), asig),
                           unembedded(mf.child(1), asig));
    case ModalFormula::Kind::Or:
      return Formula::disj(unembedded(mf.child(0), asig),
                           unembedded(mf.child(1), asig));
    case ModalFormula::Kind::Implies:
      return Formula::implies(unembedded(mf.child(0), asig),
                              unembedded(mf.child(1), asig));
    case ModalFormula::Kind::Box:
    case ModalFormula::Kind::Diamond: {
      Term box = Term::app(*asig.base.find_function(names::kBox));
      Term inner = quote(embed_modal_formula(mf.child(), asig), asig);
      if (mf.kind() == ModalFormula::Kind::Box)
        return Formula::atom(asig.ist, {box, inner});
      return Formula::negation(Formula::atom(
          asig.ist, {box, Term::app(asig.qneg, {inner})}));
    }
  }
  throw Error("unreachable");
}

}  // namespace

Formula embed_modal_formula(const ModalFormula& mf,
                            const AugmentedSignature& asig) {
  if (!asig.base.find_function(names::kBox))
    throw Error("modal mode requires the box context constant");
  return unembedded(mf, asig);
}

AxiomSet gen_modal_system(ModalSystem sys, const AugmentedSignature& asig) {
  AxiomSet out;
  Symbol wff = modal_wff_symbol();
  Symbol tauto = modal_tauto_symbol();
  const Symbol* box_fn = asig.base.find_function(names::kBox);
  if (!box_fn) throw Error("modal mode requires the box context constant");
  const Symbol* q_box = asig.quoted_of_function(names::kBox);
  const Symbol* q_ist = asig.quoted_of_predicate(names::kIst);
  Term box = Term::app(*box_fn);
  Term qbox = Term::app(*q_box);

  auto V = [](const char* n) { return Term::var(n); };
  auto wffof = [&](Term t) { return Formula::atom(wff, {std::move(t)}); };
  auto tautoof = [&](Term t) { return Formula::atom(tauto, {std::move(t)}); };
  auto istof = [&](Term t) { return Formula::atom(asig.ist, {box, std::move(t)}); };
  auto qi = [&](Term a, Term b) { return qimplies(asig, std::move(a), std::move(b)); };
  auto qn = [&](Term a) { return Term::app(asig.qneg, {std::move(a)}); };
  auto qa = [&](Term a, Term b) {
    return Term::app(asig.qand, {std::move(a), std::move(b)});
  };
  auto quoted_box = [&](Term t) {  // ist-quotation of "box <t>"
    return Term::app(*q_ist, {qbox, Term::app(asig.quot, {std::move(t)})});
  };
  auto close = [](std::vector<std::string> vars, Formula f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      f = Formula::forall(*it, std::move(f));
    return f;
  };

  // T1: one Wff instance per declared arity-0 predicate.
  for (const auto& [name, p] : asig.base.predicates) {
    if (p.arity != 0) continue;
    const Symbol* qp = asig.quoted_of_predicate(name);
    out.add("t1_" + name, wffof(Term::app(*qp)), "MODAL-T1", name);
  }
  out.add("t2",
          close({"A"}, Formula::implies(wffof(V("A")), wffof(qn(V("A"))))),
          "MODAL-T2");
  out.add("t3",
          close({"A", "B"},
                Formula::implies(Formula::conj(wffof(V("A")), wffof(V("B"))),
                                 wffof(qa(V("A"), V("B"))))),
          "MODAL-T3");
  out.add("t4",
          close({"A"},
                Formula::implies(wffof(V("A")), wffof(quoted_box(V("A"))))),
          "MODAL-T4");
  out.add("t5",
          close({"A", "B"},
                Formula::implies(
                    Formula::conj(wffof(V("A")), wffof(V("B"))),
                    tautoof(qi(V("A"), qi(V("B"), V("A")))))),
          "MODAL-T5");
  out.add("t6",
          close({"A", "B", "C"},
                Formula::implies(
                    Formula::conj(Formula::conj(wffof(V("A")), wffof(V("B"))),
                                  wffof(V("C"))),
                    tautoof(qi(qi(V("A"), qi(V("B"), V("C"))),
                               qi(qi(V("A"), V("B")), qi(V("A"), V("C"))))))),
          "MODAL-T6");
  out.add("t7",
          close({"A", "B"},
                Formula::implies(
                    Formula::conj(wffof(V("A")), wffof(V("B"))),
                    tautoof(qi(qi(qn(V("B")), qn(V("A"))),
                               qi(qi(qn(V("B")), V("A")), V("B")))))),
          "MODAL-T7");
  out.add("t8",
          close({"A", "B"},
                Formula::implies(
                    Formula::conj(tautoof(qi(V("A"), V("B"))), tautoof(V("A"))),
                    tautoof(V("B")))),
          "MODAL-T8");
  out.add("t9",
          close({"A"},
                Formula::implies(tautoof(V("A")), tautoof(quoted_box(V("A"))))),
          "MODAL-T9");
  out.add("t9_k",
          close({"A", "B"},
                Formula::implies(
                    tautoof(quoted_box(qi(V("A"), V("B")))),
                    tautoof(qi(quoted_box(V("A")), quoted_box(V("B")))))),
          "MODAL-T9", "k-distribution");

  out.add("qk",
          close({"P", "Q"},
                Formula::implies(istof(qi(V("P"), V("Q"))),
                                 Formula::implies(istof(V("P")), istof(V("Q"))))),
          "MODAL-QK");
  out.add("qn",
          close({"P"}, Formula::implies(tautoof(V("P")), istof(V("P")))),
          "MODAL-QN");

  bool has_t = sys == ModalSystem::T || sys == ModalSystem::S4 ||
               sys == ModalSystem::S5;
  if (has_t)
    out.add("qt",
            close({"P"}, Formula::implies(
                             istof(V("P")),
                             Formula::atom(asig.truth, {V("P")}))),
            "MODAL-QT");
  if (sys == ModalSystem::S4)
    out.add("q4",
            close({"P"},
                  Formula::implies(istof(V("P")), istof(quoted_box(V("P"))))),
            "MODAL-Q4");
  if (sys == ModalSystem::S5) {
    // dia p -> box |dia p|
    Formula dia_p = Formula::negation(istof(qn(V("P"))));
    Term quoted_dia = qn(quoted_box(qn(V("P"))));
    out.add("q5",
            close({"P"}, Formula::implies(std::move(dia_p), istof(quoted_dia))),
            "MODAL-Q5");
  }
  if (sys == ModalSystem::D)
    out.add("qd",
            close({"P"},
                  Formula::implies(istof(V("P")),
                                   Formula::negation(istof(qn(V("P")))))),
            "MODAL-QD");
  return out;
}

}  // namespace qiana
