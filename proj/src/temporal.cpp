#include "qiana/temporal.hpp"

#include "qiana/frontend.hpp"

namespace qiana {

std::vector<Symbol> TemporalSignature::predicates() const {
  return {holds_at, happens,   initiates, terminates, releases,
          clipped,  declipped, initially, lt,         leq};
}

AxiomSet gen_event_calculus_axioms(const AugmentedSignature& asig) {
  TemporalSignature ec;
  AxiomSet out;
  auto V = [](const char* n) { return Term::var(n); };
  auto close = [](std::vector<std::string> vars, Formula f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      f = Formula::forall(*it, std::move(f));
    return f;
  };
  Term zero = Term::app(ec.zero);
  auto holds = [&](Term f, Term t) {
    return Formula::atom(ec.holds_at, {std::move(f), std::move(t)});
  };
  auto lt = [&](Term a, Term b) {
    return Formula::atom(ec.lt, {std::move(a), std::move(b)});
  };

  // EC1: initially-true fluents hold until clipped.
  out.add("ec1",
          close({"F", "T"},
                Formula::implies(
                    Formula::conj(
                        Formula::atom(ec.initially, {V("F")}),
                        Formula::negation(Formula::atom(
                            ec.clipped, {zero, V("F"), V("T")}))),
                    holds(V("F"), V("T")))),
          "EC1");
  // EC2: initiated fluents hold later unless clipped in between.
  out.add("ec2",
          close({"F", "T3", "A", "T1", "T2"},
                Formula::implies(
                    Formula::conj(
                        Formula::conj(
                            Formula::conj(
                                Formula::atom(ec.happens,
                                              {V("A"), V("T1"), V("T2")}),
                                Formula::atom(ec.initiates,
                                              {V("A"), V("F"), V("T1")})),
                            Formula::negation(Formula::atom(
                                ec.clipped, {V("T1"), V("F"), V("T3")}))),
                        lt(V("T2"), V("T3"))),
                    holds(V("F"), V("T3")))),
          "EC2");
  // EC3: the definition of Clipped.
  out.add(
      "ec3",
      close({"T1", "F", "T4"},
            Formula::iff(
                Formula::atom(ec.clipped, {V("T1"), V("F"), V("T4")}),
                Formula::exists(
                    "A",
                    Formula::exists(
                        "T2",
                        Formula::exists(
                            "T3",
                            Formula::conj(
                                Formula::conj(
                                    Formula::conj(
                                        Formula::atom(ec.happens,
                                                      {V("A"), V("T2"),
                                                       V("T3")}),
                                        Formula::disj(
                                            Formula::atom(ec.terminates,
                                                          {V("A"), V("F"),
                                                           V("T2")}),
                                            Formula::atom(ec.releases,
                                                          {V("A"), V("F"),
                                                           V("T2")}))),
                                    lt(V("T1"), V("T3"))),
                                lt(V("T2"), V("T4")))))))),
      "EC3");
  // EC4: Initially(qneg f) renders the negative initial condition.
  out.add("ec4",
          close({"F", "T"},
                Formula::implies(
                    Formula::conj(
                        Formula::atom(ec.initially,
                                      {Term::app(asig.qneg, {V("F")})}),
                        Formula::negation(Formula::atom(
                            ec.declipped, {zero, V("F"), V("T")}))),
                    Formula::negation(holds(V("F"), V("T"))))),
          "EC4");
  // EC5: terminated fluents stay false unless declipped.
  out.add("ec5",
          close({"F", "T3", "A", "T1", "T2"},
                Formula::implies(
                    Formula::conj(
                        Formula::conj(
                            Formula::conj(
                                Formula::atom(ec.happens,
                                              {V("A"), V("T1"), V("T2")}),
                                Formula::atom(ec.terminates,
                                              {V("A"), V("F"), V("T1")})),
                            Formula::negation(Formula::atom(
                                ec.declipped, {V("T1"), V("F"), V("T3")}))),
                        lt(V("T2"), V("T3"))),
                    Formula::negation(holds(V("F"), V("T3"))))),
          "EC5");
  // EC6: the definition of Declipped.
  out.add(
      "ec6",
      close({"T1", "F", "T4"},
            Formula::iff(
                Formula::atom(ec.declipped, {V("T1"), V("F"), V("T4")}),
                Formula::exists(
                    "A",
                    Formula::exists(
                        "T2",
                        Formula::exists(
                            "T3",
                            Formula::conj(
                                Formula::conj(
                                    Formula::conj(
                                        Formula::atom(ec.happens,
                                                      {V("A"), V("T2"),
                                                       V("T3")}),
                                        Formula::disj(
                                            Formula::atom(ec.initiates,
                                                          {V("A"), V("F"),
                                                           V("T2")}),
                                            Formula::atom(ec.releases,
                                                          {V("A"), V("F"),
                                                           V("T2")}))),
                                    lt(V("T1"), V("T3"))),
                                lt(V("T2"), V("T4")))))))),
      "EC6");
  // EC7: actions span forward intervals.
  out.add("ec7",
          close({"A", "T1", "T2"},
                Formula::implies(
                    Formula::atom(ec.happens, {V("A"), V("T1"), V("T2")}),
                    Formula::atom(ec.leq, {V("T1"), V("T2")}))),
          "EC7");
  return out;
}

namespace {

PNodePtr rewrite(const PNodePtr& n) {
  if (!n) return n;
  std::vector<PNodePtr> children;
  children.reserve(n->children.size());
  bool changed = false;
  for (const auto& c : n->children) {
    PNodePtr r = rewrite(c);
    changed |= (r != c);
    children.push_back(std::move(r));
  }
  bool is_happens2 = n->kind == PNode::Kind::Atom && n->name == "Happens" &&
                     children.size() == 2;
  if (!changed && !is_happens2) return n;
  auto out = std::make_shared<PNode>(*n);
  out->children = std::move(children);
  if (is_happens2) out->children.push_back(out->children[1]);
  return out;
}

void check_arities(const PNodePtr& n, const TemporalSignature& ec) {
  if (!n) return;
  if (n->kind == PNode::Kind::Atom) {
    for (const auto& s : ec.predicates()) {
      if (n->name == s.name &&
          static_cast<int>(n->children.size()) != s.arity &&
          !(s.name == "Happens" && n->children.size() == 2))
        throw Error("arity clash: " + n->name + "/" +
                    std::to_string(n->children.size()) + " conflicts with the "
                    "event-calculus symbol " + s.name + "/" +
                    std::to_string(s.arity) + " (line " +
                    std::to_string(n->line) + ")");
    }
  }
  for (const auto& c : n->children) check_arities(c, ec);
}

}  // namespace

TheoryDocument elaborate_temporal(const TheoryDocument& doc) {
  TemporalSignature ec;
  for (const auto& st : doc.axioms) check_arities(st.node, ec);
  if (doc.conjecture) check_arities(doc.conjecture->node, ec);

  TheoryDocument out = doc;
  for (auto& st : out.axioms) st.node = rewrite(st.node);
  if (out.conjecture) out.conjecture->node = rewrite(out.conjecture->node);
  return out;
}

}  // namespace qiana
