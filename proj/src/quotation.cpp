#include "qiana/quotation.hpp"

#include <algorithm>

namespace qiana {

Term quote(const Term& t, const AugmentedSignature& asig) {
  if (t.is_var()) {
    const Symbol* qv = asig.quoted_of_var(t.var_name());
    if (!qv) throw Error("not quotable: variable " + t.var_name() + " outside V");
    return Term::app(*qv);
  }
  const Symbol& f = t.symbol();
  if (asig.is_quotation_symbol(f)) {
    if (!classify(t, asig).in_Qv)
      throw Error("not quotable: malformed quotation fragment " + to_string(t));
    return Term::app(asig.quot, {t});
  }
  const Symbol* qf = asig.quoted_of_function(f.name);
  if (!qf) throw Error("not quotable: unknown function " + f.name);
  std::vector<Term> qargs;
  qargs.reserve(t.args().size());
  for (const auto& a : t.args()) qargs.push_back(quote(a, asig));
  return Term::app(*qf, std::move(qargs));
}

Term quote(const Formula& f, const AugmentedSignature& asig) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Symbol& p = f.predicate();
      if (p.name == names::kTruth)
        throw Error("not quotable: the truth predicate");
      const Symbol* qp = asig.quoted_of_predicate(p.name);
      if (!qp) throw Error("not quotable: unknown predicate " + p.name);
      std::vector<Term> qargs;
      qargs.reserve(f.args().size());
      for (const auto& a : f.args()) qargs.push_back(quote(a, asig));
      return Term::app(*qp, std::move(qargs));
    }
    case Formula::Kind::Not:
      return Term::app(asig.qneg, {quote(f.child(), asig)});
    case Formula::Kind::And:
      return Term::app(asig.qand,
                       {quote(f.child(0), asig), quote(f.child(1), asig)});
    case Formula::Kind::Forall: {
      const Symbol* qv = asig.quoted_of_var(f.bound_var());
      if (!qv)
        throw Error("not quotable: bound variable " + f.bound_var() +
                    " outside V");
      return Term::app(asig.qforall, {Term::app(*qv), quote(f.child(), asig)});
    }
  }
  throw Error("not quotable");
}

namespace {

Term unquote_term(const Term& t, const AugmentedSignature& asig);

// The recursion of the unquoting definition, on terms known to be in Qv.
TermOrFormula unquote_node(const Term& t, const AugmentedSignature& asig) {
  if (t.is_app()) {
    const Symbol& f = t.symbol();
    if (const Symbol* base = asig.base_function_of(f.name)) {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(unquote_term(a, asig));
      return Term::app(*base, std::move(args));
    }
    if (const Symbol* base = asig.base_predicate_of(f.name)) {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(unquote_term(a, asig));
      return Formula::atom(*base, std::move(args));
    }
    if (f == asig.quot) return t.args()[0];
    if (f == asig.qand) {
      auto a = unquote_node(t.args()[0], asig);
      auto b = unquote_node(t.args()[1], asig);
      if (std::holds_alternative<Formula>(a) && std::holds_alternative<Formula>(b))
        return Formula::conj(std::get<Formula>(a), std::get<Formula>(b));
      return t;  // non-well-formed quotation; unquote leaves it alone
    }
    if (f == asig.qneg) {
      auto a = unquote_node(t.args()[0], asig);
      if (std::holds_alternative<Formula>(a))
        return Formula::negation(std::get<Formula>(a));
      return t;
    }
    if (f == asig.qforall) {
      const Term& binder = t.args()[0];
      if (binder.is_app() && asig.is_quoted_var(binder.symbol())) {
        std::string x = *asig.var_of(binder.symbol().name);
        Term body = subst_quoted(t.args()[1], binder.symbol(),
                                 Term::app(asig.quot, {Term::var(x)}), asig);
        auto a = unquote_node(body, asig);
        if (std::holds_alternative<Formula>(a))
          return Formula::forall(x, std::get<Formula>(a));
      }
      return t;
    }
    if (auto x = asig.var_of(f.name)) return Term::var(*x);
  }
  return t;  // all other cases
}

Term unquote_term(const Term& t, const AugmentedSignature& asig) {
  auto r = unquote_node(t, asig);
  if (std::holds_alternative<Term>(r)) return std::get<Term>(r);
  // A formula quotation in term position is not a well-formed unquoting step;
  // per the totalized definition the argument is returned unchanged.
  return t;
}

}  // namespace

TermOrFormula unquote(const Term& t, const AugmentedSignature& asig) {
  if (!classify(t, asig).in_Qv)
    throw Error("not in Qv: " + to_string(t));
  return unquote_node(t, asig);
}

Term subst_quoted(const Term& z, const Symbol& qvar, const Term& t,
                  const AugmentedSignature& asig) {
  if (!asig.is_quoted_var(qvar))
    throw Error("subst_quoted: " + qvar.name + " is not a quoted variable");
  if (z.is_var()) return z;
  const Symbol& f = z.symbol();
  if (f == qvar) return t;
  if (f == asig.quot) return z;
  if (f == asig.qforall) {
    const Term& binder = z.args()[0];
    if (binder.is_app() && binder.symbol() == qvar) return z;
    // The binder position participates in the recursion like any argument.
    return Term::app(asig.qforall,
                     {subst_quoted(binder, qvar, t, asig),
                      subst_quoted(z.args()[1], qvar, t, asig)});
  }
  if (asig.is_quoted_function(f) || asig.is_quoted_predicate(f) ||
      f == asig.qand || f == asig.qneg) {
    std::vector<Term> args;
    args.reserve(z.args().size());
    for (const auto& a : z.args()) args.push_back(subst_quoted(a, qvar, t, asig));
    return Term::app(f, std::move(args));
  }
  return z;  // all other cases
}

Term subst(const Term& t, const std::string& var, const Term& replacement) {
  if (t.is_var()) return t.var_name() == var ? replacement : t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(subst(a, var, replacement));
  return Term::app(t.symbol(), std::move(args));
}

Formula subst(const Formula& f, const std::string& var, const Term& replacement) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(subst(a, var, replacement));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(subst(f.child(), var, replacement));
    case Formula::Kind::And:
      return Formula::conj(subst(f.child(0), var, replacement),
                           subst(f.child(1), var, replacement));
    case Formula::Kind::Forall: {
      if (f.bound_var() == var) return f;
      auto captured = free_vars(replacement);
      if (captured.count(f.bound_var())) {
        // Rename the binder away from the replacement's variables.
        std::string fresh = f.bound_var();
        auto body_vars = free_vars(f.child());
        do {
          fresh += "_";
        } while (captured.count(fresh) || body_vars.count(fresh));
        Formula renamed = subst(f.child(), f.bound_var(), Term::var(fresh));
        return Formula::forall(fresh, subst(renamed, var, replacement));
      }
      return Formula::forall(f.bound_var(), subst(f.child(), var, replacement));
    }
  }
  throw Error("unreachable");
}

}  // namespace qiana
