#include "qiana/typed.hpp"

#include <algorithm>
#include <sstream>

#include "qiana/temporal.hpp"

namespace qiana {

namespace {

const std::vector<std::string> kBaseSorts = {
    sorts::kObject, sorts::kQuotation, sorts::kContext, sorts::kTime,
    sorts::kAction};

Symbol family(const char* stem, const std::string& sort, SymbolKind kind,
              int arity) {
  return Symbol{std::string(stem) + "_" + sort, kind, arity};
}

}  // namespace

bool TypedSignature::has_sort(const std::string& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

Symbol TypedSignature::quot_of(const std::string& sort) const {
  return family(names::kQuot, sort, SymbolKind::Function, 1);
}
Symbol TypedSignature::eval_of(const std::string& sort) const {
  return family(names::kEval, sort, SymbolKind::Function, 1);
}
Symbol TypedSignature::reach_of(const std::string& sort) const {
  return family(names::kReach, sort, SymbolKind::Predicate, 1);
}
Symbol TypedSignature::wft_of(const std::string& sort) const {
  return family(names::kWft, sort, SymbolKind::Predicate, 1);
}

TypedSignature make_typed_signature(
    const Signature& base,
    const std::map<std::string, FunctionSig>& function_sigs,
    const std::map<std::string, std::vector<std::string>>& predicate_sigs,
    const std::map<std::string, std::string>& quotable_var_sorts,
    const std::vector<std::string>& extra_sorts) {
  TypedSignature out;
  out.asig = augment(base);
  out.sorts = kBaseSorts;
  for (const auto& s : extra_sorts)
    if (!out.has_sort(s)) out.sorts.push_back(s);

  auto check_sort = [&](const std::string& s, const std::string& where) {
    if (!out.has_sort(s)) throw Error("unknown sort " + s + " in " + where);
  };

  for (const auto& [name, s] : out.asig.base.functions) {
    auto it = function_sigs.find(name);
    if (it != function_sigs.end()) {
      if (static_cast<int>(it->second.arg_sorts.size()) != s.arity)
        throw Error("sort declaration of " + name + " has " +
                    std::to_string(it->second.arg_sorts.size()) +
                    " arguments, symbol has arity " + std::to_string(s.arity));
      for (const auto& g : it->second.arg_sorts) check_sort(g, name);
      check_sort(it->second.result_sort, name);
      out.function_sigs[name] = it->second;
    } else {
      out.function_sigs[name] = FunctionSig{
          std::vector<std::string>(s.arity, sorts::kObject), sorts::kObject};
    }
  }
  for (const auto& [name, s] : out.asig.base.predicates) {
    if (name == names::kIst) {
      out.predicate_sigs[name] = {sorts::kContext, sorts::kQuotation};
      continue;
    }
    auto it = predicate_sigs.find(name);
    if (it != predicate_sigs.end()) {
      if (static_cast<int>(it->second.size()) != s.arity)
        throw Error("sort declaration of " + name + " has " +
                    std::to_string(it->second.size()) +
                    " arguments, symbol has arity " + std::to_string(s.arity));
      for (const auto& g : it->second) check_sort(g, name);
      out.predicate_sigs[name] = it->second;
    } else {
      out.predicate_sigs[name] =
          std::vector<std::string>(s.arity, sorts::kObject);
    }
  }
  // Event-calculus symbols get their Table-3 signatures when present.
  {
    TemporalSignature ec;
    auto set_if_present = [&](const Symbol& s, std::vector<std::string> sig) {
      if (out.asig.base.find_predicate(s.name) && !predicate_sigs.count(s.name))
        out.predicate_sigs[s.name] = std::move(sig);
    };
    const std::string q = sorts::kQuotation, t = sorts::kTime,
                      a = sorts::kAction;
    set_if_present(ec.holds_at, {q, t});
    set_if_present(ec.happens, {a, t, t});
    set_if_present(ec.initiates, {a, q, t});
    set_if_present(ec.terminates, {a, q, t});
    set_if_present(ec.releases, {a, q, t});
    set_if_present(ec.clipped, {t, q, t});
    set_if_present(ec.declipped, {t, q, t});
    set_if_present(ec.initially, {q});
    set_if_present(ec.lt, {t, t});
    set_if_present(ec.leq, {t, t});
    if (out.asig.base.find_function("0") && !function_sigs.count("0"))
      out.function_sigs["0"] = FunctionSig{{}, t};
    if (out.asig.base.find_function(names::kBox) &&
        !function_sigs.count(names::kBox))
      out.function_sigs[names::kBox] = FunctionSig{{}, sorts::kContext};
  }
  for (const auto& v : out.asig.base.quotable_vars) {
    auto it = quotable_var_sorts.find(v);
    std::string s = it == quotable_var_sorts.end() ? sorts::kObject : it->second;
    check_sort(s, "variable " + v);
    out.quotable_var_sorts[v] = s;
  }
  return out;
}

namespace {

struct Typechecker {
  const TypedSignature& tsig;
  std::vector<Diagnostic> diags;

  std::optional<std::string> term_sort(const Term& t,
                                       std::map<std::string, std::string>& env) {
    if (t.is_var()) {
      auto it = env.find(t.var_name());
      if (it != env.end()) return it->second;
      diags.push_back({"unbound variable " + t.var_name()});
      return std::nullopt;
    }
    const Symbol& f = t.symbol();
    std::vector<std::string> expect;
    std::string result;
    const auto& asig = tsig.asig;
    if (const Symbol* base = asig.base.find_function(f.name)) {
      (void)base;
      const auto& sig = tsig.function_sigs.at(f.name);
      expect = sig.arg_sorts;
      result = sig.result_sort;
    } else if (asig.is_quotation_symbol(f) && f != asig.quot) {
      expect.assign(f.arity, sorts::kQuotation);
      result = sorts::kQuotation;
    } else if (f == asig.subq) {
      expect = {sorts::kQuotation, sorts::kQuotation, sorts::kQuotation};
      result = sorts::kQuotation;
    } else {
      // per-sort families: quot_g, eval_g (and the untyped quot in erased
      // contexts is not expected here)
      for (const auto& g : tsig.sorts) {
        if (f == tsig.quot_of(g)) {
          expect = {g};
          result = sorts::kQuotation;
          break;
        }
        if (f == tsig.eval_of(g)) {
          expect = {sorts::kQuotation};
          result = g;
          break;
        }
      }
      if (result.empty()) {
        diags.push_back({"unknown function symbol " + f.name});
        return std::nullopt;
      }
    }
    for (size_t i = 0; i < t.args().size(); ++i) {
      auto got = term_sort(t.args()[i], env);
      if (got && *got != expect[i])
        diags.push_back({"in " + f.name + ": argument " +
                         std::to_string(i + 1) + " expected " + expect[i] +
                         ", got " + *got});
    }
    return result;
  }

  void check_formula(const Formula& f, std::map<std::string, std::string>& env) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        const Symbol& p = f.predicate();
        const auto& asig = tsig.asig;
        std::vector<std::string> expect;
        if (p.name == names::kEq) {
          auto a = term_sort(f.args()[0], env);
          auto b = term_sort(f.args()[1], env);
          if (a && b && *a != *b)
            diags.push_back({"equality between sorts " + *a + " and " + *b});
          return;
        }
        if (p == asig.truth) {
          expect = {sorts::kQuotation};
        } else if (p == asig.ist) {
          expect = {sorts::kContext, sorts::kQuotation};
        } else if (asig.base.find_predicate(p.name)) {
          expect = tsig.predicate_sigs.at(p.name);
        } else {
          bool found = false;
          for (const auto& g : tsig.sorts) {
            if (p == tsig.reach_of(g)) {
              expect = {g};
              found = true;
              break;
            }
            if (p == tsig.wft_of(g)) {
              expect = {sorts::kQuotation};
              found = true;
              break;
            }
          }
          if (!found) {
            diags.push_back({"unknown predicate symbol " + p.name});
            return;
          }
        }
        for (size_t i = 0; i < f.args().size(); ++i) {
          auto got = term_sort(f.args()[i], env);
          if (got && *got != expect[i])
            diags.push_back({"in " + p.name + ": argument " +
                             std::to_string(i + 1) + " expected " + expect[i] +
                             ", got " + *got});
        }
        return;
      }
      case Formula::Kind::Not:
        check_formula(f.child(), env);
        return;
      case Formula::Kind::And:
        check_formula(f.child(0), env);
        check_formula(f.child(1), env);
        return;
      case Formula::Kind::Forall: {
        std::string sort =
            f.bound_sort().empty() ? sorts::kObject : f.bound_sort();
        if (!tsig.has_sort(sort)) {
          diags.push_back({"unknown sort " + sort});
          sort = sorts::kObject;
        }
        auto it = env.find(f.bound_var());
        std::optional<std::string> saved;
        if (it != env.end()) saved = it->second;
        env[f.bound_var()] = sort;
        check_formula(f.child(), env);
        if (saved)
          env[f.bound_var()] = *saved;
        else
          env.erase(f.bound_var());
        return;
      }
    }
  }
};

}  // namespace

TypecheckResult typecheck(const Term& t, const TypedSignature& tsig,
                          const std::map<std::string, std::string>& env) {
  Typechecker tc{tsig, {}};
  auto e = env;
  auto s = tc.term_sort(t, e);
  return TypecheckResult{s, std::move(tc.diags)};
}

TypecheckResult typecheck(const Formula& f, const TypedSignature& tsig,
                          const std::map<std::string, std::string>& env) {
  Typechecker tc{tsig, {}};
  auto e = env;
  tc.check_formula(f, e);
  return TypecheckResult{std::nullopt, std::move(tc.diags)};
}

Formula erase_sorts(const Formula& f, const TypedSignature& tsig);

namespace {

Term erase_term(const Term& t, const TypedSignature& tsig) {
  if (t.is_var()) return t;
  Symbol s = t.symbol();
  for (const auto& g : tsig.sorts) {
    if (s == tsig.quot_of(g)) s = tsig.asig.quot;
    if (s == tsig.eval_of(g)) s = tsig.asig.eval;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(erase_term(a, tsig));
  return Term::app(std::move(s), std::move(args));
}

}  // namespace

Formula erase_sorts(const Formula& f, const TypedSignature& tsig) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      Symbol p = f.predicate();
      for (const auto& g : tsig.sorts) {
        if (p == tsig.reach_of(g)) p = tsig.asig.reach;
        if (p == tsig.wft_of(g)) p = tsig.asig.wft;
      }
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(erase_term(a, tsig));
      return Formula::atom(std::move(p), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(erase_sorts(f.child(), tsig));
    case Formula::Kind::And:
      return Formula::conj(erase_sorts(f.child(0), tsig),
                           erase_sorts(f.child(1), tsig));
    case Formula::Kind::Forall:
      return Formula::forall(f.bound_var(), erase_sorts(f.child(), tsig));
  }
  throw Error("unreachable");
}

// ---- typed axiom generation ---------------------------------------------

namespace {

Term V(const std::string& n) { return Term::var(n); }

Formula close_sorted(std::vector<std::pair<std::string, std::string>> vars,
                     Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    f = Formula::forall(it->first, std::move(f), it->second);
  return f;
}

Formula guard_chain(std::vector<Formula> guards, Formula body) {
  if (guards.empty()) return body;
  Formula g = guards[0];
  for (size_t i = 1; i < guards.size(); ++i)
    g = Formula::conj(std::move(g), guards[i]);
  return Formula::implies(std::move(g), std::move(body));
}

// All S' functions with their typed signatures.
std::vector<std::pair<Symbol, FunctionSig>> typed_functions(
    const TypedSignature& tsig) {
  const auto& asig = tsig.asig;
  const std::string q = sorts::kQuotation;
  std::vector<std::pair<Symbol, FunctionSig>> out;
  for (const auto& [name, s] : asig.base.functions)
    out.emplace_back(s, tsig.function_sigs.at(name));
  auto all_q = [&](const Symbol& s) {
    out.emplace_back(s, FunctionSig{std::vector<std::string>(s.arity, q), q});
  };
  for (const auto& [_, s] : asig.quoted_functions) all_q(s);
  for (const auto& [_, s] : asig.quoted_predicates) all_q(s);
  for (const auto& [_, s] : asig.quoted_vars) all_q(s);
  all_q(asig.qand);
  all_q(asig.qforall);
  all_q(asig.qneg);
  for (const auto& g : tsig.sorts) {
    out.emplace_back(tsig.quot_of(g), FunctionSig{{g}, q});
    out.emplace_back(tsig.eval_of(g), FunctionSig{{q}, g});
  }
  out.emplace_back(asig.subq, FunctionSig{{q, q, q}, q});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

AxiomSet gen_typed_event_calculus_axioms(const TypedSignature& tsig) {
  AxiomSet untyped = gen_event_calculus_axioms(tsig.asig);
  // The untyped transcription quantifies in the right order; retag binders
  // with the Table-3 sorts (F: q, A: a, T*: tau).
  AxiomSet out;
  for (auto& a : untyped.axioms) {
    struct Retag {
      static Formula run(const Formula& f) {
        switch (f.kind()) {
          case Formula::Kind::Atom:
            return f;
          case Formula::Kind::Not:
            return Formula::negation(run(f.child()));
          case Formula::Kind::And:
            return Formula::conj(run(f.child(0)), run(f.child(1)));
          case Formula::Kind::Forall: {
            const std::string& v = f.bound_var();
            std::string sort = v[0] == 'F'   ? sorts::kQuotation
                               : v[0] == 'A' ? sorts::kAction
                                             : sorts::kTime;
            return Formula::forall(v, run(f.child()), sort);
          }
        }
        throw Error("unreachable");
      }
    };
    out.add(a.name, Retag::run(a.formula), a.provenance, a.params);
  }
  return out;
}

AxiomSet gen_typed_closure(const std::vector<UserAxiom>& theory,
                           const TypedSignature& tsig,
                           const ClosureOptions& opts) {
  const auto& asig = tsig.asig;
  const std::string q = sorts::kQuotation, c = sorts::kContext;
  AxiomSet out;

  int i = 0;
  for (const auto& ua : theory) {
    auto tc = typecheck(ua.formula, tsig);
    if (!tc.ok())
      throw Error("ill-typed user axiom (" + ua.label +
                  "): " + tc.diagnostics.front().message);
    out.add("user_" + std::to_string(++i), ua.formula, "USER", ua.label);
  }

  // A5-A10 with context/quotation sorts.
  {
    AxiomSet ist_axioms = gen_ist_axioms(asig);
    for (auto& a : ist_axioms.axioms) {
      struct Retag {
        static Formula run(const Formula& f) {
          switch (f.kind()) {
            case Formula::Kind::Atom:
              return f;
            case Formula::Kind::Not:
              return Formula::negation(run(f.child()));
            case Formula::Kind::And:
              return Formula::conj(run(f.child(0)), run(f.child(1)));
            case Formula::Kind::Forall:
              return Formula::forall(f.bound_var(), run(f.child()),
                                     f.bound_var() == "Xc" ? sorts::kContext
                                                           : sorts::kQuotation);
          }
          throw Error("unreachable");
        }
      };
      out.add(a.name, Retag::run(a.formula), a.provenance, a.params);
    }
  }

  auto reach = [&](const std::string& sort, Term t) {
    return Formula::atom(tsig.reach_of(sort), {std::move(t)});
  };
  auto wft = [&](const std::string& sort, Term t) {
    return Formula::atom(tsig.wft_of(sort), {std::move(t)});
  };
  auto evalg = [&](const std::string& sort, Term t) {
    return Term::app(tsig.eval_of(sort), {std::move(t)});
  };
  auto quotg = [&](const std::string& sort, Term t) {
    return Term::app(tsig.quot_of(sort), {std::move(t)});
  };
  auto subq3 = [&](Term a, Term b, Term cc) {
    return Term::app(asig.subq, {std::move(a), std::move(b), std::move(cc)});
  };
  auto var_sort = [&](const std::string& v) {
    return tsig.quotable_var_sorts.at(v);
  };

  // A12-A16 (explicit equality): reflexivity etc. per sort, congruences per
  // symbol. Native mode leaves equality to the prover's sorted "=".
  if (opts.explicit_equality) {
    for (const auto& g : tsig.sorts) {
      out.add("a12_" + g, close_sorted({{"X", g}}, Formula::equal(V("X"), V("X"))),
              "A12", g);
      out.add("a13_" + g,
              close_sorted({{"X", g}, {"Y", g}},
                           Formula::implies(Formula::equal(V("X"), V("Y")),
                                            Formula::equal(V("Y"), V("X")))),
              "A13", g);
      out.add("a14_" + g,
              close_sorted({{"X", g}, {"Y", g}, {"Z", g}},
                           Formula::implies(
                               Formula::conj(Formula::equal(V("X"), V("Y")),
                                             Formula::equal(V("Y"), V("Z"))),
                               Formula::equal(V("X"), V("Z")))),
              "A14", g);
    }
    for (const auto& [f, sig] : typed_functions(tsig)) {
      if (f.arity == 0) continue;
      std::vector<std::pair<std::string, std::string>> vars;
      std::vector<Formula> hyps;
      std::vector<Term> xs, ys;
      for (int k = 0; k < f.arity; ++k) {
        std::string xn = "X" + std::to_string(k + 1);
        std::string yn = "Y" + std::to_string(k + 1);
        vars.push_back({xn, sig.arg_sorts[k]});
        vars.push_back({yn, sig.arg_sorts[k]});
        hyps.push_back(Formula::equal(V(xn), V(yn)));
        xs.push_back(V(xn));
        ys.push_back(V(yn));
      }
      out.add("a15_" + (f.name == names::kEq ? "eq" : f.name),
              close_sorted(vars, guard_chain(hyps,
                                             Formula::equal(Term::app(f, xs),
                                                            Term::app(f, ys)))),
              "A15", f.name);
    }
    for (const auto& [pname, psig] : tsig.predicate_sigs) {
      const Symbol* p = asig.base.find_predicate(pname);
      if (!p || p->arity == 0) continue;
      std::vector<std::pair<std::string, std::string>> vars;
      std::vector<Formula> hyps;
      std::vector<Term> xs, ys;
      for (int k = 0; k < p->arity; ++k) {
        std::string xn = "X" + std::to_string(k + 1);
        std::string yn = "Y" + std::to_string(k + 1);
        vars.push_back({xn, psig[k]});
        vars.push_back({yn, psig[k]});
        hyps.push_back(Formula::equal(V(xn), V(yn)));
        xs.push_back(V(xn));
        ys.push_back(V(yn));
      }
      out.add("a16_" + (pname == names::kEq ? "eq" : pname),
              close_sorted(vars,
                           guard_chain(hyps,
                                       Formula::iff(Formula::atom(*p, xs),
                                                    Formula::atom(*p, ys)))),
              "A16", pname);
    }
  }

  // Reach per sort: escape injections and closure under every S' function.
  for (const auto& g : tsig.sorts)
    out.add("a17_" + g,
            close_sorted({{"X", g}}, reach(q, quotg(g, V("X")))), "A17", g);
  for (const auto& [f, sig] : typed_functions(tsig)) {
    std::vector<std::pair<std::string, std::string>> vars;
    std::vector<Formula> guards;
    std::vector<Term> ts;
    for (int k = 0; k < f.arity; ++k) {
      std::string tn = "T" + std::to_string(k + 1);
      vars.push_back({tn, sig.arg_sorts[k]});
      guards.push_back(reach(sig.arg_sorts[k], V(tn)));
      ts.push_back(V(tn));
    }
    out.add("a18_" + (f.name == names::kEq ? "eq" : f.name),
            close_sorted(vars,
                         guard_chain(guards, reach(sig.result_sort,
                                                   Term::app(f, ts)))),
            "A18", f.name);
  }

  // Wft: quotations of well-formed terms, per quoted sort.
  for (const auto& g : tsig.sorts)
    out.add("a19_" + g, close_sorted({{"Y", g}}, wft(g, quotg(g, V("Y")))),
            "A19", g);
  for (const auto& [v, qv] : asig.quoted_vars)
    out.add("a20_" + v, Formula::atom(tsig.wft_of(var_sort(v)), {Term::app(qv)}),
            "A20", v);
  for (const auto& [base_name, qf] : asig.quoted_functions) {
    const auto& sig = tsig.function_sigs.at(base_name);
    std::vector<std::pair<std::string, std::string>> vars;
    std::vector<Formula> guards;
    std::vector<Term> ts;
    for (int k = 0; k < qf.arity; ++k) {
      std::string tn = "T" + std::to_string(k + 1);
      vars.push_back({tn, q});
      guards.push_back(wft(sig.arg_sorts[k], V(tn)));
      ts.push_back(V(tn));
    }
    out.add("a21_" + (base_name == names::kEq ? "eq" : base_name),
            close_sorted(vars,
                         guard_chain(guards, wft(sig.result_sort,
                                                 Term::app(qf, ts)))),
            "A21", base_name);
  }

  // E per sort; the identity cases live in sort q.
  for (const auto& g : tsig.sorts)
    out.add("a22_" + g,
            close_sorted({{"T", g}},
                         guard_chain({reach(g, V("T"))},
                                     Formula::equal(evalg(g, quotg(g, V("T"))),
                                                    V("T")))),
            "A22", g);
  for (const auto& [base_name, qf] : asig.quoted_functions) {
    const Symbol* f = asig.base.find_function(base_name);
    const auto& sig = tsig.function_sigs.at(base_name);
    std::vector<std::pair<std::string, std::string>> vars;
    std::vector<Formula> guards;
    std::vector<Term> ts, evaluated;
    for (int k = 0; k < qf.arity; ++k) {
      std::string tn = "T" + std::to_string(k + 1);
      vars.push_back({tn, q});
      guards.push_back(reach(q, V(tn)));
      ts.push_back(V(tn));
      evaluated.push_back(evalg(sig.arg_sorts[k], V(tn)));
    }
    out.add("a23_" + (base_name == names::kEq ? "eq" : base_name),
            close_sorted(vars,
                         guard_chain(guards,
                                     Formula::equal(
                                         evalg(sig.result_sort,
                                               Term::app(qf, ts)),
                                         Term::app(*f, evaluated)))),
            "A23", base_name);
  }
  for (const auto& [base_name, qp] : asig.quoted_predicates) {
    std::vector<std::pair<std::string, std::string>> vars;
    std::vector<Formula> guards;
    std::vector<Term> ts;
    for (int k = 0; k < qp.arity; ++k) {
      std::string tn = "T" + std::to_string(k + 1);
      vars.push_back({tn, q});
      guards.push_back(reach(q, V(tn)));
      ts.push_back(V(tn));
    }
    Term quoted = Term::app(qp, ts);
    out.add("a24_" + (base_name == names::kEq ? "eq" : base_name),
            close_sorted(vars,
                         guard_chain(guards,
                                     Formula::equal(evalg(q, quoted), quoted))),
            "A24", base_name);
  }
  {
    Term t = Term::app(asig.qand, {V("T1"), V("T2")});
    out.add("a25", close_sorted({{"T1", q}, {"T2", q}},
                                Formula::equal(evalg(q, t), t)),
            "A25");
    Term u = Term::app(asig.qforall, {V("T1"), V("T2")});
    out.add("a26", close_sorted({{"T1", q}, {"T2", q}},
                                Formula::equal(evalg(q, u), u)),
            "A26");
    Term w = Term::app(asig.qneg, {V("T")});
    out.add("a27",
            close_sorted({{"T", q}}, Formula::equal(evalg(q, w), w)), "A27");
  }
  for (const auto& [v, qv] : asig.quoted_vars) {
    Term cnst = Term::app(qv);
    out.add("a28_" + v, Formula::equal(evalg(q, cnst), cnst), "A28", v);
  }

  // Sub.
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    out.add("a29_" + x,
            close_sorted({{"T", q}},
                         guard_chain({reach(q, V("T"))},
                                     Formula::equal(subq3(cx, cx, V("T")),
                                                    V("T")))),
            "A29", x);
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    for (const auto& [y, qy] : asig.quoted_vars) {
      if (x == y) continue;
      Term cx = Term::app(qx), cy = Term::app(qy);
      out.add("a30_" + x + "_" + y,
              close_sorted({{"T", q}},
                           guard_chain({reach(q, V("T"))},
                                       Formula::equal(subq3(cx, cy, V("T")),
                                                      cx))),
              "A30", x + "," + y);
    }
  }
  {
    std::vector<Symbol> congruence;
    for (const auto& [_, s] : asig.quoted_functions) congruence.push_back(s);
    for (const auto& [_, s] : asig.quoted_predicates) congruence.push_back(s);
    congruence.push_back(asig.qand);
    congruence.push_back(asig.qneg);
    std::sort(congruence.begin(), congruence.end());
    for (const auto& f : congruence) {
      for (const auto& [x, qx] : asig.quoted_vars) {
        Term cx = Term::app(qx);
        std::vector<std::pair<std::string, std::string>> vars = {{"T0", q}};
        std::vector<Formula> guards;
        std::vector<Term> ts, substituted;
        for (int k = 0; k < f.arity; ++k) {
          std::string tn = "T" + std::to_string(k + 1);
          vars.push_back({tn, q});
          guards.push_back(reach(q, V(tn)));
          ts.push_back(V(tn));
          substituted.push_back(subq3(V(tn), cx, V("T0")));
        }
        out.add("a31_" + f.name + "_" + x,
                close_sorted(vars,
                             guard_chain(guards,
                                         Formula::equal(
                                             subq3(Term::app(f, ts), cx,
                                                   V("T0")),
                                             Term::app(f, substituted)))),
                "A31", f.name + "," + x);
      }
    }
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    Term bound = Term::app(asig.qforall, {cx, V("T1")});
    out.add("a32_" + x,
            close_sorted({{"T1", q}, {"T2", q}},
                         guard_chain({reach(q, V("T1")), reach(q, V("T2"))},
                                     Formula::equal(subq3(bound, cx, V("T2")),
                                                    bound))),
            "A32", x);
  }
  for (const auto& [y, qy] : asig.quoted_vars) {
    for (const auto& [x, qx] : asig.quoted_vars) {
      if (x == y) continue;
      Term cx = Term::app(qx), cy = Term::app(qy);
      Term lhs = subq3(Term::app(asig.qforall, {cy, V("T1")}), cx, V("T2"));
      Term rhs = Term::app(asig.qforall, {cy, subq3(V("T1"), cx, V("T2"))});
      out.add("a33_" + y + "_" + x,
              close_sorted({{"T1", q}, {"T2", q}},
                           guard_chain({reach(q, V("T1")), reach(q, V("T2"))},
                                       Formula::equal(lhs, rhs))),
              "A33", y + "," + x);
    }
  }
  for (const auto& g : tsig.sorts) {
    for (const auto& [x, qx] : asig.quoted_vars) {
      Term cx = Term::app(qx);
      Term wrapped = quotg(g, V("T1"));
      out.add("a34_" + g + "_" + x,
              close_sorted({{"T1", g}, {"T2", q}},
                           guard_chain({reach(g, V("T1")), reach(q, V("T2"))},
                                       Formula::equal(subq3(wrapped, cx,
                                                            V("T2")),
                                                      wrapped))),
              "A34", g + "," + x);
    }
  }

  // A1fin-A4fin and A11fin.
  for (const auto& [base_name, qp] : asig.quoted_predicates) {
    const Symbol* p = asig.base.find_predicate(base_name);
    const auto& sig = tsig.predicate_sigs.at(base_name);
    std::vector<std::pair<std::string, std::string>> vars;
    std::vector<Formula> guards;
    std::vector<Term> ts, evaluated;
    for (int k = 0; k < qp.arity; ++k) {
      std::string tn = "T" + std::to_string(k + 1);
      vars.push_back({tn, q});
      guards.push_back(wft(sig[k], V(tn)));
      ts.push_back(V(tn));
      evaluated.push_back(evalg(sig[k], V(tn)));
    }
    out.add("a1fin_" + (base_name == names::kEq ? "eq" : base_name),
            close_sorted(
                vars,
                guard_chain(guards,
                            Formula::iff(
                                Formula::atom(asig.truth, {Term::app(qp, ts)}),
                                Formula::atom(*p, evaluated)))),
            "A1fin", base_name);
  }
  out.add("a2fin",
          close_sorted(
              {{"T1", q}, {"T2", q}},
              guard_chain(
                  {reach(q, V("T1")), reach(q, V("T2"))},
                  Formula::iff(
                      Formula::atom(asig.truth,
                                    {Term::app(asig.qand, {V("T1"), V("T2")})}),
                      Formula::conj(Formula::atom(asig.truth, {V("T1")}),
                                    Formula::atom(asig.truth, {V("T2")}))))),
          "A2fin");
  out.add("a3fin",
          close_sorted(
              {{"T1", q}},
              guard_chain(
                  {reach(q, V("T1"))},
                  Formula::iff(
                      Formula::atom(asig.truth,
                                    {Term::app(asig.qneg, {V("T1")})}),
                      Formula::negation(Formula::atom(asig.truth, {V("T1")}))))),
          "A3fin");
  for (const auto& [x, qx] : asig.quoted_vars) {
    const std::string g = var_sort(x);
    Term cx = Term::app(qx);
    Formula inner = Formula::forall(
        x,
        Formula::atom(asig.truth,
                      {subq3(V("T1"), cx, quotg(g, Term::var(x)))}),
        g);
    out.add("a4fin_" + x,
            close_sorted(
                {{"T1", q}},
                guard_chain({reach(q, V("T1"))},
                            Formula::iff(
                                Formula::atom(asig.truth,
                                              {Term::app(asig.qforall,
                                                         {cx, V("T1")})}),
                                inner))),
            "A4fin", x);
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    const std::string g = var_sort(x);
    Term cx = Term::app(qx);
    Formula inner = Formula::forall(
        x,
        Formula::atom(asig.ist,
                      {V("T2"), subq3(V("T1"), cx, quotg(g, Term::var(x)))}),
        g);
    out.add("a11fin_" + x,
            close_sorted(
                {{"T1", q}, {"T2", c}},
                guard_chain({reach(q, V("T1"))},
                            Formula::implies(
                                Formula::atom(asig.ist,
                                              {V("T2"),
                                               Term::app(asig.qforall,
                                                         {cx, V("T1")})}),
                                inner))),
            "A11fin", x);
  }

  if (opts.explosion) {
    Formula body = Formula::implies(
        Formula::atom(asig.ist, {V("Xc"), V("X1")}),
        Formula::atom(asig.ist, {V("Xc"), qor(asig, V("X1"), V("X2"))}));
    out.add("explosion",
            close_sorted({{"Xc", c}, {"X1", q}, {"X2", q}},
                         guard_chain({reach(q, V("X1")), reach(q, V("X2"))},
                                     std::move(body))),
            "EXPLOSION");
  }

  ClosureOptions manifest_opts = opts;
  manifest_opts.mode_note += manifest_opts.mode_note.empty() ? "typed" : "";
  manifest_opts.mode_note +=
      "; typed E/Reach sort resolutions: guards on quoted arguments use "
      "reach_q, eval subscripts follow the declared argument sorts, identity "
      "E-cases live in sort q";
  finalize_manifest(out, asig, manifest_opts);
  return out;
}

}  // namespace qiana
