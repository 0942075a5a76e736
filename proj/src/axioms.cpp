#include "qiana/axioms.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qiana {

void AxiomSet::add(std::string name, Formula formula, std::string provenance,
                   std::string params) {
  for (const auto& a : axioms)
    if (a.name == name) throw Error("duplicate axiom name: " + name);
  if (!free_vars(formula).empty())
    throw Error("open formula in axiom " + name);
  axioms.push_back(Axiom{std::move(name), std::move(formula),
                         std::move(provenance), std::move(params)});
}

void AxiomSet::append(AxiomSet other) {
  for (auto& a : other.axioms) {
    for (const auto& b : axioms)
      if (b.name == a.name) throw Error("duplicate axiom name: " + a.name);
    axioms.push_back(std::move(a));
  }
}

size_t AxiomSet::count_of(const std::string& provenance) const {
  return std::count_if(axioms.begin(), axioms.end(), [&](const Axiom& a) {
    return a.provenance == provenance;
  });
}

Term qor(const AugmentedSignature& asig, Term a, Term b) {
  return Term::app(asig.qneg,
                   {Term::app(asig.qand, {Term::app(asig.qneg, {std::move(a)}),
                                          Term::app(asig.qneg, {std::move(b)})})});
}
Term qimplies(const AugmentedSignature& asig, Term a, Term b) {
  return qor(asig, Term::app(asig.qneg, {std::move(a)}), std::move(b));
}
Term qiff(const AugmentedSignature& asig, Term a, Term b) {
  return Term::app(asig.qand,
                   {qimplies(asig, a, b), qimplies(asig, std::move(b), std::move(a))});
}

namespace {

Term V(const std::string& n) { return Term::var(n); }

// Closes f over the given variables, innermost last.
Formula close(std::vector<std::string> vars, Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    f = Formula::forall(*it, std::move(f));
  return f;
}

std::vector<std::string> numbered(const std::string& stem, int n, int from = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(from + i));
  return out;
}

// reach(T1) & ... & reach(Tn) -> body; body unchanged when vars is empty.
Formula guarded(const AugmentedSignature& asig, const Symbol& guard,
                const std::vector<std::string>& vars, Formula body) {
  if (vars.empty()) return body;
  Formula g = Formula::atom(guard, {V(vars[0])});
  for (size_t i = 1; i < vars.size(); ++i)
    g = Formula::conj(std::move(g), Formula::atom(guard, {V(vars[i])}));
  return Formula::implies(std::move(g), std::move(body));
}

std::vector<Term> var_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(V(n));
  return out;
}

}  // namespace

AxiomSet gen_ist_axioms(const AugmentedSignature& asig) {
  AxiomSet out;
  const Symbol& ist = asig.ist;
  auto istof = [&](Term t) { return Formula::atom(ist, {V("Xc"), std::move(t)}); };
  auto band = [&](Term a, Term b) {
    return Term::app(asig.qand, {std::move(a), std::move(b)});
  };
  auto bneg = [&](Term a) { return Term::app(asig.qneg, {std::move(a)}); };

  out.add("a5",
          close({"Xc", "X1", "X2"},
                Formula::implies(istof(band(V("X1"), V("X2"))), istof(V("X1")))),
          "A5");
  out.add("a6",
          close({"Xc", "X1", "X2"},
                Formula::iff(istof(band(V("X1"), V("X2"))),
                             istof(band(V("X2"), V("X1"))))),
          "A6");
  out.add("a7",
          close({"Xc", "X1"},
                Formula::iff(istof(bneg(bneg(V("X1")))), istof(V("X1")))),
          "A7");
  out.add("a8",
          close({"Xc", "X1", "X2", "X3"},
                Formula::iff(istof(band(band(V("X1"), V("X2")), V("X3"))),
                             istof(band(V("X1"), band(V("X2"), V("X3")))))),
          "A8");
  out.add("a9",
          close({"Xc", "X1", "X2", "X3"},
                Formula::iff(istof(qor(asig, band(V("X1"), V("X2")), V("X3"))),
                             istof(band(qor(asig, V("X1"), V("X3")),
                                        qor(asig, V("X2"), V("X3")))))),
          "A9");
  out.add("a10",
          close({"Xc", "X1", "X2"},
                Formula::implies(
                    Formula::conj(istof(qor(asig, V("X1"), V("X2"))),
                                  istof(bneg(V("X1")))),
                    istof(V("X2")))),
          "A10");
  return out;
}

namespace {

// All function symbols of the extended signature S' (base, quoted
// counterparts, connectives, quot, E, Sub), in a deterministic order.
std::vector<Symbol> all_functions(const AugmentedSignature& asig) {
  std::vector<Symbol> out;
  for (const auto& [_, s] : asig.base.functions) out.push_back(s);
  for (const auto& [_, s] : asig.quoted_functions) out.push_back(s);
  for (const auto& [_, s] : asig.quoted_predicates) out.push_back(s);
  for (const auto& [_, s] : asig.quoted_vars) out.push_back(s);
  out.push_back(asig.qand);
  out.push_back(asig.qforall);
  out.push_back(asig.qneg);
  out.push_back(asig.quot);
  out.push_back(asig.eval);
  out.push_back(asig.subq);
  std::sort(out.begin(), out.end());
  return out;
}

// All predicate symbols of S' (base incl. ist, truth, Wft, Reach).
std::vector<Symbol> all_predicates(const AugmentedSignature& asig,
                                   bool explicit_equality) {
  std::vector<Symbol> out;
  for (const auto& [_, s] : asig.base.predicates) out.push_back(s);
  out.push_back(asig.truth);
  out.push_back(asig.wft);
  out.push_back(asig.reach);
  if (explicit_equality) out.push_back(pred(names::kEq, 2));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Quotation-constructor functions: the range of the Sub congruence schema.
std::vector<Symbol> sub_congruence_functions(const AugmentedSignature& asig) {
  std::vector<Symbol> out;
  for (const auto& [_, s] : asig.quoted_functions) out.push_back(s);
  for (const auto& [_, s] : asig.quoted_predicates) out.push_back(s);
  out.push_back(asig.qand);
  out.push_back(asig.qneg);
  std::sort(out.begin(), out.end());
  return out;
}

std::string safe(const std::string& name) {
  return name == names::kEq ? "eq" : name;
}

}  // namespace

AxiomSet gen_helper_axioms(const AugmentedSignature& asig,
                           const ClosureOptions& opts) {
  AxiomSet out;
  const auto funcs = all_functions(asig);

  if (opts.explicit_equality) {
    out.add("a12", close({"X"}, Formula::equal(V("X"), V("X"))), "A12");
    out.add("a13",
            close({"X", "Y"}, Formula::implies(Formula::equal(V("X"), V("Y")),
                                               Formula::equal(V("Y"), V("X")))),
            "A13");
    out.add("a14",
            close({"X", "Y", "Z"},
                  Formula::implies(
                      Formula::conj(Formula::equal(V("X"), V("Y")),
                                    Formula::equal(V("Y"), V("Z"))),
                      Formula::equal(V("X"), V("Z")))),
            "A14");
    for (const auto& f : funcs) {
      if (f.arity == 0) continue;  // subsumed by reflexivity
      auto xs = numbered("X", f.arity);
      auto ys = numbered("Y", f.arity);
      Formula hyp = Formula::equal(V(xs[0]), V(ys[0]));
      for (int i = 1; i < f.arity; ++i)
        hyp = Formula::conj(std::move(hyp), Formula::equal(V(xs[i]), V(ys[i])));
      Formula concl = Formula::equal(Term::app(f, var_terms(xs)),
                                     Term::app(f, var_terms(ys)));
      auto vars = xs;
      vars.insert(vars.end(), ys.begin(), ys.end());
      out.add("a15_" + safe(f.name),
              close(vars, Formula::implies(std::move(hyp), std::move(concl))),
              "A15", f.name);
    }
    for (const auto& p : all_predicates(asig, false)) {
      if (p.arity == 0) continue;
      auto xs = numbered("X", p.arity);
      auto ys = numbered("Y", p.arity);
      Formula hyp = Formula::equal(V(xs[0]), V(ys[0]));
      for (int i = 1; i < p.arity; ++i)
        hyp = Formula::conj(std::move(hyp), Formula::equal(V(xs[i]), V(ys[i])));
      Formula concl = Formula::iff(Formula::atom(p, var_terms(xs)),
                                   Formula::atom(p, var_terms(ys)));
      auto vars = xs;
      vars.insert(vars.end(), ys.begin(), ys.end());
      out.add("a16_" + safe(p.name),
              close(vars, Formula::implies(std::move(hyp), std::move(concl))),
              "A16", p.name);
    }
  }

  // Reach: closed terms and terms whose open variables sit behind quot.
  out.add("a17",
          close({"X"}, Formula::atom(asig.reach,
                                     {Term::app(asig.quot, {V("X")})})),
          "A17");
  for (const auto& f : funcs) {
    auto ts = numbered("T", f.arity);
    Formula body =
        Formula::atom(asig.reach, {Term::app(f, var_terms(ts))});
    out.add("a18_" + safe(f.name),
            close(ts, guarded(asig, asig.reach, ts, std::move(body))), "A18",
            f.name);
  }

  // Wft: quotations of well-formed terms.
  out.add("a19",
          close({"Y"}, Formula::atom(asig.wft,
                                     {Term::app(asig.quot, {V("Y")})})),
          "A19");
  for (const auto& [v, qv] : asig.quoted_vars)
    out.add("a20_" + v, Formula::atom(asig.wft, {Term::app(qv)}), "A20", v);
  for (const auto& [base_name, qf] : asig.quoted_functions) {
    auto ts = numbered("T", qf.arity);
    Formula body = Formula::atom(asig.wft, {Term::app(qf, var_terms(ts))});
    out.add("a21_" + safe(base_name),
            close(ts, guarded(asig, asig.wft, ts, std::move(body))), "A21",
            base_name);
  }

  // E evaluates quotations of terms back to the terms.
  out.add("a22",
          close({"T"}, Formula::equal(
                           Term::app(asig.eval, {Term::app(asig.quot, {V("T")})}),
                           V("T"))),
          "A22");
  for (const auto& [base_name, qf] : asig.quoted_functions) {
    const Symbol* f = asig.base.find_function(base_name);
    auto ts = numbered("T", qf.arity);
    std::vector<Term> evaluated;
    for (const auto& t : ts) evaluated.push_back(Term::app(asig.eval, {V(t)}));
    Formula body = Formula::equal(
        Term::app(asig.eval, {Term::app(qf, var_terms(ts))}),
        Term::app(*f, std::move(evaluated)));
    out.add("a23_" + safe(base_name),
            close(ts, guarded(asig, asig.reach, ts, std::move(body))), "A23",
            base_name);
  }
  for (const auto& [base_name, qp] : asig.quoted_predicates) {
    auto ts = numbered("T", qp.arity);
    Term quoted = Term::app(qp, var_terms(ts));
    Formula body = Formula::equal(Term::app(asig.eval, {quoted}), quoted);
    out.add("a24_" + safe(base_name),
            close(ts, guarded(asig, asig.reach, ts, std::move(body))), "A24",
            base_name);
  }
  {
    Term t = Term::app(asig.qand, {V("T1"), V("T2")});
    out.add("a25", close({"T1", "T2"},
                         Formula::equal(Term::app(asig.eval, {t}), t)),
            "A25");
    Term u = Term::app(asig.qforall, {V("T1"), V("T2")});
    out.add("a26", close({"T1", "T2"},
                         Formula::equal(Term::app(asig.eval, {u}), u)),
            "A26");
    Term w = Term::app(asig.qneg, {V("T")});
    out.add("a27", close({"T"}, Formula::equal(Term::app(asig.eval, {w}), w)),
            "A27");
  }
  for (const auto& [v, qv] : asig.quoted_vars) {
    Term c = Term::app(qv);
    out.add("a28_" + v, Formula::equal(Term::app(asig.eval, {c}), c), "A28", v);
  }

  // Sub: the in-logic counterpart of substitution on quotations.
  auto subq = [&](Term a, Term b, Term c) {
    return Term::app(asig.subq, {std::move(a), std::move(b), std::move(c)});
  };
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    out.add("a29_" + x,
            close({"T"},
                  guarded(asig, asig.reach, {"T"},
                          Formula::equal(subq(cx, cx, V("T")), V("T")))),
            "A29", x);
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    for (const auto& [y, qy] : asig.quoted_vars) {
      if (x == y) continue;
      Term cx = Term::app(qx), cy = Term::app(qy);
      out.add("a30_" + x + "_" + y,
              close({"T"},
                    guarded(asig, asig.reach, {"T"},
                            Formula::equal(subq(cx, cy, V("T")), cx))),
              "A30", x + "," + y);
    }
  }
  for (const auto& f : sub_congruence_functions(asig)) {
    for (const auto& [x, qx] : asig.quoted_vars) {
      Term cx = Term::app(qx);
      auto ts = numbered("T", f.arity);
      std::vector<Term> substituted;
      for (const auto& t : ts) substituted.push_back(subq(V(t), cx, V("T0")));
      Formula body =
          Formula::equal(subq(Term::app(f, var_terms(ts)), cx, V("T0")),
                         Term::app(f, std::move(substituted)));
      auto vars = ts;
      vars.insert(vars.begin(), "T0");
      out.add("a31_" + safe(f.name) + "_" + x,
              close(vars, guarded(asig, asig.reach, ts, std::move(body))),
              "A31", f.name + "," + x);
    }
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    Term bound = Term::app(asig.qforall, {cx, V("T1")});
    out.add("a32_" + x,
            close({"T1", "T2"},
                  guarded(asig, asig.reach, {"T1", "T2"},
                          Formula::equal(subq(bound, cx, V("T2")), bound))),
            "A32", x);
  }
  for (const auto& [y, qy] : asig.quoted_vars) {
    for (const auto& [x, qx] : asig.quoted_vars) {
      if (x == y) continue;
      Term cx = Term::app(qx), cy = Term::app(qy);
      Term lhs = subq(Term::app(asig.qforall, {cy, V("T1")}), cx, V("T2"));
      Term rhs = Term::app(asig.qforall, {cy, subq(V("T1"), cx, V("T2"))});
      out.add("a33_" + y + "_" + x,
              close({"T1", "T2"},
                    guarded(asig, asig.reach, {"T1", "T2"},
                            Formula::equal(std::move(lhs), std::move(rhs)))),
              "A33", y + "," + x);
    }
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    Term wrapped = Term::app(asig.quot, {V("T1")});
    out.add("a34_" + x,
            close({"T1", "T2"},
                  guarded(asig, asig.reach, {"T1", "T2"},
                          Formula::equal(subq(wrapped, cx, V("T2")), wrapped))),
            "A34", x);
  }
  return out;
}

AxiomSet gen_truth_fin(const AugmentedSignature& asig) {
  AxiomSet out;
  // One A1fin per predicate with a quoted counterpart (P minus truth).
  for (const auto& [base_name, qp] : asig.quoted_predicates) {
    const Symbol* p = asig.base.find_predicate(base_name);
    auto ts = numbered("T", qp.arity);
    std::vector<Term> evaluated;
    for (const auto& t : ts) evaluated.push_back(Term::app(asig.eval, {V(t)}));
    Formula body = Formula::iff(
        Formula::atom(asig.truth, {Term::app(qp, var_terms(ts))}),
        Formula::atom(*p, std::move(evaluated)));
    out.add("a1fin_" + safe(base_name),
            close(ts, guarded(asig, asig.wft, ts, std::move(body))), "A1fin",
            base_name);
  }
  {
    Formula body = Formula::iff(
        Formula::atom(asig.truth, {Term::app(asig.qand, {V("T1"), V("T2")})}),
        Formula::conj(Formula::atom(asig.truth, {V("T1")}),
                      Formula::atom(asig.truth, {V("T2")})));
    out.add("a2fin",
            close({"T1", "T2"},
                  guarded(asig, asig.reach, {"T1", "T2"}, std::move(body))),
            "A2fin");
  }
  {
    Formula body = Formula::iff(
        Formula::atom(asig.truth, {Term::app(asig.qneg, {V("T1")})}),
        Formula::negation(Formula::atom(asig.truth, {V("T1")})));
    out.add("a3fin",
            close({"T1"}, guarded(asig, asig.reach, {"T1"}, std::move(body))),
            "A3fin");
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    Formula inner = Formula::forall(
        x, Formula::atom(asig.truth,
                         {Term::app(asig.subq,
                                    {V("T1"), cx,
                                     Term::app(asig.quot, {Term::var(x)})})}));
    Formula body = Formula::iff(
        Formula::atom(asig.truth, {Term::app(asig.qforall, {cx, V("T1")})}),
        std::move(inner));
    out.add("a4fin_" + x,
            close({"T1"}, guarded(asig, asig.reach, {"T1"}, std::move(body))),
            "A4fin", x);
  }
  for (const auto& [x, qx] : asig.quoted_vars) {
    Term cx = Term::app(qx);
    Formula inner = Formula::forall(
        x, Formula::atom(asig.ist,
                         {V("T2"), Term::app(asig.subq,
                                             {V("T1"), cx,
                                              Term::app(asig.quot,
                                                        {Term::var(x)})})}));
    Formula body = Formula::implies(
        Formula::atom(asig.ist,
                      {V("T2"), Term::app(asig.qforall, {cx, V("T1")})}),
        std::move(inner));
    out.add("a11fin_" + x,
            close({"T1", "T2"},
                  guarded(asig, asig.reach, {"T1"}, std::move(body))),
            "A11fin", x);
  }
  return out;
}

AxiomSet gen_optional(const AugmentedSignature& asig, const ClosureOptions& opts) {
  AxiomSet out;
  if (opts.explosion) {
    Formula body = Formula::implies(
        Formula::atom(asig.ist, {V("Xc"), V("X1")}),
        Formula::atom(asig.ist, {V("Xc"), qor(asig, V("X1"), V("X2"))}));
    out.add("explosion",
            close({"Xc", "X1", "X2"},
                  guarded(asig, asig.reach, {"X1", "X2"}, std::move(body))),
            "EXPLOSION");
  }
  if (opts.disambiguation) {
    const Symbol* qeq = asig.quoted_of_predicate(names::kEq);
    if (!qeq)
      throw Error("disambiguation pack needs the equality predicate in the "
                  "base signature");
    Formula d1 = close(
        {"Xc", "T"},
        guarded(asig, asig.wft, {"T"},
                Formula::atom(
                    asig.ist,
                    {V("Xc"),
                     Term::app(*qeq,
                               {V("T"), Term::app(asig.quot,
                                                  {Term::app(asig.eval,
                                                             {V("T")})})})})));
    out.add("disambig1", std::move(d1), "DISAMBIG1");
    Formula d2 = close(
        {"Xc", "T1", "T2", "T"},
        Formula::implies(
            Formula::atom(asig.ist,
                          {V("Xc"), Term::app(*qeq, {V("T1"), V("T2")})}),
            Formula::atom(
                asig.ist,
                {V("Xc"),
                 qiff(asig, V("T"),
                      Term::app(asig.subq, {V("T"), V("T1"), V("T2")}))})));
    out.add("disambig2", std::move(d2), "DISAMBIG2");
  }
  return out;
}

AxiomSet qiana_closure(const std::vector<UserAxiom>& theory,
                       const AugmentedSignature& asig,
                       const ClosureOptions& opts) {
  AxiomSet out;
  int i = 0;
  for (const auto& ua : theory) {
    if (!free_vars(ua.formula).empty())
      throw Error("open formula: user axiom " +
                  (ua.label.empty() ? std::to_string(i + 1) : ua.label));
    out.add("user_" + std::to_string(++i), ua.formula, "USER", ua.label);
  }
  out.append(gen_ist_axioms(asig));
  out.append(gen_helper_axioms(asig, opts));
  out.append(gen_truth_fin(asig));
  out.append(gen_optional(asig, opts));
  finalize_manifest(out, asig, opts);
  return out;
}

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void finalize_manifest(AxiomSet& set, const AugmentedSignature& asig,
                       const ClosureOptions& opts) {
  std::ostringstream os;
  os << "qiana manifest\n";
  os << "functions:";
  for (const auto& [n, s] : asig.base.functions) os << " " << n << "/" << s.arity;
  os << "\npredicates:";
  for (const auto& [n, s] : asig.base.predicates) os << " " << n << "/" << s.arity;
  os << "\nV:";
  for (const auto& v : asig.base.quotable_vars) os << " " << v;
  os << "\nequality: " << (opts.explicit_equality ? "explicit" : "native");
  os << "\nexplosion: " << (opts.explosion ? "on" : "off");
  os << "\ndisambiguation: " << (opts.disambiguation ? "on" : "off");
  if (!opts.mode_note.empty()) os << "\nmode: " << opts.mode_note;
  os << "\ncounts:\n";
  std::map<std::string, int> counts;
  for (const auto& a : set.axioms) counts[a.provenance]++;
  for (const auto& [tag, n] : counts) os << "  " << tag << " " << n << "\n";
  os << "total " << set.axioms.size() << "\n";
  set.manifest = os.str();
}

}  // namespace qiana
