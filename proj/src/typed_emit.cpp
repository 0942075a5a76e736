// TFF emission for typed closures.
#include "qiana/tptp.hpp"

namespace qiana {

TptpDocument emit_tff(const AxiomSet& axioms,
                      const std::optional<Formula>& conjecture,
                      const TypedSignature& tsig, const EmitOptions& opts) {
  const auto& asig = tsig.asig;
  SymbolMangler m(asig, opts);
  for (const auto& g : tsig.sorts) {
    m.claim_fixed(tsig.quot_of(g).name, tsig.quot_of(g).name);
    m.claim_fixed(tsig.eval_of(g).name, tsig.eval_of(g).name);
    m.claim_fixed(tsig.reach_of(g).name, tsig.reach_of(g).name);
    m.claim_fixed(tsig.wft_of(g).name, tsig.wft_of(g).name);
  }

  TptpDocument doc;
  doc.typed = true;
  if (!axioms.manifest.empty())
    doc.header.push_back("manifest digest " +
                         std::to_string(fnv1a64(axioms.manifest)));

  for (const auto& g : tsig.sorts)
    doc.type_decls.push_back(TffTypeDecl{"sort_" + g, g, {}, "$tType"});

  auto declare_fn = [&](const Symbol& s, const std::vector<std::string>& args,
                        const std::string& result) {
    doc.type_decls.push_back(
        TffTypeDecl{"decl_" + m.mangle(s), m.mangle(s), args, result});
  };
  auto declare_pred = [&](const Symbol& s,
                          const std::vector<std::string>& args) {
    doc.type_decls.push_back(
        TffTypeDecl{"decl_" + m.mangle(s), m.mangle(s), args, "$o"});
  };

  const std::string q = sorts::kQuotation;
  for (const auto& [name, s] : asig.base.functions)
    declare_fn(s, tsig.function_sigs.at(name).arg_sorts,
               tsig.function_sigs.at(name).result_sort);
  for (const auto& [name, s] : asig.base.predicates) {
    if (name == names::kIst) continue;
    if (name == names::kEq) continue;  // native sorted equality
    declare_pred(s, tsig.predicate_sigs.at(name));
  }
  declare_pred(asig.ist, {sorts::kContext, q});
  declare_pred(asig.truth, {q});
  for (const auto& [_, s] : asig.quoted_functions)
    declare_fn(s, std::vector<std::string>(s.arity, q), q);
  for (const auto& [_, s] : asig.quoted_predicates)
    declare_fn(s, std::vector<std::string>(s.arity, q), q);
  for (const auto& [_, s] : asig.quoted_vars) declare_fn(s, {}, q);
  declare_fn(asig.qand, {q, q}, q);
  declare_fn(asig.qforall, {q, q}, q);
  declare_fn(asig.qneg, {q}, q);
  declare_fn(asig.subq, {q, q, q}, q);
  for (const auto& g : tsig.sorts) {
    declare_fn(tsig.quot_of(g), {g}, q);
    declare_fn(tsig.eval_of(g), {q}, g);
    declare_pred(tsig.reach_of(g), {g});
    declare_pred(tsig.wft_of(g), {q});
  }

  for (const auto& a : axioms.axioms)
    doc.formulas.push_back(TptpFormula{a.name, TptpFormula::Role::Axiom,
                                       tptp_mangled_formula(a.formula, m,
                                                            true)});
  if (conjecture)
    doc.formulas.push_back(TptpFormula{"goal", TptpFormula::Role::Conjecture,
                                       tptp_mangled_formula(*conjecture, m,
                                                            true)});
  return doc;
}

}  // namespace qiana
