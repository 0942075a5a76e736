#include "clausify.hpp"

#include <algorithm>
#include <map>

namespace qprover {

namespace {

using qiana::Formula;

struct NNF {
  enum class Kind { Lit, And, Or, All, Ex } kind;
  Lit lit;                 // Kind::Lit
  std::vector<NNF> kids;   // And/Or: 2+, All/Ex: 1
  int var = -1;            // All/Ex
  int var_sort = 0;
};

struct Builder {
  Sig sig;
  bool has_conjecture = false;
  std::vector<Clause> clauses;
  int var_counter = 0;
  std::vector<int> var_sorts;  // global prover-variable sorts per formula

  int fresh_var(int sort) {
    var_sorts.push_back(sort);
    return var_counter++;
  }

  T term(const qiana::Term& t, std::map<std::string, int>& env) {
    if (t.is_var()) {
      auto it = env.find(t.var_name());
      if (it == env.end()) {
        // free variables of a TPTP formula are implicitly universal
        int v = fresh_var(0);
        env[t.var_name()] = v;
        return T::var(v);
      }
      return T::var(it->second);
    }
    int f = sig.fn(t.symbol().name, t.symbol().arity);
    std::vector<T> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(term(a, env));
    return T::app(f, std::move(args));
  }

  NNF nnf(const Formula& f, bool positive, std::map<std::string, int>& env) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        Lit l;
        l.pos = positive;
        if (f.predicate().name == "=") {
          l.pr = sig.eq;
        } else {
          l.pr = sig.pr(f.predicate().name, f.predicate().arity);
        }
        for (const auto& a : f.args()) l.args.push_back(term(a, env));
        NNF out{NNF::Kind::Lit, std::move(l), {}, -1, 0};
        return out;
      }
      case Formula::Kind::Not:
        return nnf(f.child(), !positive, env);
      case Formula::Kind::And: {
        NNF out{positive ? NNF::Kind::And : NNF::Kind::Or, {}, {}, -1, 0};
        out.kids.push_back(nnf(f.child(0), positive, env));
        out.kids.push_back(nnf(f.child(1), positive, env));
        return out;
      }
      case Formula::Kind::Forall: {
        int sort = f.bound_sort().empty() ? 0 : sig.sort(f.bound_sort());
        int v = fresh_var(sort);
        auto saved = env.find(f.bound_var()) != env.end()
                         ? std::optional<int>(env[f.bound_var()])
                         : std::nullopt;
        env[f.bound_var()] = v;
        NNF out{positive ? NNF::Kind::All : NNF::Kind::Ex, {}, {}, v, sort};
        out.kids.push_back(nnf(f.child(), positive, env));
        if (saved)
          env[f.bound_var()] = *saved;
        else
          env.erase(f.bound_var());
        return out;
      }
    }
    throw qiana::Error("unreachable");
  }

  // Skolemization: replaces Ex-bound variables by fresh functions of the
  // enclosing universals.
  void skolemize(NNF& n, std::vector<int>& universals,
                 std::map<int, T>& replacement) {
    switch (n.kind) {
      case NNF::Kind::Lit:
        for (auto& a : n.lit.args) a = substitute(a, replacement);
        return;
      case NNF::Kind::And:
      case NNF::Kind::Or:
        for (auto& k : n.kids) skolemize(k, universals, replacement);
        return;
      case NNF::Kind::All:
        universals.push_back(n.var);
        skolemize(n.kids[0], universals, replacement);
        universals.pop_back();
        return;
      case NNF::Kind::Ex: {
        std::vector<int> argsorts;
        std::vector<T> args;
        for (int u : universals) {
          argsorts.push_back(var_sorts[u]);
          args.push_back(T::var(u));
        }
        int sk = sig.fresh_fn("sk", static_cast<int>(args.size()), n.var_sort,
                              argsorts, true);
        replacement[n.var] = T::app(sk, args);
        skolemize(n.kids[0], universals, replacement);
        replacement.erase(n.var);
        return;
      }
    }
  }

  static T substitute(const T& t, const std::map<int, T>& repl) {
    if (t.is_var()) {
      auto it = repl.find(t.v);
      return it == repl.end() ? t : it->second;
    }
    T out;
    out.f = t.f;
    out.args.reserve(t.args.size());
    for (const auto& a : t.args) out.args.push_back(substitute(a, repl));
    return out;
  }

  size_t cnf_estimate(const NNF& n) const {
    switch (n.kind) {
      case NNF::Kind::Lit:
        return 1;
      case NNF::Kind::And: {
        size_t s = 0;
        for (const auto& k : n.kids) s += cnf_estimate(k);
        return s;
      }
      case NNF::Kind::Or: {
        size_t s = 1;
        for (const auto& k : n.kids) {
          size_t e = cnf_estimate(k);
          if (s > 4096 / std::max<size_t>(e, 1)) return 4096;  // saturate
          s *= e;
        }
        return s;
      }
      case NNF::Kind::All:
      case NNF::Kind::Ex:
        return cnf_estimate(n.kids[0]);
    }
    return 1;
  }

  void free_vars_nnf(const NNF& n, std::vector<int>& out,
                     std::vector<int>& bound) const {
    switch (n.kind) {
      case NNF::Kind::Lit:
        for (const auto& a : n.lit.args) {
          std::vector<int> vs;
          collect_vars(a, vs);
          for (int v : vs)
            if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
                std::find(out.begin(), out.end(), v) == out.end())
              out.push_back(v);
        }
        return;
      case NNF::Kind::And:
      case NNF::Kind::Or:
        for (const auto& k : n.kids) free_vars_nnf(k, out, bound);
        return;
      case NNF::Kind::All:
      case NNF::Kind::Ex:
        bound.push_back(n.var);
        free_vars_nnf(n.kids[0], out, bound);
        bound.pop_back();
        return;
    }
  }

  // post-skolemization: quantifiers gone (All transparent), distribute.
  std::vector<std::vector<Lit>> cnf(const NNF& n) {
    switch (n.kind) {
      case NNF::Kind::Lit:
        return {{n.lit}};
      case NNF::Kind::All:
      case NNF::Kind::Ex:
        return cnf(n.kids[0]);
      case NNF::Kind::And: {
        std::vector<std::vector<Lit>> out;
        for (const auto& k : n.kids) {
          auto sub = cnf(k);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      }
      case NNF::Kind::Or: {
        // rename heavy disjuncts to keep the product small
        std::vector<NNF> kids = n.kids;
        std::vector<std::vector<Lit>> acc = {{}};
        for (auto& k : kids) {
          auto sub = cnf(k);
          if (acc.size() * sub.size() > 64 && sub.size() > 1) {
            // d(freevars) replaces the disjunct; add clauses ~d | k
            std::vector<int> fv, bound;
            free_vars_nnf(k, fv, bound);
            int d = sig.fresh_pr("qdef", static_cast<int>(fv.size()));
            Lit dl;
            dl.pos = true;
            dl.pr = d;
            for (int v : fv) dl.args.push_back(T::var(v));
            Lit ndl = dl;
            ndl.pos = false;
            for (auto& clause : sub) {
              clause.push_back(ndl);
              clauses_from(clause);
            }
            sub = {{dl}};
          }
          std::vector<std::vector<Lit>> next;
          for (const auto& a : acc)
            for (const auto& b : sub) {
              auto merged = a;
              merged.insert(merged.end(), b.begin(), b.end());
              next.push_back(std::move(merged));
            }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return {};
  }

  void clauses_from(const std::vector<Lit>& lits) {
    // $true / $false folding
    std::vector<Lit> kept;
    for (const auto& l : lits) {
      const std::string& name = sig.prs[l.pr].name;
      if (name == "$true") {
        if (l.pos) return;  // clause is true
        continue;
      }
      if (name == "$false") {
        if (!l.pos) return;
        continue;
      }
      kept.push_back(l);
    }
    Clause c;
    c.lits = std::move(kept);
    c.var_sorts = var_sorts;  // renumbered by the engine
    clauses.push_back(std::move(c));
  }

  void add_formula(const Formula& f, bool conjecture) {
    var_counter = 0;
    var_sorts.clear();
    std::map<std::string, int> env;
    Formula g = conjecture ? Formula::negation(f) : f;
    NNF n = nnf(g, true, env);
    std::vector<int> universals;
    std::map<int, T> repl;
    skolemize(n, universals, repl);
    size_t first = clauses.size();
    for (auto& lits : cnf(n)) clauses_from(lits);
    if (conjecture)
      for (size_t i = first; i < clauses.size(); ++i)
        clauses[i].from_goal = true;
  }
};

}  // namespace

Problem clausify(const qiana::TptpDocument& doc) {
  Builder b;
  b.sig.eq = b.sig.pr("=", 2);  // predicate 0 is reserved for equality

  for (const auto& d : doc.type_decls) {
    if (d.result_sort == "$tType") {
      b.sig.sort(d.symbol);
      continue;
    }
    if (d.result_sort == "$o") {
      int p = b.sig.pr(d.symbol, static_cast<int>(d.arg_sorts.size()));
      for (size_t i = 0; i < d.arg_sorts.size(); ++i)
        b.sig.prs[p].arg_sorts[i] = b.sig.sort(d.arg_sorts[i]);
      continue;
    }
    int f = b.sig.fn(d.symbol, static_cast<int>(d.arg_sorts.size()));
    b.sig.fns[f].result_sort = b.sig.sort(d.result_sort);
    for (size_t i = 0; i < d.arg_sorts.size(); ++i)
      b.sig.fns[f].arg_sorts[i] = b.sig.sort(d.arg_sorts[i]);
  }

  for (const auto& tf : doc.formulas) {
    bool conjecture = tf.role == qiana::TptpFormula::Role::Conjecture;
    if (conjecture) b.has_conjecture = true;
    b.add_formula(tf.formula, conjecture);
  }

  // $true / $false, when present, become unit conventions.
  Problem out;
  b.sig.compute_precedence();
  out.sig = std::move(b.sig);
  out.clauses = std::move(b.clauses);
  out.has_conjecture = b.has_conjecture;
  return out;
}

}  // namespace qprover
