#include "qiana/ast.hpp"

#include <algorithm>
#include <functional>

namespace qiana {

namespace {

constexpr size_t kFnvOffset = 1469598103934665603ull;
constexpr size_t kFnvPrime = 1099511628211ull;

size_t hash_combine(size_t h, size_t v) {
  return (h ^ v) * kFnvPrime;
}

size_t hash_string(const std::string& s) {
  size_t h = kFnvOffset;
  for (unsigned char c : s) h = (h ^ c) * kFnvPrime;
  return h;
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  n->hash = hash_combine(hash_string(n->name), 0x5a5a);
  return Term(std::move(n));
}

Term Term::app(Symbol f, std::vector<Term> args) {
  if (f.kind == SymbolKind::Variable)
    throw Error("cannot apply variable symbol " + f.name);
  if (static_cast<int>(args.size()) != f.arity)
    throw Error("arity mismatch: " + f.name + "/" + std::to_string(f.arity) +
                " applied to " + std::to_string(args.size()) + " arguments");
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->symbol = std::move(f);
  n->args = std::move(args);
  size_t h = hash_string(n->symbol.name);
  for (const auto& a : n->args) h = hash_combine(h, a.hash());
  n->hash = h;
  return Term(std::move(n));
}

size_t Term::size() const {
  if (is_var()) return 1;
  size_t s = 1;
  for (const auto& a : args()) s += a.size();
  return s;
}

size_t Term::depth() const {
  if (is_var()) return 1;
  size_t d = 0;
  for (const auto& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (node_->kind != other.node_->kind) return false;
  if (is_var()) return var_name() == other.var_name();
  if (!(symbol() == other.symbol())) return false;
  return args() == other.args();
}

bool Term::operator<(const Term& other) const {
  if (node_ == other.node_) return false;
  if (kind() != other.kind()) return kind() < other.kind();
  if (is_var()) return var_name() < other.var_name();
  if (symbol() != other.symbol()) return symbol() < other.symbol();
  return std::lexicographical_compare(
      args().begin(), args().end(), other.args().begin(), other.args().end());
}

Formula Formula::atom(Symbol p, std::vector<Term> args) {
  if (p.kind != SymbolKind::Predicate)
    throw Error("atom head must be a predicate: " + p.name);
  if (static_cast<int>(args.size()) != p.arity)
    throw Error("arity mismatch: " + p.name + "/" + std::to_string(p.arity) +
                " applied to " + std::to_string(args.size()) + " arguments");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->symbol = std::move(p);
  n->args = std::move(args);
  size_t h = hash_combine(hash_string(n->symbol.name), 0xa70);
  for (const auto& a : n->args) h = hash_combine(h, a.hash());
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->hash = hash_combine(f.hash(), 0x107);
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->hash = hash_combine(hash_combine(a.hash(), b.hash()), 0xa2d);
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body, std::string sort) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->name = std::move(var);
  n->sort = std::move(sort);
  n->hash = hash_combine(
      hash_combine(hash_combine(hash_string(n->name), body.hash()), 0xf0a11),
      hash_string(n->sort));
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  return negation(conj(negation(std::move(a)), negation(std::move(b))));
}
Formula Formula::implies(Formula a, Formula b) {
  return disj(negation(std::move(a)), std::move(b));
}
Formula Formula::iff(Formula a, Formula b) {
  Formula fwd = implies(a, b);
  Formula bwd = implies(std::move(b), std::move(a));
  return conj(std::move(fwd), std::move(bwd));
}
Formula Formula::exists(std::string var, Formula body, std::string sort) {
  return negation(
      forall(std::move(var), negation(std::move(body)), std::move(sort)));
}
Formula Formula::equal(Term a, Term b) {
  return atom(pred(names::kEq, 2), {std::move(a), std::move(b)});
}

size_t Formula::size() const {
  switch (kind()) {
    case Kind::Atom: {
      size_t s = 1;
      for (const auto& a : args()) s += a.size();
      return s;
    }
    case Kind::Not: return 1 + child().size();
    case Kind::And: return 1 + child(0).size() + child(1).size();
    case Kind::Forall: return 1 + child().size();
  }
  return 0;
}

size_t Formula::depth() const {
  switch (kind()) {
    case Kind::Atom: {
      size_t d = 0;
      for (const auto& a : args()) d = std::max(d, a.depth());
      return d + 1;
    }
    case Kind::Not: return 1 + child().depth();
    case Kind::And: return 1 + std::max(child(0).depth(), child(1).depth());
    case Kind::Forall: return 1 + child().depth();
  }
  return 0;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Atom:
      return predicate() == other.predicate() && args() == other.args();
    case Kind::Not:
      return child() == other.child();
    case Kind::And:
      return child(0) == other.child(0) && child(1) == other.child(1);
    case Kind::Forall:
      return bound_var() == other.bound_var() &&
             bound_sort() == other.bound_sort() && child() == other.child();
  }
  return false;
}

bool Formula::operator<(const Formula& other) const {
  if (node_ == other.node_) return false;
  if (kind() != other.kind()) return kind() < other.kind();
  switch (kind()) {
    case Kind::Atom:
      if (predicate() != other.predicate()) return predicate() < other.predicate();
      return std::lexicographical_compare(args().begin(), args().end(),
                                          other.args().begin(), other.args().end());
    case Kind::Not:
      return child() < other.child();
    case Kind::And:
      if (child(0) != other.child(0)) return child(0) < other.child(0);
      return child(1) < other.child(1);
    case Kind::Forall:
      if (bound_var() != other.bound_var()) return bound_var() < other.bound_var();
      if (bound_sort() != other.bound_sort()) return bound_sort() < other.bound_sort();
      return child() < other.child();
  }
  return false;
}

MembershipFlags classify(const Term& t, const AugmentedSignature& asig) {
  if (t.is_var()) return {};
  const Symbol& f = t.symbol();

  std::vector<MembershipFlags> sub;
  sub.reserve(t.args().size());
  for (const auto& a : t.args()) sub.push_back(classify(a, asig));
  auto all = [&](bool MembershipFlags::*field) {
    return std::all_of(sub.begin(), sub.end(),
                       [&](const MembershipFlags& m) { return m.*field; });
  };

  MembershipFlags out;
  if (asig.is_quoted_var(f)) {
    out.in_Q = out.in_Qv = out.in_boldT = out.in_boldTv = true;
  } else if (asig.is_quoted_function(f)) {
    out.in_Q = all(&MembershipFlags::in_Q);
    out.in_Qv = all(&MembershipFlags::in_Qv);
    out.in_boldT = all(&MembershipFlags::in_boldT);
    out.in_boldTv = all(&MembershipFlags::in_boldTv);
  } else if (asig.is_quoted_predicate(f)) {
    out.in_Q = all(&MembershipFlags::in_Q);
    out.in_Qv = all(&MembershipFlags::in_Qv);
    out.in_boldL = all(&MembershipFlags::in_boldT);
    out.in_boldLv = all(&MembershipFlags::in_boldTv);
  } else if (f == asig.qand) {
    out.in_Q = all(&MembershipFlags::in_Q);
    out.in_Qv = all(&MembershipFlags::in_Qv);
    out.in_boldL = all(&MembershipFlags::in_boldL);
    out.in_boldLv = all(&MembershipFlags::in_boldLv);
  } else if (f == asig.qneg) {
    out.in_Q = sub[0].in_Q;
    out.in_Qv = sub[0].in_Qv;
    out.in_boldL = sub[0].in_boldL;
    out.in_boldLv = sub[0].in_boldLv;
  } else if (f == asig.qforall) {
    bool binder_ok = t.args()[0].is_app() && asig.is_quoted_var(t.args()[0].symbol());
    out.in_Q = binder_ok && sub[1].in_Q;
    out.in_Qv = binder_ok && sub[1].in_Qv;
    out.in_boldL = binder_ok && sub[1].in_boldL;
    out.in_boldLv = binder_ok && sub[1].in_boldLv;
  } else if (f == asig.quot) {
    // quot(t) is in Q (and boldT) when t is in Q; the v-variants admit any
    // argument (value injection).
    out.in_Q = sub[0].in_Q;
    out.in_boldT = sub[0].in_Q;
    out.in_Qv = true;
    out.in_boldTv = true;
  }
  return out;
}

bool is_quotable(const Term& t, const AugmentedSignature& asig) {
  if (t.is_var()) return asig.base.has_quotable_var(t.var_name());
  const Symbol& f = t.symbol();
  if (asig.is_quotation_symbol(f))
    return classify(t, asig).in_Qv;  // an already-built quotation fragment
  if (asig.base.find_function(f.name) == nullptr) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return is_quotable(a, asig); });
}

bool is_quotable(const Formula& f, const AugmentedSignature& asig) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Symbol& p = f.predicate();
      if (p.name == names::kTruth) return false;
      if (asig.base.find_predicate(p.name) == nullptr) return false;
      return std::all_of(f.args().begin(), f.args().end(),
                         [&](const Term& a) { return is_quotable(a, asig); });
    }
    case Formula::Kind::Not:
      return is_quotable(f.child(), asig);
    case Formula::Kind::And:
      return is_quotable(f.child(0), asig) && is_quotable(f.child(1), asig);
    case Formula::Kind::Forall:
      return asig.base.has_quotable_var(f.bound_var()) &&
             is_quotable(f.child(), asig);
  }
  return false;
}

namespace {
void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.var_name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::set<std::string> vars;
      for (const auto& a : f.args()) collect_vars(a, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::Not:
      collect_free(f.child(), bound, out);
      return;
    case Formula::Kind::And:
      collect_free(f.child(0), bound, out);
      collect_free(f.child(1), bound, out);
      return;
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.bound_var()).second;
      collect_free(f.child(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      return;
    }
  }
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::string to_string(const Term& t) {
  if (t.is_var()) return t.var_name();
  if (t.args().empty()) return t.symbol().name;
  std::string out = t.symbol().name + "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

namespace {

// Pattern helpers for the print-side recovery of the connective sugar. The
// core AST keeps only {Atom, Not, And, Forall}; the sugar shapes round-trip
// through the parser back to the same trees.
bool match_or(const Formula& f, Formula* a, Formula* b) {
  if (f.kind() != Formula::Kind::Not) return false;
  const Formula& g = f.child();
  if (g.kind() != Formula::Kind::And) return false;
  if (g.child(0).kind() != Formula::Kind::Not) return false;
  if (g.child(1).kind() != Formula::Kind::Not) return false;
  *a = g.child(0).child();
  *b = g.child(1).child();
  return true;
}

bool match_implies(const Formula& f, Formula* a, Formula* b) {
  Formula x = f, y = f;
  if (!match_or(f, &x, &y)) return false;
  if (x.kind() != Formula::Kind::Not) return false;
  *a = x.child();
  *b = y;
  return true;
}

bool match_iff(const Formula& f, Formula* a, Formula* b) {
  if (f.kind() != Formula::Kind::And) return false;
  Formula a1 = f, b1 = f, a2 = f, b2 = f;
  if (!match_implies(f.child(0), &a1, &b1)) return false;
  if (!match_implies(f.child(1), &a2, &b2)) return false;
  if (a1 == b2 && b1 == a2) {
    *a = a1;
    *b = b1;
    return true;
  }
  return false;
}

bool match_exists(const Formula& f, std::string* var, std::string* sort,
                  Formula* body) {
  if (f.kind() != Formula::Kind::Not) return false;
  const Formula& g = f.child();
  if (g.kind() != Formula::Kind::Forall) return false;
  if (g.child().kind() != Formula::Kind::Not) return false;
  *var = g.bound_var();
  *sort = g.bound_sort();
  *body = g.child().child();
  return true;
}

}  // namespace

std::string to_string(const Formula& f) {
  Formula a = f, b = f;
  std::string v, srt;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.predicate().name == names::kEq)
        return "(" + to_string(f.args()[0]) + " = " + to_string(f.args()[1]) + ")";
      if (f.args().empty()) return f.predicate().name;
      {
        std::string out = f.predicate().name + "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += to_string(f.args()[i]);
        }
        return out + ")";
      }
    case Formula::Kind::Not:
      if (match_iff(f.child(), &a, &b))  // fallthrough-friendly: ~(<=>)
        return "~(" + to_string(a) + " <=> " + to_string(b) + ")";
      if (match_exists(f, &v, &srt, &b)) {
        std::string binder = v;
        if (!srt.empty()) binder += ":" + srt;
        return "exists " + binder + ". (" + to_string(b) + ")";
      }
      if (match_implies(f, &a, &b))
        return "(" + to_string(a) + " => " + to_string(b) + ")";
      if (match_or(f, &a, &b))
        return "(" + to_string(a) + " | " + to_string(b) + ")";
      return "~" + to_string(f.child());
    case Formula::Kind::And:
      if (match_iff(f, &a, &b))
        return "(" + to_string(a) + " <=> " + to_string(b) + ")";
      return "(" + to_string(f.child(0)) + " & " + to_string(f.child(1)) + ")";
    case Formula::Kind::Forall: {
      std::string binder = f.bound_var();
      if (!f.bound_sort().empty()) binder += ":" + f.bound_sort();
      return "forall " + binder + ". (" + to_string(f.child()) + ")";
    }
  }
  return "?";
}

namespace {
bool known_term_symbol(const Symbol& s, const AugmentedSignature& asig) {
  if (asig.is_quotation_symbol(s)) return true;
  if (s == asig.eval || s == asig.subq) return true;
  const Symbol* base = asig.base.find_function(s.name);
  return base != nullptr && *base == s;
}
}  // namespace

bool well_formed_over(const Term& t, const AugmentedSignature& asig) {
  if (t.is_var()) return true;
  if (!known_term_symbol(t.symbol(), asig)) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return well_formed_over(a, asig); });
}

bool well_formed_over(const Formula& f, const AugmentedSignature& asig) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Symbol& p = f.predicate();
      bool known = p == asig.truth || p == asig.ist || p == asig.wft ||
                   p == asig.reach;
      if (!known) {
        const Symbol* base = asig.base.find_predicate(p.name);
        known = base != nullptr && *base == p;
      }
      if (!known) return false;
      return std::all_of(f.args().begin(), f.args().end(),
                         [&](const Term& a) { return well_formed_over(a, asig); });
    }
    case Formula::Kind::Not:
      return well_formed_over(f.child(), asig);
    case Formula::Kind::And:
      return well_formed_over(f.child(0), asig) &&
             well_formed_over(f.child(1), asig);
    case Formula::Kind::Forall:
      return well_formed_over(f.child(), asig);
  }
  return false;
}

}  // namespace qiana
