#include "qiana/tptp.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qiana {

namespace {

std::string lowercased(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

}  // namespace

SymbolMangler::SymbolMangler(const AugmentedSignature& asig,
                             const EmitOptions& opts) {
  auto fix = [&](const std::string& name, const std::string& mangled) {
    table_[name] = mangled;
    used_[mangled] = 1;
  };
  fix(names::kQuot, "quot");
  fix(names::kQand, "qand");
  fix(names::kQneg, "qneg");
  fix(names::kQforall, "qforall");
  fix(names::kTruth, "truth");
  fix(names::kIst, "ist");
  fix(names::kWft, "wft");
  fix(names::kReach, "reach");
  fix(names::kEval, "eval");
  fix(names::kSubq, "subq");
  fix(names::kWff, "wff");
  fix(names::kTauto, "tauto");
  table_[names::kEq] = opts.explicit_equality ? names::kQeq : names::kEq;
  used_[names::kQeq] = 1;

  // Quoted counterparts first (their q_/qv_ names are internal and unique),
  // then base symbols in sorted order.
  auto claim_sorted = [&](const std::map<std::string, Symbol>& m) {
    for (const auto& [_, s] : m)
      if (!table_.count(s.name)) table_[s.name] = assign(lowercased(s.name));
  };
  claim_sorted(asig.quoted_functions);
  claim_sorted(asig.quoted_predicates);
  claim_sorted(asig.quoted_vars);
  for (const auto& [name, _] : asig.base.functions) {
    if (table_.count(name)) continue;
    std::string cand = all_digits(name) ? "n" + name : lowercased(name);
    table_[name] = assign(cand);
  }
  for (const auto& [name, _] : asig.base.predicates) {
    if (table_.count(name)) continue;
    std::string cand = all_digits(name) ? "n" + name : lowercased(name);
    table_[name] = assign(cand);
  }
}

std::string SymbolMangler::assign(const std::string& cand) {
  if (!used_.count(cand)) {
    used_[cand] = 1;
    return cand;
  }
  // Collision with a fixed builtin name gets the escape prefix; collisions
  // among user symbols (and anything still clashing) take numeric suffixes.
  std::string base = std::string(names::kMangleEscapePrefix) + cand;
  if (!used_.count(base)) {
    used_[base] = 1;
    return base;
  }
  for (int i = 1;; ++i) {
    std::string c = cand + "_" + std::to_string(i);
    if (!used_.count(c)) {
      used_[c] = 1;
      return c;
    }
  }
}

void SymbolMangler::claim_fixed(const std::string& symbol_name,
                                const std::string& mangled) {
  table_[symbol_name] = mangled;
  used_[mangled] = 1;
}

std::string SymbolMangler::mangle(const Symbol& sym) const {
  auto it = table_.find(sym.name);
  if (it == table_.end()) throw Error("unmangled symbol: " + sym.name);
  return it->second;
}

namespace {

// Bound variables become TPTP upper words, deterministically renamed per
// formula when uppercasing collides.
class VarNamer {
 public:
  std::string name_for(const std::string& var) {
    auto it = names_.find(var);
    if (it != names_.end()) return it->second;
    std::string cand = var;
    cand[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cand[0])));
    for (auto& c : cand)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
    std::string chosen = cand;
    int i = 0;
    while (used_.count(chosen)) chosen = cand + "_" + std::to_string(++i);
    used_.insert(chosen);
    names_[var] = chosen;
    return chosen;
  }

 private:
  std::map<std::string, std::string> names_;
  std::set<std::string> used_;
};

Term mangle_term(const Term& t, const SymbolMangler& m, VarNamer& vn) {
  if (t.is_var()) return Term::var(vn.name_for(t.var_name()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(mangle_term(a, m, vn));
  Symbol s = t.symbol();
  s.name = m.mangle(t.symbol());
  return Term::app(std::move(s), std::move(args));
}

Formula mangle_formula(const Formula& f, const SymbolMangler& m, VarNamer& vn,
                       bool fill_sorts) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(mangle_term(a, m, vn));
      Symbol s = f.predicate();
      s.name = m.mangle(f.predicate());
      return Formula::atom(std::move(s), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(mangle_formula(f.child(), m, vn, fill_sorts));
    case Formula::Kind::And:
      return Formula::conj(mangle_formula(f.child(0), m, vn, fill_sorts),
                           mangle_formula(f.child(1), m, vn, fill_sorts));
    case Formula::Kind::Forall: {
      std::string sort = f.bound_sort();
      if (fill_sorts && sort.empty()) sort = "o";
      return Formula::forall(vn.name_for(f.bound_var()),
                             mangle_formula(f.child(), m, vn, fill_sorts),
                             std::move(sort));
    }
  }
  throw Error("unreachable");
}

Formula mangled(const Formula& f, const SymbolMangler& m) {
  VarNamer vn;
  return mangle_formula(f, m, vn, false);
}

}  // namespace

Formula tptp_mangled_formula(const Formula& f, const SymbolMangler& m,
                             bool fill_sorts) {
  VarNamer vn;
  return mangle_formula(f, m, vn, fill_sorts);
}

TptpDocument emit_fof(const AxiomSet& axioms,
                      const std::optional<Formula>& conjecture,
                      const AugmentedSignature& asig, const EmitOptions& opts) {
  SymbolMangler m(asig, opts);
  TptpDocument doc;
  if (!axioms.manifest.empty()) {
    std::istringstream is(axioms.manifest);
    doc.header.push_back("manifest digest " +
                         std::to_string(fnv1a64(axioms.manifest)));
  }
  for (const auto& a : axioms.axioms)
    doc.formulas.push_back(
        TptpFormula{a.name, TptpFormula::Role::Axiom, mangled(a.formula, m)});
  if (conjecture)
    doc.formulas.push_back(TptpFormula{"goal", TptpFormula::Role::Conjecture,
                                       mangled(*conjecture, m)});
  return doc;
}

namespace {

// --- rendering ---------------------------------------------------------

struct Printer {
  const TptpDocument& doc;

  static bool match_or(const Formula& f, Formula* a, Formula* b) {
    if (f.kind() != Formula::Kind::Not) return false;
    const Formula& g = f.child();
    if (g.kind() != Formula::Kind::And) return false;
    if (g.child(0).kind() != Formula::Kind::Not) return false;
    if (g.child(1).kind() != Formula::Kind::Not) return false;
    *a = g.child(0).child();
    *b = g.child(1).child();
    return true;
  }
  static bool match_implies(const Formula& f, Formula* a, Formula* b) {
    Formula x = f, y = f;
    if (!match_or(f, &x, &y)) return false;
    if (x.kind() != Formula::Kind::Not) return false;
    *a = x.child();
    *b = y;
    return true;
  }
  static bool match_iff(const Formula& f, Formula* a, Formula* b) {
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
  static bool match_exists(const Formula& f, std::string* var,
                           std::string* sort, Formula* body) {
    if (f.kind() != Formula::Kind::Not) return false;
    const Formula& g = f.child();
    if (g.kind() != Formula::Kind::Forall) return false;
    if (g.child().kind() != Formula::Kind::Not) return false;
    *var = g.bound_var();
    *sort = g.bound_sort();
    *body = g.child().child();
    return true;
  }

  std::string term(const Term& t) const {
    if (t.is_var()) return t.var_name();
    if (t.args().empty()) return t.symbol().name;
    std::string out = t.symbol().name + "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ",";
      out += term(t.args()[i]);
    }
    return out + ")";
  }

  std::string quantifier_block(const Formula& f, std::string* rest_out) const {
    // Collects a run of equally-shaped quantifiers into one ![...] block.
    std::string vars;
    Formula g = f;
    while (g.kind() == Formula::Kind::Forall) {
      if (!vars.empty()) vars += ",";
      vars += g.bound_var();
      if (!g.bound_sort().empty()) vars += ":" + g.bound_sort();
      g = g.child();
    }
    *rest_out = formula(g, false);
    return vars;
  }

  std::string formula(const Formula& f, bool parenthesize = true) const {
    Formula a = f, b = f;
    std::string v, srt;
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        if (f.predicate().name == names::kEq)
          return term(f.args()[0]) + " = " + term(f.args()[1]);
        if (f.args().empty()) return f.predicate().name;
        std::string out = f.predicate().name + "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ",";
          out += term(f.args()[i]);
        }
        return out + ")";
      }
      case Formula::Kind::Not: {
        if (match_exists(f, &v, &srt, &b)) {
          std::string binder = v + (srt.empty() ? "" : ":" + srt);
          std::string out = "?[" + binder + "]: " + formula(b);
          return parenthesize ? "(" + out + ")" : out;
        }
        if (match_implies(f, &a, &b)) {
          std::string out = formula(a) + " => " + formula(b);
          return parenthesize ? "(" + out + ")" : out;
        }
        if (match_or(f, &a, &b)) {
          std::string out = formula(a) + " | " + formula(b);
          return parenthesize ? "(" + out + ")" : out;
        }
        if (f.child().kind() == Formula::Kind::Atom &&
            f.child().predicate().name == names::kEq)
          return term(f.child().args()[0]) + " != " + term(f.child().args()[1]);
        return "~" + formula(f.child());
      }
      case Formula::Kind::And: {
        if (match_iff(f, &a, &b)) {
          std::string out = formula(a) + " <=> " + formula(b);
          return parenthesize ? "(" + out + ")" : out;
        }
        std::string out = formula(f.child(0)) + " & " + formula(f.child(1));
        return parenthesize ? "(" + out + ")" : out;
      }
      case Formula::Kind::Forall: {
        std::string rest;
        std::string vars = quantifier_block(f, &rest);
        std::string out = "![" + vars + "]: (" + rest + ")";
        return parenthesize ? "(" + out + ")" : out;
      }
    }
    throw Error("unreachable");
  }
};

}  // namespace

std::string render(const TptpDocument& doc) {
  Printer p{doc};
  std::ostringstream os;
  for (const auto& h : doc.header) os << "% " << h << "\n";
  for (const auto& d : doc.type_decls) {
    os << "tff(" << d.name << ", type, " << d.symbol << ": ";
    if (d.result_sort == "$tType") {
      os << "$tType";
    } else if (d.arg_sorts.empty()) {
      os << d.result_sort;
    } else {
      os << "(";
      for (size_t i = 0; i < d.arg_sorts.size(); ++i) {
        if (i) os << " * ";
        os << d.arg_sorts[i];
      }
      os << ") > " << d.result_sort;
    }
    os << ").\n";
  }
  for (const auto& f : doc.formulas) {
    const char* role =
        f.role == TptpFormula::Role::Conjecture ? "conjecture" : "axiom";
    os << (doc.typed ? "tff(" : "fof(") << f.name << ", " << role << ", "
       << p.formula(f.formula, false) << ").\n";
  }
  return os.str();
}

// --- reader -------------------------------------------------------------

namespace {

struct Token {
  enum class Kind {
    Ident, Var, LParen, RParen, Comma, Dot, Colon, Tilde, Amp, Pipe,
    Implies, Iff, Bang, Question, LBracket, RBracket, Equal, NotEqual,
    Star, Greater, Dollar, End
  } kind;
  std::string text;
  int line = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '\n') {
        ++line_;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = s_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < s_.size() && s_[i_ + 1] == b;
    };
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t j = i_;
      if (c == '$') ++j;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.text = s_.substr(i_, j - i_);
      tok_.kind = std::isupper(static_cast<unsigned char>(c))
                      ? Token::Kind::Var
                      : Token::Kind::Ident;
      i_ = j;
      return;
    }
    if (two('<', '=') && i_ + 2 < s_.size() && s_[i_ + 2] == '>') {
      tok_.kind = Token::Kind::Iff;
      i_ += 3;
      return;
    }
    if (two('=', '>')) {
      tok_.kind = Token::Kind::Implies;
      i_ += 2;
      return;
    }
    if (two('!', '=')) {
      tok_.kind = Token::Kind::NotEqual;
      i_ += 2;
      return;
    }
    switch (c) {
      case '(': tok_.kind = Token::Kind::LParen; break;
      case ')': tok_.kind = Token::Kind::RParen; break;
      case ',': tok_.kind = Token::Kind::Comma; break;
      case '.': tok_.kind = Token::Kind::Dot; break;
      case ':': tok_.kind = Token::Kind::Colon; break;
      case '~': tok_.kind = Token::Kind::Tilde; break;
      case '&': tok_.kind = Token::Kind::Amp; break;
      case '|': tok_.kind = Token::Kind::Pipe; break;
      case '!': tok_.kind = Token::Kind::Bang; break;
      case '?': tok_.kind = Token::Kind::Question; break;
      case '[': tok_.kind = Token::Kind::LBracket; break;
      case ']': tok_.kind = Token::Kind::RBracket; break;
      case '=': tok_.kind = Token::Kind::Equal; break;
      case '*': tok_.kind = Token::Kind::Star; break;
      case '>': tok_.kind = Token::Kind::Greater; break;
      default:
        throw Error("tptp: unexpected character '" + std::string(1, c) +
                    "' at line " + std::to_string(line_));
    }
    ++i_;
  }

  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1;
  Token tok_;
};

class TptpParser {
 public:
  explicit TptpParser(const std::string& text) : lex_(text) {}

  TptpDocument parse() {
    TptpDocument doc;
    while (lex_.peek().kind != Token::Kind::End) {
      Token t = expect(Token::Kind::Ident, "fof or tff");
      bool tff = t.text == "tff";
      if (!tff && t.text != "fof")
        throw Error("tptp: expected fof/tff at line " + std::to_string(t.line));
      if (tff) doc.typed = true;
      expect(Token::Kind::LParen, "(");
      std::string name = expect_name();
      expect(Token::Kind::Comma, ",");
      std::string role = expect(Token::Kind::Ident, "role").text;
      expect(Token::Kind::Comma, ",");
      if (role == "type") {
        doc.type_decls.push_back(parse_type_decl(name));
      } else {
        Formula f = parse_formula();
        TptpFormula tf{name,
                       role == "conjecture" ? TptpFormula::Role::Conjecture
                                            : TptpFormula::Role::Axiom,
                       f};
        doc.formulas.push_back(std::move(tf));
      }
      expect(Token::Kind::RParen, ")");
      expect(Token::Kind::Dot, ".");
    }
    return doc;
  }

 private:
  Lexer lex_;
  std::map<std::string, Symbol> functions_;
  std::map<std::string, Symbol> predicates_;

  Token expect(Token::Kind k, const char* what) {
    Token t = lex_.next();
    if (t.kind != k)
      throw Error("tptp: expected " + std::string(what) + " at line " +
                  std::to_string(t.line) + " (got '" + t.text + "')");
    return t;
  }
  std::string expect_name() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Var)
      throw Error("tptp: expected name at line " + std::to_string(t.line));
    return t.text;
  }

  TffTypeDecl parse_type_decl(const std::string& name) {
    TffTypeDecl d;
    d.name = name;
    d.symbol = expect_name();
    expect(Token::Kind::Colon, ":");
    if (lex_.peek().kind == Token::Kind::LParen) {
      lex_.next();
      d.arg_sorts.push_back(expect_name());
      while (lex_.peek().kind == Token::Kind::Star) {
        lex_.next();
        d.arg_sorts.push_back(expect_name());
      }
      expect(Token::Kind::RParen, ")");
      expect(Token::Kind::Greater, ">");
      d.result_sort = expect_name();
    } else {
      d.result_sort = expect_name();
      if (lex_.peek().kind == Token::Kind::Greater) {
        // unary function type  a > b
        lex_.next();
        d.arg_sorts.push_back(d.result_sort);
        d.result_sort = expect_name();
      }
    }
    return d;
  }

  Symbol function_symbol(const std::string& name, int arity) {
    auto it = functions_.find(name);
    if (it != functions_.end()) {
      if (it->second.arity != arity)
        throw Error("tptp: arity clash for " + name);
      return it->second;
    }
    Symbol s = func(name, arity);
    functions_[name] = s;
    return s;
  }
  Symbol predicate_symbol(const std::string& name, int arity) {
    auto it = predicates_.find(name);
    if (it != predicates_.end()) {
      if (it->second.arity != arity)
        throw Error("tptp: arity clash for " + name);
      return it->second;
    }
    Symbol s = pred(name, arity);
    predicates_[name] = s;
    return s;
  }

  Term parse_term() {
    Token t = lex_.next();
    if (t.kind == Token::Kind::Var) return Term::var(t.text);
    if (t.kind != Token::Kind::Ident)
      throw Error("tptp: expected term at line " + std::to_string(t.line));
    std::vector<Term> args;
    if (lex_.peek().kind == Token::Kind::LParen) {
      lex_.next();
      args.push_back(parse_term());
      while (lex_.peek().kind == Token::Kind::Comma) {
        lex_.next();
        args.push_back(parse_term());
      }
      expect(Token::Kind::RParen, ")");
    }
    Symbol s = function_symbol(t.text, static_cast<int>(args.size()));
    return Term::app(std::move(s), std::move(args));
  }

  Formula parse_equality_rest(Term lhs) {
    if (lex_.peek().kind == Token::Kind::Equal) {
      lex_.next();
      Term rhs = parse_term();
      return Formula::equal(std::move(lhs), std::move(rhs));
    }
    if (lex_.peek().kind == Token::Kind::NotEqual) {
      lex_.next();
      Term rhs = parse_term();
      return Formula::negation(Formula::equal(std::move(lhs), std::move(rhs)));
    }
    throw Error("tptp: expected = or != after term");
  }

  Formula parse_unitary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Tilde:
        lex_.next();
        return Formula::negation(parse_unitary());
      case Token::Kind::LParen: {
        lex_.next();
        Formula f = parse_formula();
        expect(Token::Kind::RParen, ")");
        return f;
      }
      case Token::Kind::Bang:
      case Token::Kind::Question: {
        bool universal = t.kind == Token::Kind::Bang;
        lex_.next();
        expect(Token::Kind::LBracket, "[");
        std::vector<std::pair<std::string, std::string>> binders;
        for (;;) {
          Token v = lex_.next();
          if (v.kind != Token::Kind::Var)
            throw Error("tptp: expected variable at line " +
                        std::to_string(v.line));
          std::string sort;
          if (lex_.peek().kind == Token::Kind::Colon) {
            lex_.next();
            sort = expect_name();
          }
          binders.emplace_back(v.text, sort);
          if (lex_.peek().kind != Token::Kind::Comma) break;
          lex_.next();
        }
        expect(Token::Kind::RBracket, "]");
        expect(Token::Kind::Colon, ":");
        Formula body = parse_unitary();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (universal)
            body = Formula::forall(it->first, std::move(body), it->second);
          else
            body = Formula::exists(it->first, std::move(body), it->second);
        }
        return body;
      }
      case Token::Kind::Var: {
        Term lhs = Term::var(lex_.next().text);
        return parse_equality_rest(std::move(lhs));
      }
      default: {
        Token h = expect(Token::Kind::Ident, "atom or term");
        std::vector<Term> args;
        if (lex_.peek().kind == Token::Kind::LParen) {
          lex_.next();
          args.push_back(parse_term());
          while (lex_.peek().kind == Token::Kind::Comma) {
            lex_.next();
            args.push_back(parse_term());
          }
          expect(Token::Kind::RParen, ")");
        }
        int n = static_cast<int>(args.size());
        if (lex_.peek().kind == Token::Kind::Equal ||
            lex_.peek().kind == Token::Kind::NotEqual) {
          Term lhs = Term::app(function_symbol(h.text, n), std::move(args));
          return parse_equality_rest(std::move(lhs));
        }
        if (h.text == "$true")
          return Formula::atom(predicate_symbol("$true", 0));
        if (h.text == "$false")
          return Formula::atom(predicate_symbol("$false", 0));
        return Formula::atom(predicate_symbol(h.text, n), std::move(args));
      }
    }
  }

  Formula parse_formula() {
    Formula lhs = parse_unitary();
    for (;;) {
      switch (lex_.peek().kind) {
        case Token::Kind::Amp:
          lex_.next();
          lhs = Formula::conj(std::move(lhs), parse_unitary());
          break;
        case Token::Kind::Pipe:
          lex_.next();
          lhs = Formula::disj(std::move(lhs), parse_unitary());
          break;
        case Token::Kind::Implies:
          lex_.next();
          return Formula::implies(std::move(lhs), parse_formula());
        case Token::Kind::Iff:
          lex_.next();
          return Formula::iff(std::move(lhs), parse_formula());
        default:
          return lhs;
      }
    }
  }
};

}  // namespace

TptpDocument parse_tptp(const std::string& text) {
  // Leading comment lines form the document header; later comments are noise.
  std::vector<std::string> header;
  size_t pos = 0;
  while (pos < text.size() && text[pos] == '%') {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    size_t start = pos + 1;
    if (start < eol && text[start] == ' ') ++start;
    header.push_back(text.substr(start, eol - start));
    pos = eol == text.size() ? eol : eol + 1;
  }
  std::string rest = text.substr(pos);
  TptpParser p(rest);
  TptpDocument doc = p.parse();
  doc.header = std::move(header);
  return doc;
}

}  // namespace qiana
