#include <cctype>
#include <cstring>
#include <sstream>

#include "qiana/frontend.hpp"

namespace qiana {

PNodePtr PNode::make(Kind k, std::string name, std::vector<PNodePtr> children,
                     int line, int col) {
  auto n = std::make_shared<PNode>();
  n->kind = k;
  n->name = std::move(name);
  n->children = std::move(children);
  n->line = line;
  n->col = col;
  return n;
}

bool equal(const PNodePtr& a, const PNodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->binders != b->binders)
    return false;
  if (a->children.size() != b->children.size()) return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

bool equal(const TheoryDocument& a, const TheoryDocument& b) {
  if (!(a.options == b.options) || a.sorts != b.sorts) return false;
  if (a.axioms.size() != b.axioms.size()) return false;
  for (size_t i = 0; i < a.axioms.size(); ++i)
    if (!equal(a.axioms[i].node, b.axioms[i].node)) return false;
  if (a.conjecture.has_value() != b.conjecture.has_value()) return false;
  if (a.conjecture && !equal(a.conjecture->node, b.conjecture->node))
    return false;
  return true;
}

namespace {

struct Token {
  enum class Kind {
    Ident, Number, Directive,
    LParen, RParen, Comma, Dot, Colon, Tilde, Amp, Pipe,
    Implies, Iff, Equal, Less, LessEq, Greater, Bang,
    QuoteOpen, QuoteClose, Arrow, Star, End
  } kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
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
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw Error("syntax error at " + std::to_string(at.line) + ":" +
                std::to_string(at.col) + ": " + msg);
  }

 private:
  void advance() {
    for (;;) {
      while (i_ < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[i_]))) {
        if (s_[i_] == '\n') {
          ++line_;
          col_ = 1;
        } else {
          ++col_;
        }
        ++i_;
      }
      if (i_ < s_.size() && s_[i_] == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      if (i_ + 1 < s_.size() && s_[i_] == '/' && s_[i_ + 1] == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = s_[i_];
    auto starts = [&](const char* lit) {
      return s_.compare(i_, strlen(lit), lit) == 0;
    };
    auto take = [&](Token::Kind k, size_t n) {
      tok_.kind = k;
      tok_.text = s_.substr(i_, n);
      i_ += n;
      col_ += static_cast<int>(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                               s_[j] == '_'))
        ++j;
      take(Token::Kind::Ident, j - i_);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j])))
        ++j;
      take(Token::Kind::Number, j - i_);
      return;
    }
    if (c == '#') {
      size_t j = i_ + 1;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                               s_[j] == '_'))
        ++j;
      take(Token::Kind::Directive, j - i_);
      return;
    }
    if (starts("[[")) return take(Token::Kind::QuoteOpen, 2);
    if (starts("]]")) return take(Token::Kind::QuoteClose, 2);
    if (starts("<=>")) return take(Token::Kind::Iff, 3);
    if (starts("=>")) return take(Token::Kind::Implies, 2);
    if (starts("<=")) return take(Token::Kind::LessEq, 2);
    if (starts("->")) return take(Token::Kind::Arrow, 2);
    switch (c) {
      case '(': return take(Token::Kind::LParen, 1);
      case ')': return take(Token::Kind::RParen, 1);
      case ',': return take(Token::Kind::Comma, 1);
      case '.': return take(Token::Kind::Dot, 1);
      case ':': return take(Token::Kind::Colon, 1);
      case '~': return take(Token::Kind::Tilde, 1);
      case '&': return take(Token::Kind::Amp, 1);
      case '|': return take(Token::Kind::Pipe, 1);
      case '=': return take(Token::Kind::Equal, 1);
      case '<': return take(Token::Kind::Less, 1);
      case '>': return take(Token::Kind::Greater, 1);
      case '!': return take(Token::Kind::Bang, 1);
      case '*': return take(Token::Kind::Star, 1);
      default:
        throw Error("syntax error at " + std::to_string(line_) + ":" +
                    std::to_string(col_) + ": unexpected character '" +
                    std::string(1, c) + "'");
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& source) : lex_(source) {}

  TheoryDocument parse_document() {
    TheoryDocument doc;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::Directive) {
        parse_directive(doc);
      } else {
        int line = t.line;
        PNodePtr f = parse_formula();
        expect(Token::Kind::Dot, "'.'");
        doc.axioms.push_back({std::move(f), line});
      }
    }
    return doc;
  }

 private:
  Lexer lex_;

  Token expect(Token::Kind k, const char* what) {
    Token t = lex_.next();
    if (t.kind != k) lex_.fail(std::string("expected ") + what, t);
    return t;
  }
  std::string expect_ident() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Number)
      lex_.fail("expected identifier", t);
    return t.text;
  }

  void parse_directive(TheoryDocument& doc) {
    Token d = lex_.next();
    const std::string& name = d.text;
    if (name == "#option") {
      std::string key = expect_ident();
      std::string value;
      if (lex_.peek().kind != Token::Kind::Dot) value = expect_ident();
      expect(Token::Kind::Dot, "'.'");
      apply_option(doc, key, value, d);
    } else if (name == "#conjecture") {
      int line = d.line;
      PNodePtr f = parse_formula();
      expect(Token::Kind::Dot, "'.'");
      if (doc.conjecture) lex_.fail("duplicate conjecture", d);
      doc.conjecture = PStatement{std::move(f), line};
    } else if (name == "#quotable") {
      while (lex_.peek().kind == Token::Kind::Ident)
        doc.options.quotable.push_back(lex_.next().text);
      expect(Token::Kind::Dot, "'.'");
    } else if (name == "#sort") {
      SortDecl sd;
      sd.line = d.line;
      sd.name = expect_ident();
      expect(Token::Kind::Colon, "':'");
      if (lex_.peek().kind == Token::Kind::LParen) {
        lex_.next();
        expect(Token::Kind::RParen, "')'");  // "()" empty argument list
      } else if (lex_.peek().kind != Token::Kind::Dot &&
                 lex_.peek().kind != Token::Kind::Arrow) {
        sd.arg_sorts.push_back(expect_ident());
        while (lex_.peek().kind == Token::Kind::Star) {
          lex_.next();
          sd.arg_sorts.push_back(expect_ident());
        }
      }
      if (lex_.peek().kind == Token::Kind::Arrow) {
        lex_.next();
        sd.result_sort = expect_ident();
      }
      expect(Token::Kind::Dot, "'.'");
      doc.sorts.push_back(std::move(sd));
    } else {
      lex_.fail("unknown directive " + name, d);
    }
  }

  void apply_option(TheoryDocument& doc, const std::string& key,
                    const std::string& value, const Token& at) {
    auto on = [&] { return value == "on" || value == "true" || value.empty(); };
    if (key == "vars") {
      doc.options.vars = std::stoi(value);
    } else if (key == "temporal") {
      doc.options.temporal = on();
    } else if (key == "typed") {
      doc.options.typed = on();
    } else if (key == "modal") {
      doc.options.modal = value;
    } else if (key == "explosion") {
      doc.options.explosion = on();
    } else if (key == "disambiguation") {
      doc.options.disambiguation = on();
    } else if (key == "explicit_equality") {
      doc.options.explicit_equality = on();
    } else if (key == "timeout") {
      doc.options.timeout = std::stod(value);
    } else if (key == "prover") {
      doc.options.prover = value;
    } else {
      lex_.fail("unknown option " + key, at);
    }
  }

  // formula := implication (<=> implication)*
  PNodePtr parse_formula() {
    PNodePtr lhs = parse_implication();
    while (lex_.peek().kind == Token::Kind::Iff) {
      Token t = lex_.next();
      PNodePtr rhs = parse_implication();
      lhs = PNode::make(PNode::Kind::Iff, "", {lhs, rhs}, t.line, t.col);
    }
    return lhs;
  }

  PNodePtr parse_implication() {
    PNodePtr lhs = parse_disjunction();
    if (lex_.peek().kind == Token::Kind::Implies) {
      Token t = lex_.next();
      PNodePtr rhs = parse_implication();  // right associative
      return PNode::make(PNode::Kind::Implies, "", {lhs, rhs}, t.line, t.col);
    }
    return lhs;
  }

  PNodePtr parse_disjunction() {
    PNodePtr lhs = parse_conjunction();
    while (lex_.peek().kind == Token::Kind::Pipe) {
      Token t = lex_.next();
      PNodePtr rhs = parse_conjunction();
      lhs = PNode::make(PNode::Kind::Or, "", {lhs, rhs}, t.line, t.col);
    }
    return lhs;
  }

  PNodePtr parse_conjunction() {
    PNodePtr lhs = parse_unary();
    while (lex_.peek().kind == Token::Kind::Amp) {
      Token t = lex_.next();
      PNodePtr rhs = parse_unary();
      lhs = PNode::make(PNode::Kind::And, "", {lhs, rhs}, t.line, t.col);
    }
    return lhs;
  }

  PNodePtr parse_quantifier(bool universal) {
    Token t = lex_.next();  // forall / exists
    std::vector<std::pair<std::string, std::string>> binders;
    while (lex_.peek().kind == Token::Kind::Ident) {
      std::string var = lex_.next().text;
      std::string sort;
      if (lex_.peek().kind == Token::Kind::Colon) {
        lex_.next();
        sort = expect_ident();
      }
      binders.emplace_back(std::move(var), std::move(sort));
    }
    if (binders.empty()) lex_.fail("quantifier needs at least one variable", t);
    expect(Token::Kind::Dot, "'.' after quantified variables");
    PNodePtr body = parse_formula();
    auto n = std::make_shared<PNode>();
    n->kind = universal ? PNode::Kind::Forall : PNode::Kind::Exists;
    n->children.push_back(std::move(body));
    n->binders = std::move(binders);
    n->line = t.line;
    n->col = t.col;
    return n;
  }

  PNodePtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Tilde: {
        Token tok = lex_.next();
        PNodePtr f = parse_unary();
        return PNode::make(PNode::Kind::Not, "", {f}, tok.line, tok.col);
      }
      case Token::Kind::Less: {
        // context sugar: <c> formula   or   <c>! term
        Token tok = lex_.next();
        PNodePtr ctx = parse_term();
        expect(Token::Kind::Greater, "'>'");
        if (lex_.peek().kind == Token::Kind::Bang) {
          lex_.next();
          PNodePtr arg = parse_term();
          return PNode::make(PNode::Kind::Atom, names::kIst, {ctx, arg},
                             tok.line, tok.col);
        }
        PNodePtr body = parse_unary();
        PNodePtr quoted =
            PNode::make(PNode::Kind::Quotation, "", {body}, tok.line, tok.col);
        return PNode::make(PNode::Kind::Atom, names::kIst, {ctx, quoted},
                           tok.line, tok.col);
      }
      case Token::Kind::Ident:
        if (t.text == "forall") return parse_quantifier(true);
        if (t.text == "exists") return parse_quantifier(false);
        if (t.text == "box" || t.text == "dia") {
          Token tok = lex_.next();
          PNodePtr f = parse_unary();
          return PNode::make(tok.text == "box" ? PNode::Kind::Box
                                               : PNode::Kind::Diamond,
                             "", {f}, tok.line, tok.col);
        }
        return parse_atom_or_comparison();
      case Token::Kind::LParen: {
        lex_.next();
        PNodePtr f = parse_formula();
        expect(Token::Kind::RParen, "')'");
        return f;
      }
      case Token::Kind::Number:
      case Token::Kind::QuoteOpen:
        return parse_atom_or_comparison();
      default:
        lex_.fail("expected a formula", t);
    }
  }

  // term (= | < | <=) term, or a plain predicate application
  PNodePtr parse_atom_or_comparison() {
    Token head = lex_.peek();
    PNodePtr lhs = parse_term();
    switch (lex_.peek().kind) {
      case Token::Kind::Equal: {
        Token t = lex_.next();
        PNodePtr rhs = parse_term();
        return PNode::make(PNode::Kind::Atom, names::kEq, {lhs, rhs}, t.line,
                           t.col);
      }
      case Token::Kind::Less: {
        Token t = lex_.next();
        PNodePtr rhs = parse_term();
        return PNode::make(PNode::Kind::Atom, "lt", {lhs, rhs}, t.line, t.col);
      }
      case Token::Kind::LessEq: {
        Token t = lex_.next();
        PNodePtr rhs = parse_term();
        return PNode::make(PNode::Kind::Atom, "leq", {lhs, rhs}, t.line, t.col);
      }
      default: {
        // plain atom: reinterpret the application as a predicate
        if (lhs->kind == PNode::Kind::App || lhs->kind == PNode::Kind::Var) {
          return PNode::make(PNode::Kind::Atom, lhs->name, lhs->children,
                             lhs->line, lhs->col);
        }
        lex_.fail("expected an atom", head);
      }
    }
  }

  PNodePtr parse_term() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::QuoteOpen) {
      Token tok = lex_.next();
      PNodePtr payload = parse_formula();
      expect(Token::Kind::QuoteClose, "']]'");
      return PNode::make(PNode::Kind::Quotation, "", {payload}, tok.line,
                         tok.col);
    }
    if (t.kind == Token::Kind::Number) {
      Token tok = lex_.next();
      return PNode::make(PNode::Kind::Number, tok.text, {}, tok.line, tok.col);
    }
    if (t.kind != Token::Kind::Ident) lex_.fail("expected a term", t);
    Token tok = lex_.next();
    if (tok.text == names::kQuot && lex_.peek().kind == Token::Kind::LParen) {
      lex_.next();
      PNodePtr inner = parse_term();
      expect(Token::Kind::RParen, "')'");
      return PNode::make(PNode::Kind::Escape, "", {inner}, tok.line, tok.col);
    }
    std::vector<PNodePtr> args;
    if (lex_.peek().kind == Token::Kind::LParen) {
      lex_.next();
      args.push_back(parse_term());
      while (lex_.peek().kind == Token::Kind::Comma) {
        lex_.next();
        args.push_back(parse_term());
      }
      expect(Token::Kind::RParen, "')'");
    }
    bool variable_like = std::isupper(static_cast<unsigned char>(tok.text[0]));
    if (variable_like && args.empty())
      return PNode::make(PNode::Kind::Var, tok.text, {}, tok.line, tok.col);
    return PNode::make(PNode::Kind::App, tok.text, std::move(args), tok.line,
                       tok.col);
  }
};

void render_node(const PNodePtr& n, std::ostringstream& os, bool term_position);

void render_args(const std::vector<PNodePtr>& args, std::ostringstream& os) {
  if (args.empty()) return;
  os << "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ", ";
    render_node(args[i], os, true);
  }
  os << ")";
}

void render_node(const PNodePtr& n, std::ostringstream& os,
                 bool term_position) {
  switch (n->kind) {
    case PNode::Kind::Var:
    case PNode::Kind::Number:
      os << n->name;
      return;
    case PNode::Kind::App:
      os << n->name;
      render_args(n->children, os);
      return;
    case PNode::Kind::Quotation:
      os << "[[ ";
      render_node(n->children[0], os, false);
      os << " ]]";
      return;
    case PNode::Kind::Escape:
      os << "quot(";
      render_node(n->children[0], os, true);
      os << ")";
      return;
    case PNode::Kind::Atom:
      if (n->name == names::kEq || n->name == "lt" || n->name == "leq") {
        const char* op = n->name == names::kEq ? "=" : n->name == "lt" ? "<" : "<=";
        render_node(n->children[0], os, true);
        os << " " << op << " ";
        render_node(n->children[1], os, true);
        return;
      }
      os << n->name;
      render_args(n->children, os);
      return;
    case PNode::Kind::Not:
      os << "~";
      render_node(n->children[0], os, false);
      return;
    case PNode::Kind::And:
    case PNode::Kind::Or:
    case PNode::Kind::Implies:
    case PNode::Kind::Iff: {
      const char* op = n->kind == PNode::Kind::And       ? "&"
                       : n->kind == PNode::Kind::Or      ? "|"
                       : n->kind == PNode::Kind::Implies ? "=>"
                                                         : "<=>";
      os << "(";
      render_node(n->children[0], os, false);
      os << " " << op << " ";
      render_node(n->children[1], os, false);
      os << ")";
      return;
    }
    case PNode::Kind::Forall:
    case PNode::Kind::Exists: {
      os << (n->kind == PNode::Kind::Forall ? "forall" : "exists");
      for (const auto& [v, s] : n->binders) {
        os << " " << v;
        if (!s.empty()) os << ":" << s;
      }
      os << ". ";
      render_node(n->children[0], os, false);
      return;
    }
    case PNode::Kind::Box:
    case PNode::Kind::Diamond:
      os << (n->kind == PNode::Kind::Box ? "box " : "dia ");
      render_node(n->children[0], os, false);
      return;
  }
}

}  // namespace

TheoryDocument parse(const std::string& source) {
  Parser p(source);
  return p.parse_document();
}

std::string render(const TheoryDocument& doc) {
  std::ostringstream os;
  const DocOptions d{};
  const auto& o = doc.options;
  if (o.vars) os << "#option vars " << *o.vars << ".\n";
  if (o.temporal) os << "#option temporal on.\n";
  if (o.typed) os << "#option typed on.\n";
  if (o.modal) os << "#option modal " << *o.modal << ".\n";
  if (o.explosion) os << "#option explosion on.\n";
  if (o.disambiguation) os << "#option disambiguation on.\n";
  if (o.explicit_equality) os << "#option explicit_equality on.\n";
  if (o.timeout) os << "#option timeout " << static_cast<int>(*o.timeout) << ".\n";
  if (o.prover) os << "#option prover " << *o.prover << ".\n";
  if (!o.quotable.empty()) {
    os << "#quotable";
    for (const auto& v : o.quotable) os << " " << v;
    os << ".\n";
  }
  for (const auto& s : doc.sorts) {
    os << "#sort " << s.name << " : ";
    if (s.arg_sorts.empty() && s.result_sort) {
      os << "()";
    } else {
      for (size_t i = 0; i < s.arg_sorts.size(); ++i) {
        if (i) os << " * ";
        os << s.arg_sorts[i];
      }
      if (s.arg_sorts.empty()) os << "()";
    }
    if (s.result_sort) os << " -> " << *s.result_sort;
    os << ".\n";
  }
  for (const auto& st : doc.axioms) {
    render_node(st.node, os, false);
    os << ".\n";
  }
  if (doc.conjecture) {
    os << "#conjecture ";
    render_node(doc.conjecture->node, os, false);
    os << ".\n";
  }
  return os.str();
}

}  // namespace qiana
