#include "cac/frontend.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cac/errors.hpp"
#include "cac/print.hpp"
#include "cac/typing.hpp"

namespace cac {

namespace {

bool same(const SurfacePtr& a, const SurfacePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

bool same_env(const SurfaceEnv& a, const SurfaceEnv& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !same(a[i].second, b[i].second)) return false;
  return true;
}

bool same_statement(const Statement& a, const Statement& b) {
  if (a.body.index() != b.body.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.body);
        if constexpr (std::is_same_v<T, SymbolStmt>) {
          return x.name == y.name && same(x.type, y.type) && x.constant == y.constant &&
                 x.status == y.status && x.kind == y.kind && x.arity == y.arity;
        } else if constexpr (std::is_same_v<T, RuleStmt> || std::is_same_v<T, EqStmt>) {
          return same_env(x.env, y.env) && same(x.lhs, y.lhs) && same(x.rhs, y.rhs) &&
                 same_env(x.with, y.with);
        } else if constexpr (std::is_same_v<T, PrecedenceStmt>) {
          return x.greater == y.greater && x.lesser == y.lesser;
        } else if constexpr (std::is_same_v<T, StatusStmt>) {
          return x.name == y.name && x.status == y.status;
        } else {
          return x.what == y.what;
        }
      },
      a.body);
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"symbol", "rule", "eq",   "precedence", "status",
                                          "attest", "constant", "kind", "arity", "with",
                                          "box",    "mul",  "lex",  "fo",         "ho"};
  return k;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok : std::uint8_t {
  Ident, Number, Star, LBrack, RBrack, LParen, RParen, Colon, Comma,
  FatArrow, Arrow, Equals, Assign, Greater, Minus, End
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Star: return "'*'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::FatArrow: return "'=>'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::Assign: return "':='";
    case Tok::Greater: return "'>'";
    case Tok::Minus: return "'-'";
    case Tok::End: return "end of line";
  }
  return "?";
}

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize_line(const std::string& text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::size_t start, std::size_t len) {
    out.push_back({t, text.substr(start, len), line, static_cast<int>(start) + 1});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      push(Tok::Ident, start, i - start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      push(Tok::Number, start, i - start);
      continue;
    }
    auto next = [&](char d) { return i + 1 < text.size() && text[i + 1] == d; };
    switch (c) {
      case '*': push(Tok::Star, start, 1); ++i; continue;
      case '[': push(Tok::LBrack, start, 1); ++i; continue;
      case ']': push(Tok::RBrack, start, 1); ++i; continue;
      case '(': push(Tok::LParen, start, 1); ++i; continue;
      case ')': push(Tok::RParen, start, 1); ++i; continue;
      case ',': push(Tok::Comma, start, 1); ++i; continue;
      case '>': push(Tok::Greater, start, 1); ++i; continue;
      case ':':
        if (next('=')) { push(Tok::Assign, start, 2); i += 2; } else { push(Tok::Colon, start, 1); ++i; }
        continue;
      case '=':
        if (next('>')) { push(Tok::FatArrow, start, 2); i += 2; } else { push(Tok::Equals, start, 1); ++i; }
        continue;
      case '-':
        if (next('>')) { push(Tok::Arrow, start, 2); i += 2; } else { push(Tok::Minus, start, 1); ++i; }
        continue;
      default:
        throw SyntaxError(line, static_cast<int>(start) + 1,
                          std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, static_cast<int>(text.size()) + 1});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().type == t; }
  bool at_keyword(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void error(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.type == Tok::End ? "end of line" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, what + ", found " + found);
  }

  Token expect(Tok t) {
    if (!at(t)) error(std::string("expected ") + describe(t));
    return take();
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) error(std::string("expected '") + kw + "'");
    take();
  }

  std::string name() {
    if (!at(Tok::Ident) || keywords().contains(peek().text)) error("expected a name");
    return take().text;
  }

  void expect_end() {
    if (!at(Tok::End)) error("unexpected input");
  }

  SurfacePtr term() {
    const Token& t = peek();
    if (at(Tok::LBrack)) {
      take();
      SurfaceEnv binders = env_items(Tok::RBrack);
      expect(Tok::RBrack);
      if (binders.empty()) error("expected a binder");
      SurfacePtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = node(SurfaceTerm::Kind::Abs, it->first, it->second, body, t);
      return body;
    }
    if (at(Tok::LParen) && peek(1).type == Tok::Ident && peek(2).type == Tok::Colon &&
        !keywords().contains(peek(1).text)) {
      take();
      std::string x = take().text;
      take();
      SurfacePtr dom = term();
      expect(Tok::RParen);
      SurfacePtr body = term();
      return node(SurfaceTerm::Kind::Prod, x, dom, body, t);
    }
    SurfacePtr a = application();
    if (at(Tok::FatArrow)) {
      take();
      SurfacePtr b = term();
      return node(SurfaceTerm::Kind::Arrow, "", a, b, t);
    }
    return a;
  }

  SurfaceEnv env_items(Tok close) {
    SurfaceEnv out;
    if (at(close)) return out;
    while (true) {
      std::string x = name();
      expect(Tok::Colon);
      out.emplace_back(x, term());
      if (!at(Tok::Comma)) break;
      take();
    }
    return out;
  }

  SurfaceEnv substitution() {
    SurfaceEnv out;
    while (true) {
      std::string x = name();
      expect(Tok::Assign);
      out.emplace_back(x, term());
      if (!at(Tok::Comma)) break;
      take();
    }
    return out;
  }

 private:
  static SurfacePtr node(SurfaceTerm::Kind k, std::string name, SurfacePtr l, SurfacePtr r,
                         const Token& at) {
    auto n = std::make_shared<SurfaceTerm>();
    n->kind = k;
    n->name = std::move(name);
    n->left = std::move(l);
    n->right = std::move(r);
    n->line = at.line;
    n->column = at.column;
    return n;
  }

  bool starts_atom() const {
    if (at(Tok::Star) || at(Tok::LParen)) return true;
    if (!at(Tok::Ident)) return false;
    return peek().text == "box" || !keywords().contains(peek().text);
  }

  SurfacePtr application() {
    if (!starts_atom()) error("expected a term");
    SurfacePtr f = atom();
    while (starts_atom()) {
      const Token& t = peek();
      SurfacePtr a = atom();
      f = node(SurfaceTerm::Kind::App, "", f, a, t);
    }
    return f;
  }

  SurfacePtr atom() {
    Token t = take();
    switch (t.type) {
      case Tok::Star:
        return node(SurfaceTerm::Kind::Star, "", nullptr, nullptr, t);
      case Tok::Ident:
        if (t.text == "box") return node(SurfaceTerm::Kind::Box, "", nullptr, nullptr, t);
        return node(SurfaceTerm::Kind::Ident, t.text, nullptr, nullptr, t);
      case Tok::LParen: {
        SurfacePtr inner = term();
        expect(Tok::RParen);
        return inner;
      }
      default:
        --pos_;
        error("expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Statement parse_statement(Parser& p, int line) {
  Statement st;
  st.line = line;
  if (!p.at(Tok::Ident)) p.error("expected a statement keyword");
  std::string kw = p.take().text;
  if (kw == "symbol") {
    SymbolStmt s;
    s.name = p.name();
    p.expect(Tok::Colon);
    s.type = p.term();
    std::set<std::string> seen;
    while (p.at(Tok::Ident)) {
      std::string opt = p.peek().text;
      int column = p.peek().column;
      if (!seen.insert(opt).second) p.error("option '" + opt + "' given twice");
      p.take();
      if (opt == "constant") {
        s.constant = true;
      } else if (opt == "status") {
        if (p.at_keyword("mul")) s.status = Status::Mul;
        else if (p.at_keyword("lex")) s.status = Status::Lex;
        else p.error("expected 'mul' or 'lex'");
        p.take();
      } else if (opt == "kind") {
        if (p.at_keyword("fo")) s.kind = SymbolKind::FirstOrder;
        else if (p.at_keyword("ho")) s.kind = SymbolKind::HigherOrder;
        else p.error("expected 'fo' or 'ho'");
        p.take();
      } else if (opt == "arity") {
        s.arity = std::stoul(p.expect(Tok::Number).text);
      } else {
        throw SyntaxError(line, column, "unknown symbol option '" + opt + "'");
      }
    }
    p.expect_end();
    st.body = std::move(s);
  } else if (kw == "rule" || kw == "eq") {
    SurfaceEnv env;
    if (p.at(Tok::LBrack)) {
      p.take();
      env = p.env_items(Tok::RBrack);
      p.expect(Tok::RBrack);
    }
    SurfacePtr lhs = p.term();
    p.expect(kw == "rule" ? Tok::Arrow : Tok::Equals);
    SurfacePtr rhs = p.term();
    SurfaceEnv with;
    if (p.at_keyword("with")) {
      p.take();
      with = p.substitution();
    }
    p.expect_end();
    if (kw == "rule")
      st.body = RuleStmt{std::move(env), lhs, rhs, std::move(with)};
    else
      st.body = EqStmt{std::move(env), lhs, rhs, std::move(with)};
  } else if (kw == "precedence") {
    PrecedenceStmt s;
    s.greater = p.name();
    p.expect(Tok::Greater);
    s.lesser = p.name();
    p.expect_end();
    st.body = s;
  } else if (kw == "status") {
    StatusStmt s;
    s.name = p.name();
    if (p.at_keyword("mul")) s.status = Status::Mul;
    else if (p.at_keyword("lex")) s.status = Status::Lex;
    else p.error("expected 'mul' or 'lex'");
    p.take();
    p.expect_end();
    st.body = s;
  } else if (kw == "attest") {
    AttestStmt s;
    if (!p.at(Tok::Ident)) p.error("expected what is attested");
    s.what = p.take().text;
    while (p.at(Tok::Minus)) {
      p.take();
      if (!p.at(Tok::Ident)) p.error("expected a name");
      s.what += "-" + p.take().text;
    }
    p.expect_end();
    st.body = s;
  } else {
    throw SyntaxError(line, 1, "unknown statement '" + kw + "'");
  }
  return st;
}

// ---------------------------------------------------------------------------
// Printer

enum Level { kTop = 0, kFun = 1, kArg = 2 };

void print_term(std::ostream& os, const SurfaceTerm& t, int level) {
  using K = SurfaceTerm::Kind;
  switch (t.kind) {
    case K::Star:
      os << '*';
      return;
    case K::Box:
      os << "box";
      return;
    case K::Ident:
      os << t.name;
      return;
    case K::App:
      if (level == kArg) os << '(';
      print_term(os, *t.left, kFun);
      os << ' ';
      print_term(os, *t.right, kArg);
      if (level == kArg) os << ')';
      return;
    case K::Abs:
    case K::Prod:
      if (level != kTop) os << '(';
      os << (t.kind == K::Abs ? '[' : '(') << t.name << ':';
      print_term(os, *t.left, kTop);
      os << (t.kind == K::Abs ? "] " : ") ");
      print_term(os, *t.right, kTop);
      if (level != kTop) os << ')';
      return;
    case K::Arrow:
      if (level != kTop) os << '(';
      print_term(os, *t.left, kFun);
      os << " => ";
      print_term(os, *t.right, kTop);
      if (level != kTop) os << ')';
      return;
  }
}

void print_env(std::ostream& os, const SurfaceEnv& env, const char* sep) {
  bool first = true;
  for (const auto& [x, t] : env) {
    if (!first) os << ", ";
    first = false;
    os << x << sep;
    print_term(os, *t, kTop);
  }
}

// ---------------------------------------------------------------------------
// Elaboration

class Elaborator {
 public:
  Elaborator(const Signature& sig, int line) : sig_(sig), line_(line) {}

  NameSet declared;  // environment variables, resolved before symbols
  NameSet extra;     // further variables, resolved after symbols
  bool allow_free = false;

  Term run(const SurfaceTerm& t) {
    std::vector<std::string> bound;
    return go(t, bound);
  }

 private:
  Term go(const SurfaceTerm& t, std::vector<std::string>& bound) {
    using K = SurfaceTerm::Kind;
    switch (t.kind) {
      case K::Star:
        return Term::star();
      case K::Box:
        return Term::box();
      case K::Ident: {
        for (std::size_t i = bound.size(); i-- > 0;)
          if (bound[i] == t.name) return Term::bvar(static_cast<std::uint32_t>(bound.size() - 1 - i));
        if (declared.contains(t.name)) return Term::fvar(t.name);
        if (auto f = sig_.find(t.name)) return Term::symb(*f);
        if (extra.contains(t.name) || allow_free) return Term::fvar(t.name);
        throw LoadError(line_, "unknown identifier '" + t.name + "' at column " +
                                   std::to_string(t.column));
      }
      case K::App:
        return Term::app(go(*t.left, bound), go(*t.right, bound));
      case K::Abs:
      case K::Prod:
      case K::Arrow: {
        Term dom = go(*t.left, bound);
        bound.push_back(t.kind == K::Arrow ? std::string() : t.name);
        Term body = go(*t.right, bound);
        bound.pop_back();
        if (t.kind == K::Abs) return Term::abs(t.name, dom, body);
        return Term::prod(t.name, dom, body);
      }
    }
    throw LoadError(line_, "unknown term");
  }

  const Signature& sig_;
  int line_;
};

Sort type_sort(const Term& type, const Signature& sig, int line) {
  try {
    Term s = infer({}, type, sig);
    if (!s.is(TermKind::Sort)) s = normalize(s, sig, Limits{});
    if (!s.is(TermKind::Sort)) throw LoadError(line, "declared type is not typed by a sort");
    return s.sort_value();
  } catch (const TypeError& e) {
    throw LoadError(line, std::string("ill-typed symbol type: ") + e.what());
  }
}

std::size_t leading_products(const Term& t) {
  std::size_t n = 0;
  for (Term cur = t; cur.is(TermKind::Prod); cur = cur.body()) ++n;
  return n;
}

struct ElaboratedSides {
  TypingEnv env;
  Substitution rho;
  Term lhs;
  Term rhs;
};

ElaboratedSides elaborate_sides(const SurfaceEnv& env, const SurfaceEnv& with,
                                const SurfacePtr& lhs, const SurfacePtr& rhs,
                                const Signature& sig, int line) {
  ElaboratedSides out;
  Elaborator el(sig, line);
  for (const auto& [x, ty] : env) {
    if (el.declared.contains(x)) throw LoadError(line, "variable '" + x + "' declared twice");
    out.env.push(x, el.run(*ty));
    el.declared.insert(x);
  }
  for (const auto& [x, value] : with) {
    if (el.declared.contains(x))
      throw LoadError(line, "substituted variable '" + x + "' is declared in the environment");
    if (out.rho.contains(x)) throw LoadError(line, "variable '" + x + "' substituted twice");
    out.rho.bind(x, el.run(*value));
  }
  for (const auto& x : out.rho.domain()) el.extra.insert(x);
  out.lhs = el.run(*lhs);
  out.rhs = el.run(*rhs);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool SurfaceTerm::operator==(const SurfaceTerm& other) const {
  return kind == other.kind && name == other.name && same(left, other.left) &&
         same(right, other.right);
}

bool operator==(const SpecFile& a, const SpecFile& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i)
    if (!same_statement(a.statements[i], b.statements[i])) return false;
  return true;
}

SpecFile parse(const std::string& source) {
  SpecFile file;
  std::istringstream in(source);
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    auto tokens = tokenize_line(text, line);
    if (tokens.size() == 1) continue;
    Parser p(std::move(tokens));
    file.statements.push_back(parse_statement(p, line));
  }
  return file;
}

SurfacePtr parse_surface_term(const std::string& text) {
  Parser p(tokenize_line(text, 1));
  SurfacePtr t = p.term();
  p.expect_end();
  return t;
}

SurfaceEnv parse_surface_env(const std::string& text) {
  Parser p(tokenize_line(text, 1));
  SurfaceEnv env = p.env_items(Tok::End);
  p.expect_end();
  return env;
}

std::string print(const SurfaceTerm& t) {
  std::ostringstream os;
  print_term(os, t, kTop);
  return os.str();
}

std::string print(const SpecFile& file) {
  std::ostringstream os;
  for (const auto& st : file.statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SymbolStmt>) {
            os << "symbol " << s.name << " : ";
            print_term(os, *s.type, kTop);
            if (s.constant) os << " constant";
            if (s.status) os << " status " << to_string(*s.status);
            if (s.kind) os << " kind " << (*s.kind == SymbolKind::FirstOrder ? "fo" : "ho");
            if (s.arity) os << " arity " << *s.arity;
          } else if constexpr (std::is_same_v<T, RuleStmt> || std::is_same_v<T, EqStmt>) {
            os << (std::is_same_v<T, RuleStmt> ? "rule " : "eq ");
            if (!s.env.empty()) {
              os << '[';
              print_env(os, s.env, ":");
              os << "] ";
            }
            print_term(os, *s.lhs, kTop);
            os << (std::is_same_v<T, RuleStmt> ? " -> " : " = ");
            print_term(os, *s.rhs, kTop);
            if (!s.with.empty()) {
              os << " with ";
              print_env(os, s.with, " := ");
            }
          } else if constexpr (std::is_same_v<T, PrecedenceStmt>) {
            os << "precedence " << s.greater << " > " << s.lesser;
          } else if constexpr (std::is_same_v<T, StatusStmt>) {
            os << "status " << s.name << ' ' << to_string(s.status);
          } else {
            os << "attest " << s.what;
          }
        },
        st.body);
    os << '\n';
  }
  return os.str();
}

LoadedFile load(const SpecFile& file) {
  LoadedFile out;
  out.ast = file;
  Signature& sig = out.sig;

  for (const auto& st : file.statements) {
    const auto* s = std::get_if<SymbolStmt>(&st.body);
    if (!s) continue;
    if (sig.find(s->name)) throw LoadError(st.line, "symbol '" + s->name + "' declared twice");
    Elaborator el(sig, st.line);
    SymbolDecl d;
    d.name = s->name;
    d.type = el.run(*s->type);
    d.sort = type_sort(d.type, sig, st.line);
    std::size_t products = leading_products(d.type);
    d.arity = s->arity.value_or(products);
    if (d.arity > products)
      throw LoadError(st.line, "arity " + std::to_string(d.arity) + " exceeds the " +
                                   std::to_string(products) + " products of the type");
    d.status = s->status.value_or(Status::Mul);
    d.declared_kind = s->kind;
    d.declared_constant = s->constant;
    d.line = st.line;
    sig.add_symbol(std::move(d));
  }

  for (const auto& st : file.statements) {
    if (const auto* r = std::get_if<RuleStmt>(&st.body)) {
      auto sides = elaborate_sides(r->env, r->with, r->lhs, r->rhs, sig, st.line);
      auto sp = spine(sides.lhs);
      if (!sp.head.is(TermKind::Symb))
        throw LoadError(st.line, "the left-hand side must be headed by a symbol");
      if (!is_algebraic(sides.lhs, sig))
        throw LoadError(st.line, "the left-hand side must be algebraic: variables and symbols "
                                 "applied to exactly their arity");
      NameSet lv = free_vars(sides.lhs);
      for (const auto& x : free_vars(sides.rhs))
        if (!lv.contains(x))
          throw LoadError(st.line, "variable '" + x + "' of the right-hand side does not occur "
                                   "on the left");
      RewriteRule rule;
      rule.head = sp.head.symbol();
      rule.lhs_args = sp.args;
      rule.rhs = sides.rhs;
      rule.env = std::move(sides.env);
      rule.rho = std::move(sides.rho);
      rule.line = st.line;
      sig.add_rule(std::move(rule));
    } else if (const auto* e = std::get_if<EqStmt>(&st.body)) {
      auto sides = elaborate_sides(e->env, e->with, e->lhs, e->rhs, sig, st.line);
      Equation eq;
      eq.lhs = sides.lhs;
      eq.rhs = sides.rhs;
      eq.env = std::move(sides.env);
      eq.rho = std::move(sides.rho);
      eq.line = st.line;
      sig.add_equation(std::move(eq));
    } else if (const auto* p = std::get_if<PrecedenceStmt>(&st.body)) {
      auto f = sig.find(p->greater);
      auto g = sig.find(p->lesser);
      if (!f) throw LoadError(st.line, "unknown symbol '" + p->greater + "'");
      if (!g) throw LoadError(st.line, "unknown symbol '" + p->lesser + "'");
      sig.declare_precedence(*f, *g);
    } else if (const auto* s = std::get_if<StatusStmt>(&st.body)) {
      auto f = sig.find(s->name);
      if (!f) throw LoadError(st.line, "unknown symbol '" + s->name + "'");
      sig.set_status(*f, s->status);
    } else if (const auto* a = std::get_if<AttestStmt>(&st.body)) {
      if (a->what != "fo-sn") throw LoadError(st.line, "unknown attestation '" + a->what + "'");
      out.attest_fo_sn = true;
    }
  }

  sig.finalize();
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i) {
    SymbolId f{i};
    const auto& d = sig.symbol(f);
    if (d.declared_constant && !sig.is_constant(f))
      throw LoadError(d.line, "'" + d.name + "' is declared constant but is defined by rules or "
                                             "equations");
    if (d.declared_kind == SymbolKind::FirstOrder && !sig.is_first_order(f))
      throw LoadError(d.line, "'" + d.name + "' is declared first-order but is higher-order");
  }
  return out;
}

LoadedFile load_source(const std::string& source) { return load(parse(source)); }

LoadedFile load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_source(ss.str());
}

Term elaborate(const SurfaceTerm& t, const Signature& sig, const TypingEnv& env) {
  Elaborator el(sig, 1);
  el.declared = env.names();
  el.allow_free = true;
  return el.run(t);
}

Term read_term(const std::string& text, const Signature& sig, const TypingEnv& env) {
  return elaborate(*parse_surface_term(text), sig, env);
}

TypingEnv read_env(const std::string& text, const Signature& sig) {
  TypingEnv env;
  for (const auto& [x, ty] : parse_surface_env(text)) env.push(x, elaborate(*ty, sig, env));
  return env;
}

}  // namespace cac
