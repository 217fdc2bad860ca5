#pragma once

// Input files. One statement per line:
//
//   symbol NAME : TERM [constant] [status mul|lex] [kind fo|ho] [arity N]
//   rule [ENV] TERM -> TERM [with X := TERM, ...]
//   eq [ENV] TERM = TERM [with X := TERM, ...]
//   precedence F > G
//   status F mul|lex
//   attest fo-sn
//
// ENV is `x:T, y:U` between brackets. `#` starts a comment. Terms are `*`,
// `box`, identifiers, `[x:T] u`, `(x:T) U`, `T => U` (right associative),
// application by juxtaposition, and parentheses.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cac/env.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

// Named surface syntax, as written.
struct SurfaceTerm {
  enum class Kind : std::uint8_t { Star, Box, Ident, App, Abs, Prod, Arrow };

  Kind kind = Kind::Star;
  std::string name;  // identifier, or binder name
  std::shared_ptr<const SurfaceTerm> left;   // function, binder domain, arrow domain
  std::shared_ptr<const SurfaceTerm> right;  // argument, binder body, arrow codomain
  int line = 0;
  int column = 0;

  bool operator==(const SurfaceTerm& other) const;
};

using SurfacePtr = std::shared_ptr<const SurfaceTerm>;
using SurfaceEnv = std::vector<std::pair<std::string, SurfacePtr>>;

struct SymbolStmt {
  std::string name;
  SurfacePtr type;
  bool constant = false;
  std::optional<Status> status;
  std::optional<SymbolKind> kind;
  std::optional<std::size_t> arity;
};

struct RuleStmt {
  SurfaceEnv env;
  SurfacePtr lhs;
  SurfacePtr rhs;
  SurfaceEnv with;
};

struct EqStmt {
  SurfaceEnv env;
  SurfacePtr lhs;
  SurfacePtr rhs;
  SurfaceEnv with;
};

struct PrecedenceStmt {
  std::string greater;
  std::string lesser;
};

struct StatusStmt {
  std::string name;
  Status status = Status::Mul;
};

struct AttestStmt {
  std::string what;
};

struct Statement {
  int line = 0;
  std::variant<SymbolStmt, RuleStmt, EqStmt, PrecedenceStmt, StatusStmt, AttestStmt> body;
};

struct SpecFile {
  std::vector<Statement> statements;
};

bool operator==(const SpecFile& a, const SpecFile& b);

// Throws SyntaxError.
SpecFile parse(const std::string& source);
SurfacePtr parse_surface_term(const std::string& text);
SurfaceEnv parse_surface_env(const std::string& text);

// Renders a file back to source; parse(print(f)) == f.
std::string print(const SpecFile& file);
std::string print(const SurfaceTerm& t);

struct LoadedFile {
  SpecFile ast;
  Signature sig;
  bool attest_fo_sn = false;
};

// Throws SyntaxError or LoadError.
LoadedFile load(const SpecFile& file);
LoadedFile load_source(const std::string& source);
LoadedFile load_file(const std::string& path);

// Elaborates a standalone term against a loaded signature. Identifiers are,
// in order: bound variables, declarations of `env`, symbols, and otherwise
// free variables.
Term elaborate(const SurfaceTerm& t, const Signature& sig, const TypingEnv& env = {});
Term read_term(const std::string& text, const Signature& sig, const TypingEnv& env = {});
// `x:T, y:U`, each type read with the previous declarations in scope.
TypingEnv read_env(const std::string& text, const Signature& sig);

}  // namespace cac
