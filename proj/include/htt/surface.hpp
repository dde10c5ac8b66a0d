#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "htt/diagnostics.hpp"
#include "htt/term.hpp"

namespace htt {

// Name-based surface syntax for `.htt` files. ASCII only; `--` comments.
//
//   file    ::= pragma* decl*
//   pragma  ::= "#" IDENT
//   decl    ::= "postulate" IDENT lparams? ":" term ";"
//             | "def" IDENT lparams? ":" term "=" term ";"
//   lparams ::= "[" IDENT+ "]"
//   term    ::= "fun" IDENT+ "=>" term
//             | "(" IDENT+ ":" term ")" "->" term
//             | "let" IDENT ":" term "=" term "in" term
//             | apps ("->" term)?
//   apps    ::= atom+
//   atom    ::= IDENT levelargs? | "Set" lvlatom | "(" term ")"
//   levelargs ::= "{" level ("," level)* "}"
//   level   ::= lvlatom | "lsuc" level | "lmax" level level
//   lvlatom ::= NAT | IDENT | "(" level ")"

struct STerm;
using STermPtr = std::shared_ptr<const STerm>;

struct SIdent {
  std::string name;
  bool has_levels = false;
  std::vector<LevelPtr> levels;
};
struct SSort {
  LevelPtr level;
};
struct SPi {  // dependent function space, one binder
  std::string binder;
  STermPtr domain;
  STermPtr codomain;
};
struct SArrow {  // non-dependent sugar
  STermPtr domain;
  STermPtr codomain;
};
struct SLam {
  std::string binder;
  STermPtr body;
};
struct SApp {
  STermPtr fn;
  STermPtr arg;
};
struct SLet {
  std::string binder;
  STermPtr type;
  STermPtr value;
  STermPtr body;
};

struct STerm {
  std::variant<SIdent, SSort, SPi, SArrow, SLam, SApp, SLet> node;
  Span span;
};

struct SurfaceDecl {
  bool is_postulate = false;
  std::string name;
  Span name_span;
  std::vector<std::string> level_params;
  STermPtr type;
  STermPtr body;  // definitions only
};

struct SurfaceModule {
  std::string path;
  std::vector<std::pair<std::string, Span>> pragmas;
  std::vector<SurfaceDecl> decls;
};

inline constexpr std::string_view kPragmaWithK = "with-K";
inline constexpr std::string_view kPragmaNoHeqBuiltins = "no-heq-builtins";
inline constexpr std::string_view kPragmaNoSigmaBuiltins = "no-sigma-builtins";

// Throws CheckError carrying a ParseError diagnostic. Unknown pragmas are
// parse errors.
SurfaceModule parse_file(std::string_view text, std::string path);

struct ResolvedDecl {
  Decl decl;
  Span name_span;
  std::set<std::string> refs;  // signature names mentioned by type/body
};

// Scope resolution against an existing signature. Throws CheckError with
// UnboundName / UnboundLevelVar / LevelArityMismatch / DuplicateName spans.
ResolvedDecl resolve_decl(const Signature& sig, const SurfaceDecl& sdecl,
                          const std::string& path);

// Canonical text form. Binder hints are freshened against enclosing binders
// and `global_names` so the output reparses to an alpha-equal term.
std::string pretty_term(const TermPtr& t, const std::set<std::string>& global_names,
                        std::vector<std::string> scope = {});
std::string pretty_decl(const Decl& d, const std::set<std::string>& global_names);

}  // namespace htt
