#include "htt/surface.hpp"

#include <array>
#include <cctype>
#include <map>

namespace htt {

namespace {

enum class Tok {
  ident,
  nat,
  kw_postulate,
  kw_def,
  kw_fun,
  kw_let,
  kw_in,
  kw_set,
  kw_lsuc,
  kw_lmax,
  lparen,
  rparen,
  lbrace,
  rbrace,
  lbracket,
  rbracket,
  colon,
  semicolon,
  equals,
  fat_arrow,
  arrow,
  comma,
  pragma,
  end,
};

struct Token {
  Tok type = Tok::end;
  std::string text;
  Span span;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"postulate", Tok::kw_postulate}, {"def", Tok::kw_def}, {"fun", Tok::kw_fun},
    {"let", Tok::kw_let},             {"in", Tok::kw_in},   {"Set", Tok::kw_set},
    {"lsuc", Tok::kw_lsuc},           {"lmax", Tok::kw_lmax},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool pragma_char(char c) { return ident_char(c) || c == '-'; }

[[noreturn]] void parse_fail(const std::string& path, Span span, std::string msg) {
  throw CheckError{Diagnostic{DiagClass::ParseError, path, span, std::move(msg), {}, {}}};
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string path) : text_(text), path_(std::move(path)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Span span{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", span});
        return out;
      }
      char c = text_[pos_];
      if (ident_start(c)) {
        std::string word = take_while(ident_char);
        auto it = kKeywords.find(word);
        out.push_back({it == kKeywords.end() ? Tok::ident : it->second, word, span});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back({Tok::nat, take_while([](char d) {
                         return std::isdigit(static_cast<unsigned char>(d)) != 0;
                       }),
                       span});
      } else if (c == '#') {
        advance();
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance();
        std::string word = take_while(pragma_char);
        if (word.empty()) parse_fail(path_, span, "expected a pragma name after '#'");
        out.push_back({Tok::pragma, word, span});
      } else if (c == '-') {
        // '--' comments are consumed by skip_trivia; here '-' must open '->'.
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          out.push_back({Tok::arrow, "->", span});
        } else {
          parse_fail(path_, span, "stray '-' (expected '->' or '--' comment)");
        }
      } else if (c == '=') {
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          out.push_back({Tok::fat_arrow, "=>", span});
        } else {
          out.push_back({Tok::equals, "=", span});
        }
      } else {
        Tok t;
        switch (c) {
          case '(': t = Tok::lparen; break;
          case ')': t = Tok::rparen; break;
          case '{': t = Tok::lbrace; break;
          case '}': t = Tok::rbrace; break;
          case '[': t = Tok::lbracket; break;
          case ']': t = Tok::rbracket; break;
          case ':': t = Tok::colon; break;
          case ';': t = Tok::semicolon; break;
          case ',': t = Tok::comma; break;
          default:
            parse_fail(path_, span, std::string("unexpected character '") + c + "'");
        }
        advance();
        out.push_back({t, std::string(1, c), span});
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      if (pos_ >= text_.size()) return;
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  template <typename Pred>
  std::string take_while(Pred pred) {
    std::string out;
    while (pos_ < text_.size() && pred(text_[pos_])) {
      out.push_back(text_[pos_]);
      advance();
    }
    return out;
  }

  std::string_view text_;
  std::string path_;
  size_t pos_ = 0;
  uint32_t line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string path)
      : toks_(std::move(toks)), path_(std::move(path)) {}

  SurfaceModule run() {
    SurfaceModule mod;
    mod.path = path_;
    while (at(Tok::pragma)) {
      const Token& t = next();
      if (t.text != kPragmaWithK && t.text != kPragmaNoHeqBuiltins &&
          t.text != kPragmaNoSigmaBuiltins)
        parse_fail(path_, t.span, "unknown pragma '" + t.text + "'");
      mod.pragmas.emplace_back(t.text, t.span);
    }
    while (!at(Tok::end)) mod.decls.push_back(parse_decl());
    return mod;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().type == t; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok t, const char* what) {
    if (!at(t)) parse_fail(path_, peek().span, std::string("expected ") + what);
    return next();
  }

  SurfaceDecl parse_decl() {
    SurfaceDecl d;
    if (at(Tok::kw_postulate)) {
      next();
      d.is_postulate = true;
    } else if (at(Tok::kw_def)) {
      next();
      d.is_postulate = false;
    } else {
      parse_fail(path_, peek().span, "expected 'postulate' or 'def'");
    }
    const Token& name = expect(Tok::ident, "a declaration name");
    d.name = name.text;
    d.name_span = name.span;
    if (at(Tok::lbracket)) {
      next();
      while (at(Tok::ident)) d.level_params.push_back(next().text);
      if (d.level_params.empty())
        parse_fail(path_, peek().span, "expected at least one level parameter");
      expect(Tok::rbracket, "']'");
    }
    expect(Tok::colon, "':'");
    d.type = parse_term();
    if (!d.is_postulate) {
      expect(Tok::equals, "'='");
      d.body = parse_term();
    }
    expect(Tok::semicolon, "';'");
    return d;
  }

  STermPtr mk(Span span, auto node) {
    return std::make_shared<STerm>(STerm{std::move(node), span});
  }

  STermPtr parse_term() {
    Span span = peek().span;
    if (at(Tok::kw_fun)) {
      next();
      std::vector<std::string> binders;
      while (at(Tok::ident)) binders.push_back(next().text);
      if (binders.empty()) parse_fail(path_, peek().span, "expected a binder after 'fun'");
      expect(Tok::fat_arrow, "'=>'");
      STermPtr body = parse_term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = mk(span, SLam{*it, body});
      return body;
    }
    if (at(Tok::kw_let)) {
      next();
      std::string binder = expect(Tok::ident, "a binder after 'let'").text;
      expect(Tok::colon, "':'");
      STermPtr type = parse_term();
      expect(Tok::equals, "'='");
      STermPtr value = parse_term();
      expect(Tok::kw_in, "'in'");
      STermPtr body = parse_term();
      return mk(span, SLet{binder, type, value, body});
    }
    if (at(Tok::lparen)) {
      // Either a dependent binder group "(x y : A) -> B" or a plain
      // parenthesized term; decided by looking for idents followed by ':'.
      size_t save = pos_;
      next();
      std::vector<std::string> binders;
      while (at(Tok::ident)) binders.push_back(next().text);
      if (!binders.empty() && at(Tok::colon)) {
        next();
        STermPtr domain = parse_term();
        expect(Tok::rparen, "')'");
        expect(Tok::arrow, "'->'");
        STermPtr cod = parse_term();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
          cod = mk(span, SPi{*it, domain, cod});
        return cod;
      }
      pos_ = save;
    }
    STermPtr t = parse_apps();
    if (at(Tok::arrow)) {
      next();
      STermPtr cod = parse_term();
      return mk(span, SArrow{t, cod});
    }
    return t;
  }

  bool starts_atom() const {
    return at(Tok::ident) || at(Tok::kw_set) || at(Tok::lparen);
  }

  STermPtr parse_apps() {
    STermPtr t = parse_atom();
    while (starts_atom()) {
      Span span = peek().span;
      t = mk(t->span.empty() ? span : t->span, SApp{t, parse_atom()});
    }
    return t;
  }

  STermPtr parse_atom() {
    Span span = peek().span;
    if (at(Tok::ident)) {
      SIdent id{next().text, false, {}};
      if (at(Tok::lbrace)) {
        next();
        id.has_levels = true;
        id.levels.push_back(parse_level());
        while (at(Tok::comma)) {
          next();
          id.levels.push_back(parse_level());
        }
        expect(Tok::rbrace, "'}'");
      }
      return mk(span, std::move(id));
    }
    if (at(Tok::kw_set)) {
      next();
      return mk(span, SSort{parse_lvlatom()});
    }
    if (at(Tok::lparen)) {
      next();
      STermPtr t = parse_term();
      expect(Tok::rparen, "')'");
      return t;
    }
    parse_fail(path_, span, "expected a term");
  }

  LevelPtr parse_level() {
    if (at(Tok::kw_lsuc)) {
      next();
      return Level::suc(parse_level());
    }
    if (at(Tok::kw_lmax)) {
      next();
      LevelPtr a = parse_level();
      LevelPtr b = parse_level();
      return Level::max(a, b);
    }
    return parse_lvlatom();
  }

  LevelPtr parse_lvlatom() {
    if (at(Tok::nat)) {
      const std::string& digits = next().text;
      uint64_t n = 0;
      for (char c : digits) n = n * 10 + static_cast<uint64_t>(c - '0');
      return Level::constant(n);
    }
    if (at(Tok::ident)) return Level::var(next().text);
    if (at(Tok::lparen)) {
      next();
      LevelPtr l = parse_level();
      expect(Tok::rparen, "')'");
      return l;
    }
    parse_fail(path_, peek().span, "expected a level");
  }

  std::vector<Token> toks_;
  std::string path_;
  size_t pos_ = 0;
};

}  // namespace

SurfaceModule parse_file(std::string_view text, std::string path) {
  Lexer lexer(text, path);
  return Parser(lexer.run(), std::move(path)).run();
}

// ---------------------------------------------------------------------------
// Scope resolution

namespace {

class Resolver {
 public:
  Resolver(const Signature& sig, const SurfaceDecl& d, const std::string& path)
      : sig_(sig), sdecl_(d), path_(path) {
    for (const auto& p : d.level_params) level_scope_.insert(p);
  }

  ResolvedDecl run() {
    ResolvedDecl out;
    out.decl.name = sdecl_.name;
    out.decl.level_params = sdecl_.level_params;
    out.decl.kind = sdecl_.is_postulate ? DeclKind::postulate : DeclKind::definition;
    out.name_span = sdecl_.name_span;
    std::set<std::string> seen;
    for (const auto& p : sdecl_.level_params)
      if (!seen.insert(p).second)
        fail(DiagClass::DuplicateName, sdecl_.name_span,
             "duplicate level parameter '" + p + "'");
    out.decl.type = resolve(sdecl_.type);
    if (!sdecl_.is_postulate) out.decl.body = resolve(sdecl_.body);
    out.refs = std::move(refs_);
    return out;
  }

 private:
  [[noreturn]] void fail(DiagClass cls, Span span, std::string msg) {
    throw CheckError{Diagnostic{cls, path_, span, std::move(msg), {}, {}}};
  }

  void check_level_scope(const LevelPtr& l, Span span) {
    std::set<std::string> vars;
    level_vars(l, vars);
    for (const auto& v : vars)
      if (!level_scope_.contains(v))
        fail(DiagClass::UnboundLevelVar, span, "unbound level variable '" + v + "'");
  }

  TermPtr resolve(const STermPtr& t) {
    return std::visit(
        [&](const auto& x) -> TermPtr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SIdent>) {
            return resolve_ident(x, t->span);
          } else if constexpr (std::is_same_v<T, SSort>) {
            check_level_scope(x.level, t->span);
            return mk_sort(x.level);
          } else if constexpr (std::is_same_v<T, SPi>) {
            TermPtr dom = resolve(x.domain);
            scope_.push_back(x.binder);
            TermPtr cod = resolve(x.codomain);
            scope_.pop_back();
            return mk_pi(x.binder, dom, cod);
          } else if constexpr (std::is_same_v<T, SArrow>) {
            TermPtr dom = resolve(x.domain);
            scope_.push_back("");  // unreferencable
            TermPtr cod = resolve(x.codomain);
            scope_.pop_back();
            return mk_pi("_", dom, cod);
          } else if constexpr (std::is_same_v<T, SLam>) {
            scope_.push_back(x.binder);
            TermPtr body = resolve(x.body);
            scope_.pop_back();
            return mk_lam(x.binder, body);
          } else if constexpr (std::is_same_v<T, SApp>) {
            TermPtr fn = resolve(x.fn);
            TermPtr arg = resolve(x.arg);
            return mk_app(fn, arg);
          } else {
            static_assert(std::is_same_v<T, SLet>);
            TermPtr type = resolve(x.type);
            TermPtr value = resolve(x.value);
            scope_.push_back(x.binder);
            TermPtr body = resolve(x.body);
            scope_.pop_back();
            return mk_let(x.binder, type, value, body);
          }
        },
        t->node);
  }

  TermPtr resolve_ident(const SIdent& id, Span span) {
    for (size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == id.name) {
        if (id.has_levels)
          fail(DiagClass::LevelArityMismatch, span,
               "bound variable '" + id.name + "' takes no level arguments");
        return mk_var(scope_.size() - 1 - i);
      }
    }
    const DeclPtr* d = sig_.find(id.name);
    if (!d)
      fail(DiagClass::UnboundName, span, "unbound name '" + id.name + "'");
    size_t want = (*d)->level_params.size();
    if (id.levels.size() != want)
      fail(DiagClass::LevelArityMismatch, span,
           "'" + id.name + "' expects " + std::to_string(want) + " level argument" +
               (want == 1 ? "" : "s") + ", got " + std::to_string(id.levels.size()));
    for (const auto& l : id.levels) check_level_scope(l, span);
    refs_.insert(id.name);
    return mk_const(id.name, id.levels);
  }

  const Signature& sig_;
  const SurfaceDecl& sdecl_;
  const std::string& path_;
  std::vector<std::string> scope_;
  std::set<std::string> level_scope_;
  std::set<std::string> refs_;
};

}  // namespace

ResolvedDecl resolve_decl(const Signature& sig, const SurfaceDecl& sdecl,
                          const std::string& path) {
  return Resolver(sig, sdecl, path).run();
}

// ---------------------------------------------------------------------------
// Pretty printing

namespace {

bool uses_var(const TermPtr& t, size_t index) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarT>) {
          return x.index == index;
        } else if constexpr (std::is_same_v<T, SortT> || std::is_same_v<T, ConstT>) {
          return false;
        } else if constexpr (std::is_same_v<T, PiT>) {
          return uses_var(x.domain, index) || uses_var(x.codomain, index + 1);
        } else if constexpr (std::is_same_v<T, LamT>) {
          return uses_var(x.body, index + 1);
        } else if constexpr (std::is_same_v<T, AppT>) {
          return uses_var(x.fn, index) || uses_var(x.arg, index);
        } else {
          static_assert(std::is_same_v<T, LetT>);
          return uses_var(x.type, index) || uses_var(x.value, index) ||
                 uses_var(x.body, index + 1);
        }
      },
      t->node);
}

bool is_keyword(const std::string& s) { return kKeywords.contains(s); }

class Printer {
 public:
  Printer(const std::set<std::string>& globals, std::vector<std::string> scope)
      : globals_(globals), scope_(std::move(scope)) {}

  // prec 0: any term; 1: apps / arrow operand; 2: atom (application argument)
  std::string print(const TermPtr& t, int prec) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarT>) {
            if (x.index >= scope_.size()) return "#" + std::to_string(x.index);
            return scope_[scope_.size() - 1 - x.index];
          } else if constexpr (std::is_same_v<T, SortT>) {
            std::string s = "Set " + level_to_string(x.level, true);
            return prec >= 2 ? "(" + s + ")" : s;
          } else if constexpr (std::is_same_v<T, PiT>) {
            std::string s = print_pi(x);
            return prec >= 1 ? "(" + s + ")" : s;
          } else if constexpr (std::is_same_v<T, LamT>) {
            std::string s = print_lam(x);
            return prec >= 1 ? "(" + s + ")" : s;
          } else if constexpr (std::is_same_v<T, AppT>) {
            std::string s = print(x.fn, 1);
            s += " " + print(x.arg, 2);
            return prec >= 2 ? "(" + s + ")" : s;
          } else if constexpr (std::is_same_v<T, ConstT>) {
            std::string s = x.name;
            if (!x.levels.empty()) {
              s += " {";
              for (size_t i = 0; i < x.levels.size(); ++i) {
                if (i) s += ", ";
                s += level_to_string(x.levels[i]);
              }
              s += "}";
            }
            return s;
          } else {
            static_assert(std::is_same_v<T, LetT>);
            std::string type = print(x.type, 0);
            std::string value = print(x.value, 0);
            std::string binder = fresh(x.name);
            scope_.push_back(binder);
            std::string body = print(x.body, 0);
            scope_.pop_back();
            std::string s = "let " + binder + " : " + type + " = " + value + " in " + body;
            return prec >= 1 ? "(" + s + ")" : s;
          }
        },
        t->node);
  }

 private:
  std::string print_pi(const PiT& x) {
    std::string dom = print(x.domain, uses_var(x.codomain, 0) ? 0 : 1);
    if (!uses_var(x.codomain, 0)) {
      scope_.push_back("");
      std::string cod = print(x.codomain, 0);
      scope_.pop_back();
      return dom + " -> " + cod;
    }
    std::string binder = fresh(x.name);
    scope_.push_back(binder);
    std::string cod = print(x.codomain, 0);
    scope_.pop_back();
    return "(" + binder + " : " + dom + ") -> " + cod;
  }

  std::string print_lam(const LamT& x) {
    std::vector<std::string> binders;
    binders.push_back(fresh(x.name));
    scope_.push_back(binders.back());
    TermPtr body = x.body;
    while (const auto* lam = std::get_if<LamT>(&body->node)) {
      binders.push_back(fresh(lam->name));
      scope_.push_back(binders.back());
      body = lam->body;
    }
    std::string s = "fun";
    for (const auto& b : binders) s += " " + b;
    s += " => " + print(body, 0);
    scope_.resize(scope_.size() - binders.size());
    return s;
  }

  bool taken(const std::string& name) const {
    if (name.empty() || is_keyword(name) || globals_.contains(name)) return true;
    for (const auto& s : scope_)
      if (s == name) return true;
    return false;
  }

  std::string fresh(const std::string& hint) {
    std::string base = (hint.empty() || hint == "_") ? "x" : hint;
    std::string candidate = base;
    while (taken(candidate)) candidate += "'";
    return candidate;
  }

  const std::set<std::string>& globals_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string pretty_term(const TermPtr& t, const std::set<std::string>& global_names,
                        std::vector<std::string> scope) {
  return Printer(global_names, std::move(scope)).print(t, 0);
}

std::string pretty_decl(const Decl& d, const std::set<std::string>& global_names) {
  std::string s = d.kind == DeclKind::postulate ? "postulate " : "def ";
  s += d.name;
  if (!d.level_params.empty()) {
    s += " [";
    for (size_t i = 0; i < d.level_params.size(); ++i) {
      if (i) s += " ";
      s += d.level_params[i];
    }
    s += "]";
  }
  s += " : " + pretty_term(d.type, global_names);
  if (d.kind == DeclKind::definition)
    s += "\n  = " + pretty_term(d.body, global_names);
  s += ";";
  return s;
}

}  // namespace htt
