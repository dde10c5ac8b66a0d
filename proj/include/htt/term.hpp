#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "htt/level.hpp"

namespace htt {

// Core term language with de Bruijn indices (0 = innermost binder).
// Binder name fields are printing hints only and are ignored by equality.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct VarT {
  size_t index;
};
struct SortT {
  LevelPtr level;
};
struct PiT {
  std::string name;
  TermPtr domain;
  TermPtr codomain;  // binds one variable
};
struct LamT {
  std::string name;
  TermPtr body;  // binds one variable
};
struct AppT {
  TermPtr fn;
  TermPtr arg;
};
struct ConstT {
  std::string name;
  std::vector<LevelPtr> levels;  // one per level parameter of the declaration
};
struct LetT {
  std::string name;
  TermPtr type;
  TermPtr value;
  TermPtr body;  // binds one variable
};

struct Term {
  std::variant<VarT, SortT, PiT, LamT, AppT, ConstT, LetT> node;
};

TermPtr mk_var(size_t index);
TermPtr mk_sort(LevelPtr level);
TermPtr mk_pi(std::string name, TermPtr domain, TermPtr codomain);
TermPtr mk_lam(std::string name, TermPtr body);
TermPtr mk_app(TermPtr fn, TermPtr arg);
TermPtr mk_const(std::string name, std::vector<LevelPtr> levels = {});
TermPtr mk_let(std::string name, TermPtr type, TermPtr value, TermPtr body);

// Alpha-equivalence: structural equality that ignores binder hints.
// Levels are compared structurally (not semantically).
bool alpha_equal(const TermPtr& a, const TermPtr& b);

void collect_consts(const TermPtr& t, std::set<std::string>& out);
void collect_level_vars(const TermPtr& t, std::set<std::string>& out);

// Substitutes level expressions for level variables throughout a term.
// Variables missing from the map raise UnboundLevelVarError.
TermPtr instantiate_term_levels(const TermPtr& t,
                                const std::map<std::string, LevelPtr>& subst);

// Parallel de Bruijn substitution in the usual explicit form: index i maps
// to front[i] when i < front.size(), and to Var(i - front.size() + shift)
// otherwise.
struct Subst {
  std::vector<TermPtr> front;
  size_t shift = 0;

  static Subst identity() { return {}; }
  static Subst shifted(size_t n) { return Subst{{}, n}; }
  // Replaces Var 0, lowering every other index by one.
  static Subst single(TermPtr t) { return Subst{{std::move(t)}, 0}; }

  TermPtr lookup(size_t index) const;
};

TermPtr apply_subst(const TermPtr& t, const Subst& s);

// apply_subst(t, compose(outer, inner)) == apply_subst(apply_subst(t, inner), outer)
Subst compose(const Subst& outer, const Subst& inner);

// -------------------------------------------------------------------------
// Global declarations and signatures.

enum class DeclKind { postulate, definition, builtin };

// Delta rules for the built-in eliminators; each matches one constructor in
// a fixed scrutinee position.
enum class DeltaTag { none, sigma_elim, heq_elim, jp };

struct Decl {
  std::string name;
  std::vector<std::string> level_params;
  DeclKind kind = DeclKind::postulate;
  TermPtr type;   // closed except for level_params
  TermPtr body;   // definitions only
  DeltaTag delta = DeltaTag::none;
  // Pragma gates (builtins only): which file options must hold to use it.
  bool gate_sigma = false;
  bool gate_heq = false;
  bool gate_k = false;
};
using DeclPtr = std::shared_ptr<const Decl>;

// Ordered, append-only global environment. Extension copies the index so
// completed signatures can be shared freely between readers.
class Signature {
 public:
  const DeclPtr* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  Signature extended(DeclPtr d) const;  // throws std::logic_error on duplicates
  const std::vector<DeclPtr>& decls() const { return decls_; }
  std::set<std::string> names() const;

 private:
  std::vector<DeclPtr> decls_;
  std::map<std::string, size_t> index_;
};

}  // namespace htt
