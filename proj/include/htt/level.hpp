#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace htt {

// Universe level expressions: the free (max, +1, 0) algebra over level
// variables. Levels appear in sorts (`Set l`) and as explicit level
// arguments at constant use sites; variables are always the enclosing
// declaration's prenex level parameters.
struct Level;
using LevelPtr = std::shared_ptr<const Level>;

struct Level {
  enum class Kind { zero, suc, max, var };

  Kind kind = Kind::zero;
  LevelPtr lhs;      // suc: argument; max: left
  LevelPtr rhs;      // max: right
  std::string name;  // var

  static LevelPtr zero();
  static LevelPtr suc(LevelPtr l);
  static LevelPtr max(LevelPtr a, LevelPtr b);
  static LevelPtr var(std::string name);
  static LevelPtr constant(uint64_t n);  // n as iterated suc of zero
};

bool level_structural_eq(const LevelPtr& a, const LevelPtr& b);

// Canonical max-plus normal form. Denotes, for a valuation v of variables
// into naturals, the value max(base, max over atoms (x,o) of v(x)+o).
// Normal forms computed by level_normalize always satisfy
// base >= every atom offset, which makes structural equality coincide with
// agreement under all valuations.
struct LevelNF {
  uint64_t base = 0;
  std::map<std::string, uint64_t> atoms;  // at most one offset per variable

  friend bool operator==(const LevelNF&, const LevelNF&) = default;
  friend auto operator<=>(const LevelNF&, const LevelNF&) = default;
};

struct UnboundLevelVarError : std::runtime_error {
  std::string var;
  explicit UnboundLevelVarError(const std::string& v)
      : std::runtime_error("unbound level variable '" + v + "'"), var(v) {}
};

// Total; variables become atoms.
LevelNF level_normalize(const LevelPtr& e);

// NF combinators mirroring suc/max on expressions.
LevelNF nf_suc(LevelNF nf);
LevelNF nf_max(LevelNF a, LevelNF b);
LevelNF nf_constant(uint64_t n);

// Minimal expression denoting the normal form; level_normalize of the
// readback yields the argument back.
LevelPtr level_readback(const LevelNF& nf);

// Decides semantic equality (agreement under every valuation).
bool level_eq(const LevelPtr& a, const LevelPtr& b);

// Homomorphic substitution. Throws UnboundLevelVarError when a variable of
// `e` is missing from `subst`.
LevelPtr level_instantiate(const LevelPtr& e,
                           const std::map<std::string, LevelPtr>& subst);

void level_vars(const LevelPtr& e, std::set<std::string>& out);

// atom_position = true parenthesizes compound expressions so the result can
// sit where the grammar expects a level atom.
std::string level_to_string(const LevelPtr& e, bool atom_position = false);

}  // namespace htt
