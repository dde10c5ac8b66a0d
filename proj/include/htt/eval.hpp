#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "htt/term.hpp"

namespace htt {

// Semantic domain for normalization by evaluation. Bound variables are
// represented by de Bruijn levels inside stuck terms; closures capture the
// evaluation environment.
struct Value;
using ValuePtr = std::shared_ptr<const Value>;
using Env = std::vector<ValuePtr>;  // indexed by level; Var i reads from the back

struct Closure {
  Env env;
  TermPtr body;  // binds one variable
};

struct VSort {
  LevelNF level;
};
struct VPi {
  std::string name;
  ValuePtr domain;
  Closure codomain;
};
struct VLam {
  std::string name;
  Closure body;
};
struct NeutralVar {
  size_t level;
};
struct NeutralConst {
  std::string name;
  std::vector<LevelNF> levels;
};
struct VStuck {
  std::variant<NeutralVar, NeutralConst> head;
  std::vector<ValuePtr> spine;
};

struct Value {
  std::variant<VSort, VPi, VLam, VStuck> node;
};

ValuePtr v_sort(LevelNF nf);
ValuePtr v_pi(std::string name, ValuePtr domain, Closure codomain);
ValuePtr v_lam(std::string name, Closure body);
ValuePtr v_stuck_var(size_t level);
ValuePtr v_stuck_const(std::string name, std::vector<LevelNF> levels);

// Reduction fuel shared by one evaluation/conversion query. Exhaustion is a
// distinct outcome, never reported as term inequality.
struct StepBudgetExceededError : std::runtime_error {
  StepBudgetExceededError() : std::runtime_error("reduction step budget exceeded") {}
};

constexpr uint64_t kDefaultStepBudget = 10'000'000;

struct EvalBudget {
  uint64_t remaining = kDefaultStepBudget;
  void tick() {
    if (remaining == 0) throw StepBudgetExceededError{};
    --remaining;
  }
};

// Raised when a non-function value ends up in application position; this
// indicates a checker bug, not bad user input.
struct IllFormedApplicationError : std::logic_error {
  IllFormedApplicationError() : std::logic_error("applied a sort or Pi value") {}
};

// Weak-head-and-spine evaluation. Definitions and lets unfold; delta rules
// fire when the matching constructor reaches the scrutinee position.
// Callers must typecheck first: ill-typed input may diverge into the budget.
ValuePtr evaluate(const Signature& sig, const Env& env, const TermPtr& t, EvalBudget& budget);

ValuePtr apply(const Signature& sig, const ValuePtr& fn, const ValuePtr& arg,
               EvalBudget& budget);

ValuePtr instantiate_closure(const Signature& sig, const Closure& c, const ValuePtr& arg,
                             EvalBudget& budget);

// Read-back to beta/delta-normal terms; `depth` is the number of enclosing
// binders (every stuck variable level must be below it).
TermPtr quote(const Signature& sig, size_t depth, const ValuePtr& v, EvalBudget& budget);

// Definitional equality: beta, delta, let unfolding, eta for functions,
// level equality on sorts and constant heads. No eta for pairs.
bool convert(const Signature& sig, size_t depth, const ValuePtr& a, const ValuePtr& b,
             EvalBudget& budget);

// quote . evaluate with a fresh default budget, for closed terms.
TermPtr quote_normal_form(const Signature& sig, const TermPtr& t);

}  // namespace htt
