#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htt/diagnostics.hpp"
#include "htt/eval.hpp"
#include "htt/surface.hpp"
#include "htt/term.hpp"

namespace htt {

// Per-file options derived from pragmas. Axiom K is opt-in: the K-bearing
// eliminator JP is usable only under `# with-K`.
struct CheckOptions {
  bool with_k = false;
  bool allow_heq_builtins = true;
  bool allow_sigma_builtins = true;
};

CheckOptions options_from_pragmas(const std::vector<std::pair<std::string, Span>>& pragmas);

// Typing context: a telescope of types plus the matching evaluation
// environment (stuck variables for binders, values for lets).
struct Ctx {
  std::vector<std::pair<std::string, ValuePtr>> types;  // indexed by level
  Env env;

  size_t depth() const { return env.size(); }
  void bind_fresh(const std::string& name, ValuePtr type) {
    env.push_back(v_stuck_var(env.size()));
    types.emplace_back(name, std::move(type));
  }
  void bind_value(const std::string& name, ValuePtr type, ValuePtr value) {
    env.push_back(std::move(value));
    types.emplace_back(name, std::move(type));
  }
  void pop() {
    env.pop_back();
    types.pop_back();
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(types.size());
    for (const auto& [n, _] : types) out.push_back(n);
    return out;
  }
};

// Bidirectional checker for one declaration. Every evaluation or conversion
// it performs is a fresh budgeted query; exhausting the budget surfaces as a
// StepBudgetExceeded diagnostic, never as inequality.
class Checker {
 public:
  Checker(const Signature& sig, CheckOptions opts, std::vector<std::string> level_params,
          uint64_t step_budget, std::string file, Span decl_span, std::string decl_name);

  ValuePtr infer(Ctx& ctx, const TermPtr& t);
  void check(Ctx& ctx, const TermPtr& t, const ValuePtr& expected);
  // Infers and requires a universe; returns its level.
  LevelNF infer_sort(Ctx& ctx, const TermPtr& t);

  ValuePtr eval_query(const Env& env, const TermPtr& t);
  bool convert_query(size_t depth, const ValuePtr& a, const ValuePtr& b);
  TermPtr quote_query(size_t depth, const ValuePtr& v);
  ValuePtr apply_query(const ValuePtr& fn, const ValuePtr& arg);

  std::string render_value(const Ctx& ctx, const ValuePtr& v);

 private:
  [[noreturn]] void fail(DiagClass cls, std::string msg,
                         std::optional<std::string> expected = {},
                         std::optional<std::string> actual = {});
  void check_level_args(const LevelPtr& l);

  const Signature& sig_;
  CheckOptions opts_;
  std::set<std::string> level_params_;
  uint64_t step_budget_;
  std::string file_;
  Span decl_span_;
  std::string decl_name_;
  std::set<std::string> global_names_;
  EvalBudget budget_;
};

// Checks one declaration against a signature and returns the extension.
// Throws CheckError; DuplicateName when the name is taken.
Signature check_decl(const Signature& sig, const CheckOptions& opts, const Decl& d,
                     uint64_t step_budget = kDefaultStepBudget, const std::string& file = "",
                     Span span = {});

struct ModuleReport {
  std::string path;
  std::vector<std::string> accepted;  // in declaration order
  std::vector<std::string> skipped;   // dependencies failed; not attempted
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::set<std::string>> refs;  // accepted decl -> names used
  Signature sig;  // input signature extended with the accepted declarations

  // Canonical rendering used for determinism checks and logs.
  std::string summary() const;
};

// Resolves and checks every declaration under the file's pragmas. Does not
// stop at the first failing declaration, but skips declarations that mention
// a failed one.
ModuleReport check_module(const Signature& sig, const SurfaceModule& mod,
                          uint64_t step_budget = kDefaultStepBudget);

}  // namespace htt
