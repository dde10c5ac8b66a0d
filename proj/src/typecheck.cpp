#include "htt/typecheck.hpp"

#include <sstream>

namespace htt {

CheckOptions options_from_pragmas(const std::vector<std::pair<std::string, Span>>& pragmas) {
  CheckOptions opts;
  for (const auto& [name, span] : pragmas) {
    if (name == kPragmaWithK) opts.with_k = true;
    if (name == kPragmaNoHeqBuiltins) opts.allow_heq_builtins = false;
    if (name == kPragmaNoSigmaBuiltins) opts.allow_sigma_builtins = false;
  }
  return opts;
}

Checker::Checker(const Signature& sig, CheckOptions opts, std::vector<std::string> level_params,
                 uint64_t step_budget, std::string file, Span decl_span, std::string decl_name)
    : sig_(sig),
      opts_(opts),
      level_params_(level_params.begin(), level_params.end()),
      step_budget_(step_budget),
      file_(std::move(file)),
      decl_span_(decl_span),
      decl_name_(std::move(decl_name)),
      global_names_(sig.names()) {}

void Checker::fail(DiagClass cls, std::string msg, std::optional<std::string> expected,
                   std::optional<std::string> actual) {
  std::string full = msg;
  if (!decl_name_.empty()) full = "in declaration '" + decl_name_ + "': " + msg;
  throw CheckError{
      Diagnostic{cls, file_, decl_span_, std::move(full), std::move(expected), std::move(actual)}};
}

std::string Checker::render_value(const Ctx& ctx, const ValuePtr& v) {
  return pretty_term(quote_query(ctx.depth(), v), global_names_, ctx.names());
}

ValuePtr Checker::eval_query(const Env& env, const TermPtr& t) {
  budget_.remaining = step_budget_;
  try {
    return evaluate(sig_, env, t, budget_);
  } catch (const StepBudgetExceededError&) {
    fail(DiagClass::StepBudgetExceeded, "evaluation exceeded the step budget");
  }
}

bool Checker::convert_query(size_t depth, const ValuePtr& a, const ValuePtr& b) {
  budget_.remaining = step_budget_;
  try {
    return convert(sig_, depth, a, b, budget_);
  } catch (const StepBudgetExceededError&) {
    fail(DiagClass::StepBudgetExceeded, "conversion exceeded the step budget");
  }
}

TermPtr Checker::quote_query(size_t depth, const ValuePtr& v) {
  budget_.remaining = step_budget_;
  try {
    return quote(sig_, depth, v, budget_);
  } catch (const StepBudgetExceededError&) {
    fail(DiagClass::StepBudgetExceeded, "read-back exceeded the step budget");
  }
}

ValuePtr Checker::apply_query(const ValuePtr& fn, const ValuePtr& arg) {
  budget_.remaining = step_budget_;
  try {
    return apply(sig_, fn, arg, budget_);
  } catch (const StepBudgetExceededError&) {
    fail(DiagClass::StepBudgetExceeded, "evaluation exceeded the step budget");
  }
}

void Checker::check_level_args(const LevelPtr& l) {
  std::set<std::string> vars;
  level_vars(l, vars);
  for (const auto& v : vars)
    if (!level_params_.contains(v))
      fail(DiagClass::UnboundLevelVar, "unbound level variable '" + v + "'");
}

LevelNF Checker::infer_sort(Ctx& ctx, const TermPtr& t) {
  ValuePtr ty = infer(ctx, t);
  if (const auto* s = std::get_if<VSort>(&ty->node)) return s->level;
  fail(DiagClass::UniverseMismatch, "expected a universe", "Set _", render_value(ctx, ty));
}

ValuePtr Checker::infer(Ctx& ctx, const TermPtr& t) {
  return std::visit(
      [&](const auto& x) -> ValuePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarT>) {
          if (x.index >= ctx.types.size())
            throw std::logic_error("infer: unbound de Bruijn index");
          return ctx.types[ctx.types.size() - 1 - x.index].second;
        } else if constexpr (std::is_same_v<T, SortT>) {
          check_level_args(x.level);
          return v_sort(nf_suc(level_normalize(x.level)));
        } else if constexpr (std::is_same_v<T, PiT>) {
          LevelNF dom_sort = infer_sort(ctx, x.domain);
          ValuePtr dom = eval_query(ctx.env, x.domain);
          ctx.bind_fresh(x.name, dom);
          LevelNF cod_sort = infer_sort(ctx, x.codomain);
          ctx.pop();
          return v_sort(nf_max(dom_sort, cod_sort));
        } else if constexpr (std::is_same_v<T, LamT>) {
          fail(DiagClass::TypeMismatch,
               "cannot infer the type of a bare lambda; it must be checked against a "
               "function type");
        } else if constexpr (std::is_same_v<T, AppT>) {
          ValuePtr fn_ty = infer(ctx, x.fn);
          const auto* pi = std::get_if<VPi>(&fn_ty->node);
          if (!pi)
            fail(DiagClass::NotAFunction, "application head is not a function", {},
                 render_value(ctx, fn_ty));
          check(ctx, x.arg, pi->domain);
          ValuePtr arg = eval_query(ctx.env, x.arg);
          budget_.remaining = step_budget_;
          try {
            return instantiate_closure(sig_, pi->codomain, arg, budget_);
          } catch (const StepBudgetExceededError&) {
            fail(DiagClass::StepBudgetExceeded, "evaluation exceeded the step budget");
          }
        } else if constexpr (std::is_same_v<T, ConstT>) {
          const DeclPtr* found = sig_.find(x.name);
          if (!found) fail(DiagClass::UnboundName, "unbound name '" + x.name + "'");
          const Decl& d = **found;
          if (d.kind == DeclKind::builtin) {
            if (d.gate_heq && !opts_.allow_heq_builtins)
              fail(DiagClass::BuiltinDisabled,
                   "built-in '" + x.name + "' is disabled by the no-heq-builtins pragma");
            if (d.gate_sigma && !opts_.allow_sigma_builtins)
              fail(DiagClass::BuiltinDisabled,
                   "built-in '" + x.name + "' is disabled by the no-sigma-builtins pragma");
            if (d.gate_k && !opts_.with_k)
              fail(DiagClass::KDisabled,
                   "built-in '" + x.name +
                       "' carries Axiom K and needs the with-K pragma to be enabled");
          }
          if (x.levels.size() != d.level_params.size())
            fail(DiagClass::LevelArityMismatch,
                 "'" + x.name + "' expects " + std::to_string(d.level_params.size()) +
                     " level argument" + (d.level_params.size() == 1 ? "" : "s") + ", got " +
                     std::to_string(x.levels.size()));
          std::map<std::string, LevelPtr> subst;
          for (size_t i = 0; i < x.levels.size(); ++i) {
            check_level_args(x.levels[i]);
            subst.emplace(d.level_params[i], x.levels[i]);
          }
          return eval_query({}, instantiate_term_levels(d.type, subst));
        } else {
          static_assert(std::is_same_v<T, LetT>);
          infer_sort(ctx, x.type);
          ValuePtr ty = eval_query(ctx.env, x.type);
          check(ctx, x.value, ty);
          ValuePtr val = eval_query(ctx.env, x.value);
          ctx.bind_value(x.name, ty, val);
          ValuePtr out = infer(ctx, x.body);
          ctx.pop();
          return out;
        }
      },
      t->node);
}

void Checker::check(Ctx& ctx, const TermPtr& t, const ValuePtr& expected) {
  if (const auto* lam = std::get_if<LamT>(&t->node)) {
    const auto* pi = std::get_if<VPi>(&expected->node);
    if (!pi)
      fail(DiagClass::TypeMismatch, "a lambda was checked against a non-function type",
           render_value(ctx, expected), "fun " + lam->name + " => ...");
    ValuePtr var = v_stuck_var(ctx.depth());
    ctx.bind_fresh(lam->name, pi->domain);
    budget_.remaining = step_budget_;
    ValuePtr body_expected;
    try {
      body_expected = instantiate_closure(sig_, pi->codomain, var, budget_);
    } catch (const StepBudgetExceededError&) {
      fail(DiagClass::StepBudgetExceeded, "evaluation exceeded the step budget");
    }
    check(ctx, lam->body, body_expected);
    ctx.pop();
    return;
  }
  if (const auto* let = std::get_if<LetT>(&t->node)) {
    infer_sort(ctx, let->type);
    ValuePtr ty = eval_query(ctx.env, let->type);
    check(ctx, let->value, ty);
    ValuePtr val = eval_query(ctx.env, let->value);
    ctx.bind_value(let->name, ty, val);
    check(ctx, let->body, expected);
    ctx.pop();
    return;
  }
  ValuePtr actual = infer(ctx, t);
  if (!convert_query(ctx.depth(), actual, expected)) {
    bool both_sorts = std::holds_alternative<VSort>(actual->node) &&
                      std::holds_alternative<VSort>(expected->node);
    fail(both_sorts ? DiagClass::UniverseMismatch : DiagClass::TypeMismatch,
         both_sorts ? "universe level mismatch" : "type mismatch",
         render_value(ctx, expected), render_value(ctx, actual));
  }
}

Signature check_decl(const Signature& sig, const CheckOptions& opts, const Decl& d,
                     uint64_t step_budget, const std::string& file, Span span) {
  if (sig.contains(d.name))
    throw CheckError{Diagnostic{DiagClass::DuplicateName, file, span,
                                "duplicate declaration '" + d.name + "'", {}, {}}};
  {
    std::set<std::string> seen;
    for (const auto& p : d.level_params)
      if (!seen.insert(p).second)
        throw CheckError{Diagnostic{DiagClass::DuplicateName, file, span,
                                    "in declaration '" + d.name +
                                        "': duplicate level parameter '" + p + "'",
                                    {}, {}}};
  }
  Checker checker(sig, opts, d.level_params, step_budget, file, span, d.name);
  Ctx ctx;
  checker.infer_sort(ctx, d.type);
  if (d.kind == DeclKind::definition) {
    ValuePtr ty = checker.eval_query({}, d.type);
    checker.check(ctx, d.body, ty);
  }
  return sig.extended(std::make_shared<Decl>(d));
}

namespace {

void surface_idents(const STermPtr& t, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SIdent>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, SPi>) {
          surface_idents(x.domain, out);
          surface_idents(x.codomain, out);
        } else if constexpr (std::is_same_v<T, SArrow>) {
          surface_idents(x.domain, out);
          surface_idents(x.codomain, out);
        } else if constexpr (std::is_same_v<T, SLam>) {
          surface_idents(x.body, out);
        } else if constexpr (std::is_same_v<T, SApp>) {
          surface_idents(x.fn, out);
          surface_idents(x.arg, out);
        } else if constexpr (std::is_same_v<T, SLet>) {
          surface_idents(x.type, out);
          surface_idents(x.value, out);
          surface_idents(x.body, out);
        }
      },
      t->node);
}

bool mentions_failed(const SurfaceDecl& d, const std::set<std::string>& failed) {
  if (failed.empty()) return false;
  std::set<std::string> idents;
  surface_idents(d.type, idents);
  if (d.body) surface_idents(d.body, idents);
  for (const auto& name : idents)
    if (failed.contains(name)) return true;
  return false;
}

}  // namespace

ModuleReport check_module(const Signature& sig, const SurfaceModule& mod,
                          uint64_t step_budget) {
  ModuleReport rep;
  rep.path = mod.path;
  rep.sig = sig;
  CheckOptions opts = options_from_pragmas(mod.pragmas);
  std::set<std::string> failed;
  for (const auto& sd : mod.decls) {
    if (mentions_failed(sd, failed)) {
      rep.skipped.push_back(sd.name);
      failed.insert(sd.name);
      continue;
    }
    try {
      ResolvedDecl rd = resolve_decl(rep.sig, sd, mod.path);
      rep.sig = check_decl(rep.sig, opts, rd.decl, step_budget, mod.path, rd.name_span);
      rep.accepted.push_back(sd.name);
      rep.refs[sd.name] = std::move(rd.refs);
    } catch (const CheckError& e) {
      rep.diagnostics.push_back(e.diag);
      failed.insert(sd.name);
    }
  }
  return rep;
}

std::string ModuleReport::summary() const {
  std::ostringstream out;
  out << path << ": accepted " << accepted.size() << ", skipped " << skipped.size()
      << ", diagnostics " << diagnostics.size() << "\n";
  for (const auto& n : accepted) out << "  ok " << n << "\n";
  for (const auto& n : skipped) out << "  skipped " << n << "\n";
  for (const auto& d : diagnostics) {
    out << "  " << diag_class_name(d.cls) << " at " << d.span.line << ":" << d.span.col << " "
        << d.message << "\n";
    if (d.expected) out << "    expected: " << *d.expected << "\n";
    if (d.actual) out << "    actual:   " << *d.actual << "\n";
  }
  return out.str();
}

}  // namespace htt
