#include "htt/eval.hpp"

#include <stdexcept>

namespace htt {

ValuePtr v_sort(LevelNF nf) { return std::make_shared<Value>(Value{VSort{std::move(nf)}}); }
ValuePtr v_pi(std::string name, ValuePtr domain, Closure codomain) {
  return std::make_shared<Value>(Value{VPi{std::move(name), std::move(domain), std::move(codomain)}});
}
ValuePtr v_lam(std::string name, Closure body) {
  return std::make_shared<Value>(Value{VLam{std::move(name), std::move(body)}});
}
ValuePtr v_stuck_var(size_t level) {
  return std::make_shared<Value>(Value{VStuck{NeutralVar{level}, {}}});
}
ValuePtr v_stuck_const(std::string name, std::vector<LevelNF> levels) {
  return std::make_shared<Value>(Value{VStuck{NeutralConst{std::move(name), std::move(levels)}, {}}});
}

namespace {

// Rule arity: the delta rule is attempted exactly when the spine reaches the
// eliminator's full argument count.
struct DeltaRule {
  size_t arity;
  size_t scrutinee;       // spine position holding the constructor
  const char* ctor;       // matching constructor head
};

const DeltaRule* delta_rule(DeltaTag tag) {
  static const DeltaRule sigma{5, 4, "pair"};   // SigmaElim A B C c (pair _ _ x y) ~> c x y
  static const DeltaRule heq{7, 6, "hrefl"};    // HEqElim A x P p _ _ (hrefl _ _) ~> p
  static const DeltaRule jp{6, 5, "hrefl"};     // JP A x P p _ (hrefl _ _) ~> p
  switch (tag) {
    case DeltaTag::sigma_elim: return &sigma;
    case DeltaTag::heq_elim: return &heq;
    case DeltaTag::jp: return &jp;
    case DeltaTag::none: return nullptr;
  }
  return nullptr;
}

const VStuck* as_ctor(const ValuePtr& v, const char* name, size_t argc) {
  const auto* stuck = std::get_if<VStuck>(&v->node);
  if (!stuck || stuck->spine.size() != argc) return nullptr;
  const auto* c = std::get_if<NeutralConst>(&stuck->head);
  if (!c || c->name != name) return nullptr;
  return stuck;
}

ValuePtr try_delta(const Signature& sig, const VStuck& stuck, EvalBudget& budget) {
  const auto* head = std::get_if<NeutralConst>(&stuck.head);
  if (!head) return nullptr;
  const DeclPtr* d = sig.find(head->name);
  if (!d) return nullptr;
  const DeltaRule* rule = delta_rule((*d)->delta);
  if (!rule || stuck.spine.size() != rule->arity) return nullptr;
  const ValuePtr& scrutinee = stuck.spine[rule->scrutinee];
  switch ((*d)->delta) {
    case DeltaTag::sigma_elim: {
      const VStuck* pair = as_ctor(scrutinee, rule->ctor, 4);
      if (!pair) return nullptr;
      ValuePtr c = stuck.spine[3];
      return apply(sig, apply(sig, c, pair->spine[2], budget), pair->spine[3], budget);
    }
    case DeltaTag::heq_elim:
    case DeltaTag::jp:
      if (!as_ctor(scrutinee, rule->ctor, 2)) return nullptr;
      return stuck.spine[3];
    case DeltaTag::none: break;
  }
  return nullptr;
}

}  // namespace

ValuePtr instantiate_closure(const Signature& sig, const Closure& c, const ValuePtr& arg,
                             EvalBudget& budget) {
  Env env = c.env;
  env.push_back(arg);
  return evaluate(sig, env, c.body, budget);
}

ValuePtr apply(const Signature& sig, const ValuePtr& fn, const ValuePtr& arg,
               EvalBudget& budget) {
  budget.tick();
  if (const auto* lam = std::get_if<VLam>(&fn->node))
    return instantiate_closure(sig, lam->body, arg, budget);
  if (const auto* stuck = std::get_if<VStuck>(&fn->node)) {
    VStuck extended = *stuck;
    extended.spine.push_back(arg);
    if (ValuePtr fired = try_delta(sig, extended, budget)) return fired;
    return std::make_shared<Value>(Value{std::move(extended)});
  }
  throw IllFormedApplicationError{};
}

ValuePtr evaluate(const Signature& sig, const Env& env, const TermPtr& t, EvalBudget& budget) {
  budget.tick();
  return std::visit(
      [&](const auto& x) -> ValuePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarT>) {
          if (x.index >= env.size()) throw std::logic_error("evaluate: unbound variable");
          return env[env.size() - 1 - x.index];
        } else if constexpr (std::is_same_v<T, SortT>) {
          return v_sort(level_normalize(x.level));
        } else if constexpr (std::is_same_v<T, PiT>) {
          return v_pi(x.name, evaluate(sig, env, x.domain, budget), Closure{env, x.codomain});
        } else if constexpr (std::is_same_v<T, LamT>) {
          return v_lam(x.name, Closure{env, x.body});
        } else if constexpr (std::is_same_v<T, AppT>) {
          ValuePtr fn = evaluate(sig, env, x.fn, budget);
          ValuePtr arg = evaluate(sig, env, x.arg, budget);
          return apply(sig, fn, arg, budget);
        } else if constexpr (std::is_same_v<T, ConstT>) {
          const DeclPtr* found = sig.find(x.name);
          if (!found) throw std::logic_error("evaluate: unknown constant '" + x.name + "'");
          const Decl& d = **found;
          if (d.kind == DeclKind::definition) {
            std::map<std::string, LevelPtr> subst;
            for (size_t i = 0; i < d.level_params.size(); ++i)
              subst.emplace(d.level_params[i], x.levels[i]);
            return evaluate(sig, {}, instantiate_term_levels(d.body, subst), budget);
          }
          std::vector<LevelNF> nfs;
          nfs.reserve(x.levels.size());
          for (const auto& l : x.levels) nfs.push_back(level_normalize(l));
          return v_stuck_const(x.name, std::move(nfs));
        } else {
          static_assert(std::is_same_v<T, LetT>);
          Env extended = env;
          extended.push_back(evaluate(sig, env, x.value, budget));
          return evaluate(sig, extended, x.body, budget);
        }
      },
      t->node);
}

TermPtr quote(const Signature& sig, size_t depth, const ValuePtr& v, EvalBudget& budget) {
  budget.tick();
  return std::visit(
      [&](const auto& x) -> TermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VSort>) {
          return mk_sort(level_readback(x.level));
        } else if constexpr (std::is_same_v<T, VPi>) {
          TermPtr dom = quote(sig, depth, x.domain, budget);
          ValuePtr var = v_stuck_var(depth);
          TermPtr cod =
              quote(sig, depth + 1, instantiate_closure(sig, x.codomain, var, budget), budget);
          return mk_pi(x.name, dom, cod);
        } else if constexpr (std::is_same_v<T, VLam>) {
          ValuePtr var = v_stuck_var(depth);
          TermPtr body =
              quote(sig, depth + 1, instantiate_closure(sig, x.body, var, budget), budget);
          return mk_lam(x.name, body);
        } else {
          static_assert(std::is_same_v<T, VStuck>);
          TermPtr head = std::visit(
              [&](const auto& h) -> TermPtr {
                using H = std::decay_t<decltype(h)>;
                if constexpr (std::is_same_v<H, NeutralVar>) {
                  if (h.level >= depth) throw std::logic_error("quote: variable level escapes");
                  return mk_var(depth - 1 - h.level);
                } else {
                  std::vector<LevelPtr> levels;
                  levels.reserve(h.levels.size());
                  for (const auto& nf : h.levels) levels.push_back(level_readback(nf));
                  return mk_const(h.name, std::move(levels));
                }
              },
              x.head);
          for (const auto& arg : x.spine) head = mk_app(head, quote(sig, depth, arg, budget));
          return head;
        }
      },
      v->node);
}

namespace {

bool convert_stuck(const Signature& sig, size_t depth, const VStuck& a, const VStuck& b,
                   EvalBudget& budget) {
  if (a.head.index() != b.head.index()) return false;
  if (const auto* va = std::get_if<NeutralVar>(&a.head)) {
    if (va->level != std::get<NeutralVar>(b.head).level) return false;
  } else {
    const auto& ca = std::get<NeutralConst>(a.head);
    const auto& cb = std::get<NeutralConst>(b.head);
    if (ca.name != cb.name || ca.levels != cb.levels) return false;
  }
  if (a.spine.size() != b.spine.size()) return false;
  for (size_t i = 0; i < a.spine.size(); ++i)
    if (!convert(sig, depth, a.spine[i], b.spine[i], budget)) return false;
  return true;
}

}  // namespace

TermPtr quote_normal_form(const Signature& sig, const TermPtr& t) {
  EvalBudget budget;
  return quote(sig, 0, evaluate(sig, {}, t, budget), budget);
}

bool convert(const Signature& sig, size_t depth, const ValuePtr& a, const ValuePtr& b,
             EvalBudget& budget) {
  budget.tick();
  if (a == b) return true;

  // Function eta: a lambda converts with a stuck term when their
  // applications to a fresh variable convert. Sorts and Pi types are never
  // functions, so a lambda can only match a lambda or a stuck value.
  const auto* lam_a = std::get_if<VLam>(&a->node);
  const auto* lam_b = std::get_if<VLam>(&b->node);
  if (lam_a || lam_b) {
    auto applicable = [](const ValuePtr& v) {
      return std::holds_alternative<VLam>(v->node) || std::holds_alternative<VStuck>(v->node);
    };
    if (!applicable(a) || !applicable(b)) return false;
    ValuePtr var = v_stuck_var(depth);
    ValuePtr body_a = lam_a ? instantiate_closure(sig, lam_a->body, var, budget)
                            : apply(sig, a, var, budget);
    ValuePtr body_b = lam_b ? instantiate_closure(sig, lam_b->body, var, budget)
                            : apply(sig, b, var, budget);
    return convert(sig, depth + 1, body_a, body_b, budget);
  }

  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VSort>) {
          return x.level == std::get<VSort>(b->node).level;
        } else if constexpr (std::is_same_v<T, VPi>) {
          const auto& y = std::get<VPi>(b->node);
          if (!convert(sig, depth, x.domain, y.domain, budget)) return false;
          ValuePtr var = v_stuck_var(depth);
          return convert(sig, depth + 1, instantiate_closure(sig, x.codomain, var, budget),
                         instantiate_closure(sig, y.codomain, var, budget), budget);
        } else if constexpr (std::is_same_v<T, VStuck>) {
          return convert_stuck(sig, depth, x, std::get<VStuck>(b->node), budget);
        } else {
          return false;  // VLam handled above
        }
      },
      a->node);
}

}  // namespace htt
