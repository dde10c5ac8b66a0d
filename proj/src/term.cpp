#include "htt/term.hpp"

#include <stdexcept>

namespace htt {

TermPtr mk_var(size_t index) { return std::make_shared<Term>(Term{VarT{index}}); }
TermPtr mk_sort(LevelPtr level) { return std::make_shared<Term>(Term{SortT{std::move(level)}}); }
TermPtr mk_pi(std::string name, TermPtr domain, TermPtr codomain) {
  return std::make_shared<Term>(Term{PiT{std::move(name), std::move(domain), std::move(codomain)}});
}
TermPtr mk_lam(std::string name, TermPtr body) {
  return std::make_shared<Term>(Term{LamT{std::move(name), std::move(body)}});
}
TermPtr mk_app(TermPtr fn, TermPtr arg) {
  return std::make_shared<Term>(Term{AppT{std::move(fn), std::move(arg)}});
}
TermPtr mk_const(std::string name, std::vector<LevelPtr> levels) {
  return std::make_shared<Term>(Term{ConstT{std::move(name), std::move(levels)}});
}
TermPtr mk_let(std::string name, TermPtr type, TermPtr value, TermPtr body) {
  return std::make_shared<Term>(
      Term{LetT{std::move(name), std::move(type), std::move(value), std::move(body)}});
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, VarT>) {
          return x.index == y.index;
        } else if constexpr (std::is_same_v<T, SortT>) {
          return level_structural_eq(x.level, y.level);
        } else if constexpr (std::is_same_v<T, PiT>) {
          return alpha_equal(x.domain, y.domain) && alpha_equal(x.codomain, y.codomain);
        } else if constexpr (std::is_same_v<T, LamT>) {
          return alpha_equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, AppT>) {
          return alpha_equal(x.fn, y.fn) && alpha_equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, ConstT>) {
          if (x.name != y.name || x.levels.size() != y.levels.size()) return false;
          for (size_t i = 0; i < x.levels.size(); ++i)
            if (!level_structural_eq(x.levels[i], y.levels[i])) return false;
          return true;
        } else {
          static_assert(std::is_same_v<T, LetT>);
          return alpha_equal(x.type, y.type) && alpha_equal(x.value, y.value) &&
                 alpha_equal(x.body, y.body);
        }
      },
      a->node);
}

void collect_consts(const TermPtr& t, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PiT>) {
          collect_consts(x.domain, out);
          collect_consts(x.codomain, out);
        } else if constexpr (std::is_same_v<T, LamT>) {
          collect_consts(x.body, out);
        } else if constexpr (std::is_same_v<T, AppT>) {
          collect_consts(x.fn, out);
          collect_consts(x.arg, out);
        } else if constexpr (std::is_same_v<T, ConstT>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, LetT>) {
          collect_consts(x.type, out);
          collect_consts(x.value, out);
          collect_consts(x.body, out);
        }
      },
      t->node);
}

void collect_level_vars(const TermPtr& t, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SortT>) {
          level_vars(x.level, out);
        } else if constexpr (std::is_same_v<T, PiT>) {
          collect_level_vars(x.domain, out);
          collect_level_vars(x.codomain, out);
        } else if constexpr (std::is_same_v<T, LamT>) {
          collect_level_vars(x.body, out);
        } else if constexpr (std::is_same_v<T, AppT>) {
          collect_level_vars(x.fn, out);
          collect_level_vars(x.arg, out);
        } else if constexpr (std::is_same_v<T, ConstT>) {
          for (const auto& l : x.levels) level_vars(l, out);
        } else if constexpr (std::is_same_v<T, LetT>) {
          collect_level_vars(x.type, out);
          collect_level_vars(x.value, out);
          collect_level_vars(x.body, out);
        }
      },
      t->node);
}

TermPtr instantiate_term_levels(const TermPtr& t,
                                const std::map<std::string, LevelPtr>& subst) {
  return std::visit(
      [&](const auto& x) -> TermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarT>) {
          return t;
        } else if constexpr (std::is_same_v<T, SortT>) {
          return mk_sort(level_instantiate(x.level, subst));
        } else if constexpr (std::is_same_v<T, PiT>) {
          return mk_pi(x.name, instantiate_term_levels(x.domain, subst),
                       instantiate_term_levels(x.codomain, subst));
        } else if constexpr (std::is_same_v<T, LamT>) {
          return mk_lam(x.name, instantiate_term_levels(x.body, subst));
        } else if constexpr (std::is_same_v<T, AppT>) {
          return mk_app(instantiate_term_levels(x.fn, subst),
                        instantiate_term_levels(x.arg, subst));
        } else if constexpr (std::is_same_v<T, ConstT>) {
          std::vector<LevelPtr> levels;
          levels.reserve(x.levels.size());
          for (const auto& l : x.levels) levels.push_back(level_instantiate(l, subst));
          return mk_const(x.name, std::move(levels));
        } else {
          static_assert(std::is_same_v<T, LetT>);
          return mk_let(x.name, instantiate_term_levels(x.type, subst),
                        instantiate_term_levels(x.value, subst),
                        instantiate_term_levels(x.body, subst));
        }
      },
      t->node);
}

TermPtr Subst::lookup(size_t index) const {
  if (index < front.size()) return front[index];
  return mk_var(index - front.size() + shift);
}

namespace {

// Lift under one binder: Var 0 stays, the rest route through s then shift up.
Subst lift(const Subst& s) {
  Subst up = Subst::shifted(1);
  Subst out;
  out.front.reserve(s.front.size() + 1);
  out.front.push_back(mk_var(0));
  for (const auto& t : s.front) out.front.push_back(apply_subst(t, up));
  out.shift = s.shift + 1;
  return out;
}

bool is_identity(const Subst& s) { return s.front.empty() && s.shift == 0; }

}  // namespace

TermPtr apply_subst(const TermPtr& t, const Subst& s) {
  if (is_identity(s)) return t;
  return std::visit(
      [&](const auto& x) -> TermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarT>) {
          return s.lookup(x.index);
        } else if constexpr (std::is_same_v<T, SortT>) {
          return t;
        } else if constexpr (std::is_same_v<T, PiT>) {
          return mk_pi(x.name, apply_subst(x.domain, s), apply_subst(x.codomain, lift(s)));
        } else if constexpr (std::is_same_v<T, LamT>) {
          return mk_lam(x.name, apply_subst(x.body, lift(s)));
        } else if constexpr (std::is_same_v<T, AppT>) {
          return mk_app(apply_subst(x.fn, s), apply_subst(x.arg, s));
        } else if constexpr (std::is_same_v<T, ConstT>) {
          return t;
        } else {
          static_assert(std::is_same_v<T, LetT>);
          return mk_let(x.name, apply_subst(x.type, s), apply_subst(x.value, s),
                        apply_subst(x.body, lift(s)));
        }
      },
      t->node);
}

Subst compose(const Subst& outer, const Subst& inner) {
  size_t k_in = inner.front.size(), n_in = inner.shift;
  size_t k_out = outer.front.size(), n_out = outer.shift;
  size_t explicit_count = k_in + (k_out > n_in ? k_out - n_in : 0);
  Subst out;
  out.front.reserve(explicit_count);
  for (size_t i = 0; i < explicit_count; ++i)
    out.front.push_back(apply_subst(inner.lookup(i), outer));
  out.shift = (k_out > n_in) ? n_out : n_in - k_out + n_out;
  return out;
}

const DeclPtr* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &decls_[it->second];
}

Signature Signature::extended(DeclPtr d) const {
  if (contains(d->name))
    throw std::logic_error("signature already contains '" + d->name + "'");
  Signature s = *this;
  s.index_.emplace(d->name, s.decls_.size());
  s.decls_.push_back(std::move(d));
  return s;
}

std::set<std::string> Signature::names() const {
  std::set<std::string> out;
  for (const auto& [name, _] : index_) out.insert(name);
  return out;
}

}  // namespace htt
