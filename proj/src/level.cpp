#include "htt/level.hpp"

namespace htt {

LevelPtr Level::zero() {
  static const LevelPtr z = std::make_shared<Level>(Level{Kind::zero, nullptr, nullptr, {}});
  return z;
}

LevelPtr Level::suc(LevelPtr l) {
  return std::make_shared<Level>(Level{Kind::suc, std::move(l), nullptr, {}});
}

LevelPtr Level::max(LevelPtr a, LevelPtr b) {
  return std::make_shared<Level>(Level{Kind::max, std::move(a), std::move(b), {}});
}

LevelPtr Level::var(std::string name) {
  return std::make_shared<Level>(Level{Kind::var, nullptr, nullptr, std::move(name)});
}

LevelPtr Level::constant(uint64_t n) {
  LevelPtr l = zero();
  for (uint64_t i = 0; i < n; ++i) l = suc(l);
  return l;
}

bool level_structural_eq(const LevelPtr& a, const LevelPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Level::Kind::zero: return true;
    case Level::Kind::suc: return level_structural_eq(a->lhs, b->lhs);
    case Level::Kind::max:
      return level_structural_eq(a->lhs, b->lhs) && level_structural_eq(a->rhs, b->rhs);
    case Level::Kind::var: return a->name == b->name;
  }
  return false;
}

LevelNF nf_suc(LevelNF nf) {
  nf.base += 1;
  for (auto& [_, off] : nf.atoms) off += 1;
  return nf;
}

LevelNF nf_max(LevelNF a, LevelNF b) {
  a.base = std::max(a.base, b.base);
  for (const auto& [x, off] : b.atoms) {
    auto it = a.atoms.find(x);
    if (it == a.atoms.end())
      a.atoms.emplace(x, off);
    else
      it->second = std::max(it->second, off);
  }
  return a;
}

LevelNF nf_constant(uint64_t n) { return LevelNF{n, {}}; }

LevelNF level_normalize(const LevelPtr& e) {
  switch (e->kind) {
    case Level::Kind::zero: return LevelNF{};
    case Level::Kind::suc: return nf_suc(level_normalize(e->lhs));
    case Level::Kind::max: return nf_max(level_normalize(e->lhs), level_normalize(e->rhs));
    case Level::Kind::var: return LevelNF{0, {{e->name, 0}}};
  }
  return LevelNF{};
}

LevelPtr level_readback(const LevelNF& nf) {
  uint64_t max_off = 0;
  for (const auto& [_, off] : nf.atoms) max_off = std::max(max_off, off);
  LevelPtr acc;
  if (nf.atoms.empty() || nf.base > max_off) acc = Level::constant(nf.base);
  for (const auto& [x, off] : nf.atoms) {
    LevelPtr atom = Level::var(x);
    for (uint64_t i = 0; i < off; ++i) atom = Level::suc(atom);
    acc = acc ? Level::max(acc, atom) : atom;
  }
  return acc;
}

bool level_eq(const LevelPtr& a, const LevelPtr& b) {
  return level_normalize(a) == level_normalize(b);
}

LevelPtr level_instantiate(const LevelPtr& e,
                           const std::map<std::string, LevelPtr>& subst) {
  switch (e->kind) {
    case Level::Kind::zero: return e;
    case Level::Kind::suc: return Level::suc(level_instantiate(e->lhs, subst));
    case Level::Kind::max:
      return Level::max(level_instantiate(e->lhs, subst),
                        level_instantiate(e->rhs, subst));
    case Level::Kind::var: {
      auto it = subst.find(e->name);
      if (it == subst.end()) throw UnboundLevelVarError(e->name);
      return it->second;
    }
  }
  return e;
}

void level_vars(const LevelPtr& e, std::set<std::string>& out) {
  switch (e->kind) {
    case Level::Kind::zero: return;
    case Level::Kind::suc: level_vars(e->lhs, out); return;
    case Level::Kind::max:
      level_vars(e->lhs, out);
      level_vars(e->rhs, out);
      return;
    case Level::Kind::var: out.insert(e->name); return;
  }
}

namespace {

// Closed suc-towers print as numerals.
bool closed_constant(const LevelPtr& e, uint64_t& n) {
  if (e->kind == Level::Kind::zero) {
    n = 0;
    return true;
  }
  if (e->kind == Level::Kind::suc) {
    uint64_t m = 0;
    if (!closed_constant(e->lhs, m)) return false;
    n = m + 1;
    return true;
  }
  return false;
}

std::string print_level(const LevelPtr& e, bool atom_position) {
  uint64_t n = 0;
  if (closed_constant(e, n)) return std::to_string(n);
  switch (e->kind) {
    case Level::Kind::var: return e->name;
    case Level::Kind::suc: {
      std::string s = "lsuc " + print_level(e->lhs, true);
      return atom_position ? "(" + s + ")" : s;
    }
    case Level::Kind::max: {
      std::string s = "lmax " + print_level(e->lhs, true) + " " + print_level(e->rhs, true);
      return atom_position ? "(" + s + ")" : s;
    }
    default: return "0";
  }
}

}  // namespace

std::string level_to_string(const LevelPtr& e, bool atom_position) {
  return print_level(e, atom_position);
}

}  // namespace htt
