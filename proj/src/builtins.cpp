#include "htt/builtins.hpp"

#include <mutex>
#include <stdexcept>

#include "htt/eval.hpp"
#include "htt/surface.hpp"
#include "htt/typecheck.hpp"

namespace htt {

namespace {

struct BuiltinSpec {
  const char* name;
  const char* level_params;  // space separated
  const char* type;          // surface syntax
  DeltaTag delta;
  bool gate_sigma, gate_heq, gate_k;
};

// Types are written in the surface syntax and resolved against the table
// built so far, so the table is self-describing and parses at startup.
constexpr BuiltinSpec kBuiltins[] = {
    {"Sigma", "l m", "(A : Set l) -> (A -> Set m) -> Set (lmax l m)", DeltaTag::none, true,
     false, false},
    {"pair", "l m",
     "(A : Set l) -> (B : A -> Set m) -> (x : A) -> B x -> Sigma {l, m} A B", DeltaTag::none,
     true, false, false},
    {"SigmaElim", "l m n",
     "(A : Set l) -> (B : A -> Set m) -> (C : Sigma {l, m} A B -> Set n) -> "
     "((x : A) -> (y : B x) -> C (pair {l, m} A B x y)) -> (z : Sigma {l, m} A B) -> C z",
     DeltaTag::sigma_elim, true, false, false},
    {"HEq", "l", "(A : Set l) -> (B : Set l) -> A -> B -> Set l", DeltaTag::none, false, true,
     false},
    {"hrefl", "l", "(A : Set l) -> (x : A) -> HEq {l} A A x x", DeltaTag::none, false, true,
     false},
    {"HEqElim", "l m",
     "(A : Set l) -> (x : A) -> (P : (B : Set l) -> (y : B) -> HEq {l} A B x y -> Set m) -> "
     "P A x (hrefl {l} A x) -> (B : Set l) -> (y : B) -> (e : HEq {l} A B x y) -> P B y e",
     DeltaTag::heq_elim, false, true, false},
    {"JP", "l m",
     "(A : Set l) -> (x : A) -> (P : (y : A) -> HEq {l} A A x y -> Set m) -> "
     "P x (hrefl {l} A x) -> (y : A) -> (e : HEq {l} A A x y) -> P y e",
     DeltaTag::jp, false, true, true},
};

std::vector<std::string> split_words(const char* s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char* p = s;; ++p) {
    if (*p == ' ' || *p == '\0') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (*p == '\0') break;
    } else {
      cur.push_back(*p);
    }
  }
  return out;
}

std::vector<DeclPtr> build_table() {
  std::vector<DeclPtr> out;
  Signature sig;
  for (const BuiltinSpec& spec : kBuiltins) {
    std::string params;
    for (const auto& p : split_words(spec.level_params)) {
      params += params.empty() ? "" : " ";
      params += p;
    }
    std::string text = std::string("postulate ") + spec.name + " [" + params +
                       "] : " + spec.type + ";";
    SurfaceModule mod = parse_file(text, "<builtin>");
    ResolvedDecl rd = resolve_decl(sig, mod.decls.at(0), "<builtin>");
    Decl d = std::move(rd.decl);
    d.kind = DeclKind::builtin;
    d.delta = spec.delta;
    d.gate_sigma = spec.gate_sigma;
    d.gate_heq = spec.gate_heq;
    d.gate_k = spec.gate_k;
    DeclPtr ptr = std::make_shared<Decl>(std::move(d));
    out.push_back(ptr);
    sig = sig.extended(ptr);
  }
  return out;
}

// Each rule is stated as two definitions sharing a telescope and a result
// type: the eliminator applied to the constructor, and the rule's right-hand
// side. Both must typecheck, and their values must convert (the conversion
// exercises the delta step itself).
struct RuleCase {
  const char* name;
  const char* lhs;
  const char* rhs;
  bool needs_k;
};

constexpr RuleCase kRules[] = {
    {"SigmaElim",
     "def ruleLhs [l m n] : (A : Set l) -> (B : A -> Set m) -> "
     "(C : Sigma {l, m} A B -> Set n) -> "
     "(c : (x : A) -> (y : B x) -> C (pair {l, m} A B x y)) -> "
     "(x : A) -> (y : B x) -> C (pair {l, m} A B x y) "
     "= fun A B C c x y => SigmaElim {l, m, n} A B C c (pair {l, m} A B x y);",
     "def ruleRhs [l m n] : (A : Set l) -> (B : A -> Set m) -> "
     "(C : Sigma {l, m} A B -> Set n) -> "
     "(c : (x : A) -> (y : B x) -> C (pair {l, m} A B x y)) -> "
     "(x : A) -> (y : B x) -> C (pair {l, m} A B x y) "
     "= fun A B C c x y => c x y;",
     false},
    {"HEqElim",
     "def ruleLhs [l m] : (A : Set l) -> (x : A) -> "
     "(P : (B : Set l) -> (y : B) -> HEq {l} A B x y -> Set m) -> "
     "(p : P A x (hrefl {l} A x)) -> P A x (hrefl {l} A x) "
     "= fun A x P p => HEqElim {l, m} A x P p A x (hrefl {l} A x);",
     "def ruleRhs [l m] : (A : Set l) -> (x : A) -> "
     "(P : (B : Set l) -> (y : B) -> HEq {l} A B x y -> Set m) -> "
     "(p : P A x (hrefl {l} A x)) -> P A x (hrefl {l} A x) "
     "= fun A x P p => p;",
     false},
    {"JP",
     "def ruleLhs [l m] : (A : Set l) -> (x : A) -> "
     "(P : (y : A) -> HEq {l} A A x y -> Set m) -> "
     "(p : P x (hrefl {l} A x)) -> P x (hrefl {l} A x) "
     "= fun A x P p => JP {l, m} A x P p x (hrefl {l} A x);",
     "def ruleRhs [l m] : (A : Set l) -> (x : A) -> "
     "(P : (y : A) -> HEq {l} A A x y -> Set m) -> "
     "(p : P x (hrefl {l} A x)) -> P x (hrefl {l} A x) "
     "= fun A x P p => p;",
     true},
};

}  // namespace

std::vector<DeclPtr> builtin_table() { return build_table(); }

const Signature& base_signature() {
  static const Signature sig = [] {
    Signature s;
    for (auto& d : build_table()) s = s.extended(std::move(d));
    return s;
  }();
  return sig;
}

void validate_builtin_rules() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    const Signature& base = base_signature();
    CheckOptions opts;
    opts.with_k = true;

    // The built-in types themselves must be well-formed universes.
    for (const DeclPtr& d : base.decls()) {
      Checker checker(base, opts, d->level_params, kDefaultStepBudget, "<builtin>", {},
                      d->name);
      Ctx ctx;
      checker.infer_sort(ctx, d->type);
    }

    for (const RuleCase& rule : kRules) {
      SurfaceModule lhs_mod = parse_file(rule.lhs, "<builtin-rule>");
      SurfaceModule rhs_mod = parse_file(rule.rhs, "<builtin-rule>");
      ResolvedDecl lhs = resolve_decl(base, lhs_mod.decls.at(0), "<builtin-rule>");
      ResolvedDecl rhs = resolve_decl(base, rhs_mod.decls.at(0), "<builtin-rule>");
      check_decl(base, opts, lhs.decl);
      check_decl(base, opts, rhs.decl);
      if (!alpha_equal(quote_normal_form(base, lhs.decl.body),
                       quote_normal_form(base, rhs.decl.body)))
        throw std::logic_error(std::string("delta rule for ") + rule.name +
                               " does not reduce to its right-hand side");
    }
  });
}

}  // namespace htt
