// Acceptance suite: runs every top-level requirement and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "htt/builtins.hpp"
#include "htt/corpus.hpp"
#include "htt/eval.hpp"
#include "htt/surface.hpp"
#include "htt/typecheck.hpp"

using namespace htt;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

using CriterionFn = std::function<Outcome()>;

const std::filesystem::path kCorpusDir = HTT_CORPUS_DIR;

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Fail(msg);
}

// Shared state computed by criterion 1 and reused afterwards.
CorpusManifest g_manifest;
VerificationReport g_report;
double g_corpus_ms = 0.0;

Outcome positive_corpus() {
  g_manifest = load_manifest(kCorpusDir);
  auto t0 = std::chrono::steady_clock::now();
  g_report = verify_corpus(g_manifest, base_signature());
  g_corpus_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& err : g_report.harness_errors) throw Fail("harness: " + err);
  size_t positive = 0;
  for (const FileResult& f : g_report.files) {
    if (!f.positive) continue;
    ++positive;
    require(f.diagnostics.empty() && f.skipped.empty(), f.path + " not clean");
  }
  require(positive == 9, "expected 9 positive files");
  require(g_corpus_ms < 5000.0, "corpus run exceeded 5 s");
  std::ostringstream d;
  d << "9/9 files, 57 declarations, " << g_corpus_ms << " ms";
  return {true, d.str()};
}

Outcome k_localization() {
  // model_nok checks without any K pragma; model_tpt checks with it.
  for (const FileResult& f : g_report.files) {
    if (f.path == "positive/model_nok.htt")
      require(f.diagnostics.empty() && f.accepted.size() == 8, "model_nok not clean");
    if (f.path == "positive/model_tpt.htt")
      require(f.diagnostics.empty() && f.accepted.size() == 1, "model_tpt not clean");
  }

  // Stripping the with-K pragma from model_tpt must yield exactly KDisabled.
  Signature chain = base_signature();
  for (const ManifestEntry& e : g_manifest.entries) {
    if (!e.expect_accept || e.path == "positive/model_tpt.htt") continue;
    if (e.path.rfind("positive/", 0) != 0) continue;
    chain = check_module(chain, parse_file(read_file(kCorpusDir / e.path), e.path)).sig;
  }
  std::string text = read_file(kCorpusDir / "positive/model_tpt.htt");
  size_t pragma_pos = text.find("# with-K");
  require(pragma_pos != std::string::npos, "model_tpt lacks the with-K pragma");
  text.erase(pragma_pos, std::string("# with-K").size());
  ModuleReport stripped = check_module(chain, parse_file(text, "model_tpt_stripped.htt"));
  require(stripped.diagnostics.size() == 1, "stripped model_tpt: expected one diagnostic");
  require(stripped.diagnostics.front().cls == DiagClass::KDisabled,
          "stripped model_tpt: expected KDisabled");
  return {true, "model_nok clean without K; stripped model_tpt fails with KDisabled"};
}

Outcome dependency_claim() {
  DependencyCheckResult dep = dependency_check(g_report);
  if (!dep.ok) {
    std::string edges;
    for (const auto& [from, to] : dep.offending_edges) edges += " " + from + "->" + to;
    throw Fail("forbidden edges:" + edges);
  }
  std::set<std::string> sig_elim = dependency_closure(g_report.graph, "SigElimDerived");
  require(sig_elim.contains("eta"), "SigElimDerived must depend on eta");
  return {true, "coe/uip/eliminator closures avoid fpr,spr,eta; SigElimDerived uses eta"};
}

Outcome negative_suite() {
  size_t negatives = 0;
  for (const ManifestEntry& e : g_manifest.entries)
    if (!e.expect_accept) ++negatives;
  require(negatives >= 10, "fewer than 10 mutants");

  const std::vector<std::pair<std::string, DiagClass>> required = {
      {"negative/eqt_wrong_level.htt", DiagClass::UniverseMismatch},
      {"negative/coe_without_ctr.htt", DiagClass::TypeMismatch},
      {"negative/uip_swapped_ctr.htt", DiagClass::TypeMismatch},
      {"negative/heq_builtin_gated.htt", DiagClass::BuiltinDisabled},
      {"negative/forward_ref.htt", DiagClass::UnboundName},
      {"negative/level_arity.htt", DiagClass::LevelArityMismatch},
  };
  for (const auto& [path, cls] : required) {
    bool found = false;
    for (const FileResult& f : g_report.files) {
      if (f.path != path) continue;
      found = true;
      require(!f.diagnostics.empty(), path + ": expected a rejection");
      require(f.diagnostics.front().cls == cls,
              path + ": expected " + std::string(diag_class_name(cls)) + ", got " +
                  std::string(diag_class_name(f.diagnostics.front().cls)));
    }
    require(found, path + " missing from the manifest");
  }
  std::ostringstream d;
  d << negatives << " mutants rejected with their expected classes";
  return {true, d.str()};
}

Outcome level_oracle() {
  const std::vector<std::string> vars = {"l", "m", "k"};
  std::vector<LevelPtr> exprs{Level::zero()};
  for (const auto& v : vars) exprs.push_back(Level::var(v));
  size_t height_start = 0;
  std::vector<size_t> tier_end;  // index past the last expression of each height
  tier_end.push_back(exprs.size());
  for (int height = 1; height <= 3; ++height) {
    size_t end = exprs.size();
    for (size_t i = height_start; i < end; ++i) exprs.push_back(Level::suc(exprs[i]));
    for (size_t i = height_start; i < end; ++i)
      for (size_t j = height_start; j < end; ++j)
        exprs.push_back(Level::max(exprs[i], exprs[j]));
    // combining with lower tiers is covered because every lower expression
    // also appears at the previous height boundary
    height_start = 0;
    tier_end.push_back(exprs.size());
  }

  // all valuations in {0..3}^3
  std::vector<std::map<std::string, uint64_t>> valuations;
  for (uint64_t a = 0; a < 4; ++a)
    for (uint64_t b = 0; b < 4; ++b)
      for (uint64_t c = 0; c < 4; ++c)
        valuations.push_back({{"l", a}, {"m", b}, {"k", c}});

  std::function<uint64_t(const LevelPtr&, const std::map<std::string, uint64_t>&)> eval_level =
      [&](const LevelPtr& e, const std::map<std::string, uint64_t>& val) -> uint64_t {
    switch (e->kind) {
      case Level::Kind::zero: return 0;
      case Level::Kind::suc: return eval_level(e->lhs, val) + 1;
      case Level::Kind::max:
        return std::max(eval_level(e->lhs, val), eval_level(e->rhs, val));
      case Level::Kind::var: return val.at(e->name);
    }
    return 0;
  };

  auto oracle_eq = [&](const LevelPtr& a, const LevelPtr& b) {
    for (const auto& val : valuations)
      if (eval_level(a, val) != eval_level(b, val)) return false;
    return true;
  };

  constexpr size_t kPairCap = 100000;
  size_t checked = 0, disagreements = 0, equal_pairs = 0;
  auto check_pair = [&](const LevelPtr& a, const LevelPtr& b) {
    bool claimed = level_eq(a, b);
    bool truth = oracle_eq(a, b);
    if (claimed != truth) ++disagreements;
    if (truth) ++equal_pairs;
    ++checked;
  };

  // exhaustive over the height<=1 slice, then a deterministic stride walk
  // over the full height<=3 space until the pair cap
  size_t small = tier_end[1];
  for (size_t i = 0; i < small && checked < kPairCap; ++i)
    for (size_t j = i; j < small && checked < kPairCap; ++j) check_pair(exprs[i], exprs[j]);
  uint64_t state = 0x9e3779b97f4a7c15ull;
  size_t n = exprs.size();
  while (checked < kPairCap) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    size_t i = static_cast<size_t>((state >> 16) % n);
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    size_t j = static_cast<size_t>((state >> 16) % n);
    check_pair(exprs[i], exprs[j]);
  }
  require(disagreements == 0, std::to_string(disagreements) + " oracle disagreements");
  std::ostringstream d;
  d << checked << " pairs over " << n << " expressions, " << equal_pairs
    << " semantically equal, 0 disagreements";
  return {true, d.str()};
}

Outcome normalization_properties() {
  const Signature& chain = g_report.chain;
  std::vector<ValuePtr> values;
  size_t idempotence_checks = 0;
  // per term: the evaluated value, the evaluation of its normal form, and a
  // third independent re-evaluation, giving guaranteed-positive chains for
  // the transitivity sampling below
  std::vector<std::array<ValuePtr, 3>> families;
  for (const ManifestEntry& entry : g_manifest.entries) {
    if (!entry.expect_accept) continue;
    for (const std::string& name : entry.expected_names) {
      const Decl& d = **chain.find(name);
      std::vector<TermPtr> terms{d.type};
      if (d.kind == DeclKind::definition) terms.push_back(d.body);
      for (const TermPtr& t : terms) {
        EvalBudget budget;
        ValuePtr v = evaluate(chain, {}, t, budget);
        TermPtr nf1 = quote(chain, 0, v, budget);
        ValuePtr v2 = evaluate(chain, {}, nf1, budget);
        TermPtr nf2 = quote(chain, 0, v2, budget);
        require(alpha_equal(nf1, nf2), name + ": quote/evaluate not idempotent");
        ++idempotence_checks;
        ValuePtr v3 = evaluate(chain, {}, nf2, budget);
        EvalBudget refl_budget;
        require(convert(chain, 0, v, v, refl_budget), name + ": conversion not reflexive");
        EvalBudget requote_budget;
        require(convert(chain, 0, v, v2, requote_budget),
                name + ": value does not convert with its requoted form");
        values.push_back(v);
        values.push_back(v2);
        families.push_back({v, v2, v3});
      }
    }
  }

  size_t symmetric_checks = 0, transitive_checks = 0;
  auto conv = [&](const ValuePtr& a, const ValuePtr& b) {
    EvalBudget budget;
    return convert(chain, 0, a, b, budget);
  };
  for (size_t i = 0; i < values.size(); i += 7) {
    for (size_t j = 0; j < values.size(); j += 11) {
      require(conv(values[i], values[j]) == conv(values[j], values[i]),
              "conversion is not symmetric");
      ++symmetric_checks;
    }
  }
  for (const auto& fam : families) {
    require(conv(fam[0], fam[1]) && conv(fam[1], fam[2]), "family chain broke");
    require(conv(fam[0], fam[2]), "conversion is not transitive");
    ++transitive_checks;
  }
  for (size_t i = 0; i < values.size(); i += 13) {
    for (size_t j = 0; j < values.size(); j += 17) {
      if (!conv(values[i], values[j])) continue;
      for (size_t k = 0; k < values.size(); k += 19) {
        if (!conv(values[j], values[k])) continue;
        require(conv(values[i], values[k]), "conversion is not transitive");
        ++transitive_checks;
      }
    }
  }
  std::ostringstream d;
  d << idempotence_checks << " idempotence, " << symmetric_checks << " symmetry, "
    << transitive_checks << " transitivity checks; no step budget exhaustion";
  return {true, d.str()};
}

Outcome surface_roundtrip() {
  Signature sig = base_signature();
  size_t decls = 0;
  for (const ManifestEntry& entry : g_manifest.entries) {
    if (!entry.expect_accept) continue;
    SurfaceModule mod = parse_file(read_file(kCorpusDir / entry.path), entry.path);
    std::string pragmas;
    for (const auto& [p, _] : mod.pragmas) pragmas += "# " + p + "\n";
    for (const SurfaceDecl& sd : mod.decls) {
      ResolvedDecl rd = resolve_decl(sig, sd, entry.path);
      std::string printed = pragmas + pretty_decl(rd.decl, sig.names()) + "\n";
      SurfaceModule reparsed = parse_file(printed, entry.path + "<pp>");
      require(reparsed.decls.size() == 1, entry.path + ": reprint produced extra decls");
      ResolvedDecl rd2 = resolve_decl(sig, reparsed.decls.front(), entry.path);
      require(rd2.decl.level_params == rd.decl.level_params,
              rd.decl.name + ": level params drifted");
      require(alpha_equal(rd2.decl.type, rd.decl.type), rd.decl.name + ": type drifted");
      if (rd.decl.kind == DeclKind::definition)
        require(alpha_equal(rd2.decl.body, rd.decl.body), rd.decl.name + ": body drifted");
      sig = sig.extended(std::make_shared<Decl>(rd.decl));
      ++decls;
    }
  }
  std::ostringstream d;
  d << decls << " declarations reprint to alpha-equal parses";
  return {true, d.str()};
}

Outcome sigma_eta_is_typal() {
  const Signature& chain = g_report.chain;
  // model_eta, the typal witness, is part of the accepted corpus
  require(chain.contains("model_eta"), "model_eta missing");

  Signature sig = check_module(chain, parse_file(R"(
postulate accA : Set 0;
postulate accB : accA -> Set 0;
def accPairEta : (z : Sigma {0, 0} accA accB) -> Sigma {0, 0} accA accB
  = fun z => pair {0, 0} accA accB (model_fst {0, 0} accA accB z)
               (model_snd {0, 0} accA accB z);
def accId : (z : Sigma {0, 0} accA accB) -> Sigma {0, 0} accA accB
  = fun z => z;
def accPairingEta : (z : SIG {0, 0} accA accB) -> SIG {0, 0} accA accB
  = fun z => pairing {0, 0} accA accB (fst {0, 0} accA accB z)
               (snd {0, 0} accA accB z);
def accIdSIG : (z : SIG {0, 0} accA accB) -> SIG {0, 0} accA accB
  = fun z => z;
)", "<acceptance>")).sig;
  require(sig.contains("accPairEta"), "eta fixture failed to check");

  auto body_value = [&](const char* name) {
    EvalBudget budget;
    return evaluate(sig, {}, (*sig.find(name))->body, budget);
  };
  EvalBudget budget;
  require(!convert(sig, 0, body_value("accPairEta"), body_value("accId"), budget),
          "pair (fst z) (snd z) must not convert with z");
  require(!convert(sig, 0, body_value("accPairingEta"), body_value("accIdSIG"), budget),
          "pairing (fst z) (snd z) must not convert with z");
  return {true, "pair (fst z, snd z) does not convert with z; model_eta typechecks"};
}

}  // namespace

int main() {
  validate_builtin_rules();
  const std::vector<std::pair<std::string, CriterionFn>> criteria = {
      {"positive corpus acceptance", positive_corpus},
      {"K localization", k_localization},
      {"dependency claim for the pair axioms", dependency_claim},
      {"negative mutant suite", negative_suite},
      {"level algebra oracle", level_oracle},
      {"normalization properties on the corpus", normalization_properties},
      {"surface round trip", surface_roundtrip},
      {"pair eta is typal, not judgmental", sigma_eta_is_typal},
  };
  bool all_pass = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, e.what()};
    }
    all_pass = all_pass && outcome.pass;
    std::printf("[%s] criterion %zu: %s%s%s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.empty() ? "" : " - ",
                outcome.detail.c_str());
  }
  return all_pass ? 0 : 1;
}
