#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htt/typecheck.hpp"

namespace htt {

// One row of corpus/MANIFEST: path, pragmas, expected outcome, expected
// declaration names. Positive files chain onto a shared signature; negative
// files are mutants checked against that chain and must be rejected with a
// specific diagnostic class.
struct ManifestEntry {
  std::string path;  // relative to the corpus root
  std::vector<std::string> pragmas;
  bool expect_accept = true;
  DiagClass expected_class = DiagClass::TypeMismatch;  // rejects only
  std::vector<std::string> expected_names;             // accepts only
};

struct CorpusManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
};

// Reads <dir>/MANIFEST. Lines: `path  pragmas  outcome  names` with
// comma-separated lists, `-` for an empty list, outcome `accept` or
// `reject:<DiagClass>`. `#` starts a comment.
CorpusManifest load_manifest(const std::filesystem::path& dir);

struct FileResult {
  std::string path;
  bool positive = true;
  std::vector<std::string> accepted;
  std::vector<std::string> skipped;
  std::vector<Diagnostic> diagnostics;
  double wall_ms = 0.0;
};

struct VerificationReport {
  std::vector<FileResult> files;
  // Dependency graph over accepted declaration names (positive chain only).
  std::map<std::string, std::set<std::string>> graph;
  Signature chain;  // base signature extended by every positive file
  // Manifest violations: expected-accept rejected, expected-reject accepted
  // or rejected with the wrong class, name sets differing, pragma drift.
  std::vector<std::string> harness_errors;

  bool harness_ok() const { return harness_errors.empty(); }
  // Canonical rendering (stable across runs; timings excluded).
  std::string render(bool include_timings = false) const;
};

VerificationReport verify_corpus(const CorpusManifest& manifest, const Signature& base,
                                 uint64_t step_budget = kDefaultStepBudget);

// Transitive closure of `root` in the report's dependency graph (includes
// the root itself when present).
std::set<std::string> dependency_closure(const std::map<std::string, std::set<std::string>>& graph,
                                         const std::string& root);

struct DependencyCheckResult {
  bool ok = true;
  // (declaration inside an offending closure, forbidden name it references)
  std::vector<std::pair<std::string, std::string>> offending_edges;
};

// The corpus-level dependency claim: the coercion/UIP/eliminator derivations
// must not depend on the fpr/spr/eta axioms.
DependencyCheckResult dependency_check(const VerificationReport& report);

inline const std::vector<std::string>& dependency_check_roots() {
  static const std::vector<std::string> roots = {
      "coe",    "coeIsRegular", "uip",           "axiomK",         "axiomKComp",
      "EqElim", "EqComp",       "HEqElimDerived", "HEqCompDerived",
  };
  return roots;
}

inline const std::vector<std::string>& dependency_check_forbidden() {
  static const std::vector<std::string> names = {"fpr", "spr", "eta"};
  return names;
}

}  // namespace htt
