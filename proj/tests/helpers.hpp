#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "htt/builtins.hpp"
#include "htt/corpus.hpp"
#include "htt/typecheck.hpp"

namespace htt::test {

inline std::filesystem::path corpus_dir() { return HTT_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ModuleReport check_text(const Signature& sig, const std::string& text,
                               const std::string& path = "<test>") {
  return check_module(sig, parse_file(text, path));
}

// Checks and requires success; the first diagnostic becomes the exception
// message so failures are readable in test logs.
inline Signature must_check(const Signature& sig, const std::string& text,
                            const std::string& path = "<test>") {
  ModuleReport rep = check_text(sig, text, path);
  if (!rep.diagnostics.empty())
    throw std::runtime_error(path + ": " + rep.diagnostics.front().message);
  if (!rep.skipped.empty()) throw std::runtime_error(path + ": declarations skipped");
  return rep.sig;
}

// First diagnostic of a text expected to fail.
inline Diagnostic first_diagnostic(const Signature& sig, const std::string& text) {
  try {
    ModuleReport rep = check_text(sig, text);
    if (rep.diagnostics.empty()) throw std::runtime_error("expected a diagnostic");
    return rep.diagnostics.front();
  } catch (const CheckError& e) {
    return e.diag;  // parse failure
  }
}

// The positive corpus chain (base builtins + all positive files).
inline const VerificationReport& corpus_report() {
  static const VerificationReport report = [] {
    VerificationReport r = verify_corpus(load_manifest(corpus_dir()), base_signature());
    if (!r.harness_ok())
      throw std::runtime_error("corpus harness not clean: " + r.harness_errors.front());
    return r;
  }();
  return report;
}

}  // namespace htt::test
