#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace htt {

struct Span {
  uint32_t line = 0;  // 1-based; 0 means "no location"
  uint32_t col = 0;

  bool empty() const { return line == 0; }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class DiagClass {
  TypeMismatch,
  UnboundName,
  UnboundLevelVar,
  LevelArityMismatch,
  UniverseMismatch,
  KDisabled,
  BuiltinDisabled,
  NotAFunction,
  StepBudgetExceeded,
  ParseError,
  DuplicateName,
};

std::string_view diag_class_name(DiagClass c);
std::optional<DiagClass> diag_class_from_name(std::string_view name);

struct Diagnostic {
  DiagClass cls = DiagClass::TypeMismatch;
  std::string file;
  Span span;
  std::string message;
  // Pretty-printed terms, present for mismatch-style diagnostics.
  std::optional<std::string> expected;
  std::optional<std::string> actual;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Exception wrapper used inside the checker and parser; drivers catch it and
// aggregate per declaration or per file.
struct CheckError {
  Diagnostic diag;
};

}  // namespace htt
