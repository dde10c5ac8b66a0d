#include "htt/diagnostics.hpp"

#include <array>
#include <utility>

namespace htt {

namespace {

constexpr std::array<std::pair<DiagClass, std::string_view>, 11> kNames = {{
    {DiagClass::TypeMismatch, "TypeMismatch"},
    {DiagClass::UnboundName, "UnboundName"},
    {DiagClass::UnboundLevelVar, "UnboundLevelVar"},
    {DiagClass::LevelArityMismatch, "LevelArityMismatch"},
    {DiagClass::UniverseMismatch, "UniverseMismatch"},
    {DiagClass::KDisabled, "KDisabled"},
    {DiagClass::BuiltinDisabled, "BuiltinDisabled"},
    {DiagClass::NotAFunction, "NotAFunction"},
    {DiagClass::StepBudgetExceeded, "StepBudgetExceeded"},
    {DiagClass::ParseError, "ParseError"},
    {DiagClass::DuplicateName, "DuplicateName"},
}};

}  // namespace

std::string_view diag_class_name(DiagClass c) {
  for (const auto& [cls, name] : kNames)
    if (cls == c) return name;
  return "Unknown";
}

std::optional<DiagClass> diag_class_from_name(std::string_view name) {
  for (const auto& [cls, n] : kNames)
    if (n == name) return cls;
  return std::nullopt;
}

}  // namespace htt
