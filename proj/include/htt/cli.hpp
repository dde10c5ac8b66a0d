#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "htt/diagnostics.hpp"

namespace htt {

enum class RenderMode { human, json };
enum class ColorMode { automatic, always, never };

// Human mode: `file:line:col: CLASS: message` plus expected/actual lines.
// JSON mode: one object per line with the fixed field set
// {file, line, col, class, message, expected, actual}.
std::string render_diagnostic(const Diagnostic& d, RenderMode mode,
                              ColorMode color = ColorMode::never);

// Batch driver. Commands:
//   check <files...>        parse/resolve/typecheck in order
//   corpus <dir>            run the corpus manifest and dependency checks
//   normalize <file> <name> print a declaration's normal form and type
// Exit codes: 0 clean, 1 diagnostics reported, 2 usage/IO/harness failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htt
