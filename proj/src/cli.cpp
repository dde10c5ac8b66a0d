#include "htt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "htt/builtins.hpp"
#include "htt/corpus.hpp"
#include "htt/eval.hpp"
#include "htt/surface.hpp"
#include "htt/typecheck.hpp"

namespace htt {

namespace {

bool use_color(ColorMode mode) {
  if (mode == ColorMode::always) return true;
  if (mode == ColorMode::never) return false;
  return isatty(1) != 0;
}

std::string read_file_or_fail(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

uint64_t default_step_budget() {
  if (const char* env = std::getenv("HTT_STEP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultStepBudget;
}

struct Output {
  std::ostream& out;
  RenderMode mode;
  ColorMode color;

  void diagnostic(const Diagnostic& d) { out << render_diagnostic(d, mode, color) << "\n"; }
  void line(const std::string& s) {
    if (mode == RenderMode::human) out << s << "\n";
  }
};

int cmd_check(const std::vector<std::string>& files, uint64_t budget, Output& output,
              std::ostream& err) {
  Signature sig = base_signature();
  size_t diag_count = 0;
  for (const std::string& path : files) {
    std::string text;
    try {
      text = read_file_or_fail(path);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    try {
      SurfaceModule mod = parse_file(text, path);
      ModuleReport report = check_module(sig, mod, budget);
      sig = report.sig;
      for (const Diagnostic& d : report.diagnostics) output.diagnostic(d);
      diag_count += report.diagnostics.size();
      output.line(path + ": " + std::to_string(report.accepted.size()) +
                  " declaration(s) accepted" +
                  (report.skipped.empty()
                       ? ""
                       : ", " + std::to_string(report.skipped.size()) + " skipped"));
    } catch (const CheckError& e) {
      output.diagnostic(e.diag);
      ++diag_count;
    }
  }
  return diag_count == 0 ? 0 : 1;
}

int cmd_corpus(const std::string& dir, uint64_t budget, Output& output, std::ostream& err) {
  CorpusManifest manifest;
  try {
    manifest = load_manifest(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  VerificationReport report = verify_corpus(manifest, base_signature(), budget);
  if (output.mode == RenderMode::json) {
    for (const FileResult& f : report.files)
      for (const Diagnostic& d : f.diagnostics) output.diagnostic(d);
  }
  output.line(report.render());
  DependencyCheckResult dep = dependency_check(report);
  if (dep.ok) {
    output.line("dependency check: ok (fpr/spr/eta unused by the coercion developments)");
  } else {
    for (const auto& [from, to] : dep.offending_edges)
      err << "dependency check: forbidden edge " << from << " -> " << to << "\n";
  }
  if (!report.harness_ok()) {
    for (const auto& e : report.harness_errors) err << "harness: " << e << "\n";
    return 2;
  }
  return dep.ok ? 0 : 2;
}

int cmd_normalize(const std::string& path, const std::string& name, uint64_t budget,
                  Output& output, std::ostream& err) {
  std::string text;
  try {
    text = read_file_or_fail(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    SurfaceModule mod = parse_file(text, path);
    ModuleReport report = check_module(base_signature(), mod, budget);
    for (const Diagnostic& d : report.diagnostics) output.diagnostic(d);
    if (!report.diagnostics.empty()) return 1;
    const DeclPtr* found = report.sig.find(name);
    if (!found || !std::count(report.accepted.begin(), report.accepted.end(), name)) {
      err << "error: no declaration named '" << name << "' in " << path << "\n";
      return 2;
    }
    const Decl& d = **found;
    std::set<std::string> globals = report.sig.names();
    std::string params;
    if (!d.level_params.empty()) {
      params = " [";
      for (size_t i = 0; i < d.level_params.size(); ++i)
        params += (i ? " " : "") + d.level_params[i];
      params += "]";
    }
    output.line(d.name + params + " : " +
                pretty_term(quote_normal_form(report.sig, d.type), globals));
    if (d.kind == DeclKind::definition)
      output.line(d.name + params + " = " +
                  pretty_term(quote_normal_form(report.sig, d.body), globals));
    return 0;
  } catch (const CheckError& e) {
    output.diagnostic(e.diag);
    return 1;
  }
}

}  // namespace

std::string render_diagnostic(const Diagnostic& d, RenderMode mode, ColorMode color) {
  if (mode == RenderMode::json) {
    nlohmann::json j;
    j["file"] = d.file;
    j["line"] = d.span.line;
    j["col"] = d.span.col;
    j["class"] = std::string(diag_class_name(d.cls));
    j["message"] = d.message;
    j["expected"] = d.expected ? nlohmann::json(*d.expected) : nlohmann::json(nullptr);
    j["actual"] = d.actual ? nlohmann::json(*d.actual) : nlohmann::json(nullptr);
    return j.dump();
  }
  std::ostringstream out;
  bool colored = use_color(color);
  out << d.file << ":" << d.span.line << ":" << d.span.col << ": ";
  if (colored) out << "\x1b[31m";
  out << diag_class_name(d.cls);
  if (colored) out << "\x1b[0m";
  out << ": " << d.message;
  if (d.expected) out << "\n  expected: " << *d.expected;
  if (d.actual) out << "\n  actual:   " << *d.actual;
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"htt - a small dependent type checker with a verified proof corpus"};
  app.require_subcommand(1);

  bool json = false;
  uint64_t budget = default_step_budget();
  std::string color = "auto";
  app.add_flag("--json", json, "emit one JSON object per diagnostic");
  app.add_option("--step-budget", budget, "reduction steps allowed per conversion query");
  app.add_option("--color", color, "colorize output: auto|always|never")
      ->check(CLI::IsMember({"auto", "always", "never"}));

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "typecheck .htt files in order");
  check->add_option("files", files, "input files")->required();

  std::string corpus_dir;
  auto* corpus = app.add_subcommand("corpus", "verify a corpus directory against its MANIFEST");
  corpus->add_option("dir", corpus_dir, "corpus directory")->required();

  std::string norm_file, norm_name;
  auto* normalize =
      app.add_subcommand("normalize", "print a declaration's normal form and type");
  normalize->add_option("file", norm_file, "input file")->required();
  normalize->add_option("name", norm_name, "declaration name")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  ColorMode color_mode = color == "always"  ? ColorMode::always
                         : color == "never" ? ColorMode::never
                                            : ColorMode::automatic;
  Output output{out, json ? RenderMode::json : RenderMode::human, color_mode};

  try {
    validate_builtin_rules();
    if (check->parsed()) return cmd_check(files, budget, output, err);
    if (corpus->parsed()) return cmd_corpus(corpus_dir, budget, output, err);
    if (normalize->parsed()) return cmd_normalize(norm_file, norm_name, budget, output, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace htt
