#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "htt/cli.hpp"

using namespace htt;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_path(const std::string& rel) {
  return (htt::test::corpus_dir() / rel).string();
}

}  // namespace

TEST_CASE("check accepts a clean file with exit 0") {
  RunResult r = run_cli({"check", corpus_path("positive/axioms_fig1.htt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("13 declaration(s) accepted") != std::string::npos);
}

TEST_CASE("check chains multiple files in argument order") {
  RunResult r = run_cli({"check", corpus_path("positive/axioms_fig1.htt"),
                         corpus_path("positive/reasoning_fig2.htt"),
                         corpus_path("positive/coe_lemma21.htt")});
  CHECK(r.code == 0);
}

TEST_CASE("check reports diagnostics with exit 1") {
  RunResult r = run_cli({"check", corpus_path("positive/axioms_fig1.htt"),
                         corpus_path("negative/eqt_wrong_level.htt")});
  CHECK(r.code == 1);
  CHECK(r.out.find("UniverseMismatch") != std::string::npos);
}

TEST_CASE("missing input files are usage failures") {
  RunResult r = run_cli({"check", "does_not_exist.htt"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot read") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"normalize", "only_one_arg.htt"}).code == 2);
}

TEST_CASE("corpus command prints the summary line and exits 0") {
  RunResult r = run_cli({"corpus", htt::test::corpus_dir().string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("positive: 9/9 accepted, negative: 12/12 rejected as expected") !=
        std::string::npos);
  CHECK(r.out.find("dependency check: ok") != std::string::npos);
}

TEST_CASE("normalize prints a normal form and its type") {
  RunResult r = run_cli({"normalize", corpus_path("positive/axioms_fig1.htt"), "EQ"});
  CHECK(r.code == 0);
  CHECK(r.out.find("EQ [l] : (A : Set l) -> A -> A -> Set l") != std::string::npos);
  CHECK(r.out.find("EQ [l] = fun A x y => HEQ {l} A A x y") != std::string::npos);

  RunResult missing =
      run_cli({"normalize", corpus_path("positive/axioms_fig1.htt"), "nonexistent"});
  CHECK(missing.code == 2);
}

TEST_CASE("json mode emits one parseable object per diagnostic") {
  RunResult r = run_cli({"--json", "check", corpus_path("positive/axioms_fig1.htt"),
                         corpus_path("negative/uip_swapped_ctr.htt")});
  CHECK(r.code == 1);
  std::istringstream lines(r.out);
  std::string line;
  size_t count = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    for (const char* field : {"file", "line", "col", "class", "message", "expected", "actual"})
      CHECK(j.contains(field));
    CHECK(j["class"] == "TypeMismatch");
    ++count;
  }
  CHECK(count == 1);
}

TEST_CASE("human rendering is file:line:col: CLASS: message") {
  Diagnostic d;
  d.cls = DiagClass::KDisabled;
  d.file = "f.htt";
  d.span = {3, 7};
  d.message = "built-in 'JP' carries Axiom K and needs the with-K pragma to be enabled";
  std::string text = render_diagnostic(d, RenderMode::human);
  CHECK(text == "f.htt:3:7: KDisabled: built-in 'JP' carries Axiom K and needs the with-K "
                "pragma to be enabled");
  CHECK(text.find("with-K") != std::string::npos);

  d.expected = "Set 1";
  d.actual = "Set 0";
  std::string with_terms = render_diagnostic(d, RenderMode::human);
  CHECK(with_terms.find("expected: Set 1") != std::string::npos);
  CHECK(with_terms.find("actual:   Set 0") != std::string::npos);
}

TEST_CASE("the step budget flag reaches the checker") {
  RunResult r =
      run_cli({"--step-budget", "5", "check", corpus_path("positive/axioms_fig1.htt")});
  CHECK(r.code == 1);
  CHECK(r.out.find("StepBudgetExceeded") != std::string::npos);
}

TEST_CASE("the step budget environment variable is honored") {
  setenv("HTT_STEP_BUDGET", "5", 1);
  RunResult r = run_cli({"check", corpus_path("positive/axioms_fig1.htt")});
  unsetenv("HTT_STEP_BUDGET");
  CHECK(r.code == 1);
  CHECK(r.out.find("StepBudgetExceeded") != std::string::npos);
}

TEST_CASE("color mode wraps the class in ANSI escapes") {
  Diagnostic d;
  d.cls = DiagClass::ParseError;
  d.file = "f.htt";
  d.span = {1, 2};
  d.message = "m";
  std::string colored = render_diagnostic(d, RenderMode::human, ColorMode::always);
  CHECK(colored.find("\x1b[31mParseError\x1b[0m") != std::string::npos);
  std::string plain = render_diagnostic(d, RenderMode::human, ColorMode::never);
  CHECK(plain.find("\x1b") == std::string::npos);
}
