#include "htt/corpus.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace htt {

namespace {

std::vector<std::string> split_list(const std::string& field) {
  std::vector<std::string> out;
  if (field == "-") return out;
  std::string cur;
  for (char c : field) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

CorpusManifest load_manifest(const std::filesystem::path& dir) {
  CorpusManifest manifest;
  manifest.root = dir;
  std::filesystem::path file = dir / "MANIFEST";
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string path, pragmas, outcome, names;
    if (!(row >> path)) continue;  // blank
    if (!(row >> pragmas >> outcome >> names))
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": expected 4 columns (path pragmas outcome names)");
    ManifestEntry entry;
    entry.path = path;
    entry.pragmas = split_list(pragmas);
    entry.expected_names = split_list(names);
    if (outcome == "accept") {
      entry.expect_accept = true;
    } else if (outcome.rfind("reject:", 0) == 0) {
      entry.expect_accept = false;
      auto cls = diag_class_from_name(outcome.substr(7));
      if (!cls)
        throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                 ": unknown diagnostic class '" + outcome.substr(7) + "'");
      entry.expected_class = *cls;
    } else {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": outcome must be 'accept' or 'reject:<Class>'");
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

VerificationReport verify_corpus(const CorpusManifest& manifest, const Signature& base,
                                 uint64_t step_budget) {
  VerificationReport report;
  report.chain = base;
  for (const ManifestEntry& entry : manifest.entries) {
    FileResult result;
    result.path = entry.path;
    result.positive = entry.expect_accept;
    auto t0 = std::chrono::steady_clock::now();

    std::optional<ModuleReport> mod_report;
    try {
      std::string text = read_file(manifest.root / entry.path);
      SurfaceModule mod = parse_file(text, entry.path);
      // The manifest records each file's pragmas; drift between the two is a
      // harness error rather than a checker diagnostic.
      std::vector<std::string> file_pragmas;
      for (const auto& [name, _] : mod.pragmas) file_pragmas.push_back(name);
      if (file_pragmas != entry.pragmas)
        report.harness_errors.push_back(entry.path + ": pragmas differ from MANIFEST");
      mod_report = check_module(report.chain, mod, step_budget);
    } catch (const CheckError& e) {
      result.diagnostics.push_back(e.diag);  // parse failure
    } catch (const std::exception& e) {
      report.harness_errors.push_back(entry.path + ": " + e.what());
    }

    if (mod_report) {
      result.accepted = mod_report->accepted;
      result.skipped = mod_report->skipped;
      result.diagnostics = mod_report->diagnostics;
      if (entry.expect_accept && result.diagnostics.empty() && result.skipped.empty()) {
        report.chain = mod_report->sig;  // extend the shared chain
        for (const auto& [name, refs] : mod_report->refs) report.graph[name] = refs;
      }
    }

    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

    if (entry.expect_accept) {
      if (!result.diagnostics.empty() || !result.skipped.empty())
        report.harness_errors.push_back(entry.path + ": expected acceptance, got " +
                                        std::to_string(result.diagnostics.size()) +
                                        " diagnostic(s)");
      else if (!entry.expected_names.empty() && result.accepted != entry.expected_names)
        report.harness_errors.push_back(entry.path + ": accepted names differ from MANIFEST");
    } else {
      if (result.diagnostics.empty()) {
        report.harness_errors.push_back(entry.path + ": expected rejection, got acceptance");
      } else if (result.diagnostics.front().cls != entry.expected_class) {
        report.harness_errors.push_back(
            entry.path + ": expected " + std::string(diag_class_name(entry.expected_class)) +
            ", got " + std::string(diag_class_name(result.diagnostics.front().cls)));
      }
    }
    report.files.push_back(std::move(result));
  }
  return report;
}

std::set<std::string> dependency_closure(
    const std::map<std::string, std::set<std::string>>& graph, const std::string& root) {
  std::set<std::string> seen;
  std::vector<std::string> work{root};
  while (!work.empty()) {
    std::string cur = work.back();
    work.pop_back();
    if (!seen.insert(cur).second) continue;
    auto it = graph.find(cur);
    if (it == graph.end()) continue;
    for (const auto& next : it->second) work.push_back(next);
  }
  return seen;
}

DependencyCheckResult dependency_check(const VerificationReport& report) {
  DependencyCheckResult out;
  for (const std::string& root : dependency_check_roots()) {
    std::set<std::string> closure = dependency_closure(report.graph, root);
    for (const std::string& member : closure) {
      auto it = report.graph.find(member);
      if (it == report.graph.end()) continue;
      for (const std::string& forbidden : dependency_check_forbidden()) {
        if (it->second.contains(forbidden)) {
          out.ok = false;
          out.offending_edges.emplace_back(member, forbidden);
        }
      }
    }
  }
  return out;
}

std::string VerificationReport::render(bool include_timings) const {
  std::ostringstream out;
  size_t pos_total = 0, pos_ok = 0, neg_total = 0, neg_ok = 0;
  for (const FileResult& f : files) {
    bool clean = f.diagnostics.empty() && f.skipped.empty();
    if (f.positive) {
      ++pos_total;
      if (clean) ++pos_ok;
    } else {
      ++neg_total;
      if (!f.diagnostics.empty()) ++neg_ok;
    }
    out << f.path << ": " << (f.positive ? "positive" : "negative") << ", accepted "
        << f.accepted.size() << ", diagnostics " << f.diagnostics.size();
    if (include_timings) out << ", " << f.wall_ms << " ms";
    out << "\n";
    for (const Diagnostic& d : f.diagnostics)
      out << "  " << diag_class_name(d.cls) << " " << d.file << ":" << d.span.line << ":"
          << d.span.col << ": " << d.message << "\n";
  }
  out << "positive: " << pos_ok << "/" << pos_total << " accepted, negative: " << neg_ok << "/"
      << neg_total << " rejected as expected\n";
  for (const auto& err : harness_errors) out << "harness: " << err << "\n";
  return out.str();
}

}  // namespace htt
