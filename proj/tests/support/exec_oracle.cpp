#include "exec_oracle.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "transformcode/ast/normalize.hpp"

namespace tcode::test {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string base64_decode(std::string_view in) {
  static const std::string alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  unsigned buf = 0;
  int bits = 0;
  for (char c : in) {
    if (c == '=') break;
    auto pos = alphabet.find(c);
    if (pos == std::string::npos) continue;
    buf = (buf << 6) | static_cast<unsigned>(pos);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += static_cast<char>((buf >> bits) & 0xff);
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string class_name_of(const std::string& name) {
  return fs::path(name).stem().string();
}

}  // namespace

bool RunResult::same_behavior(const RunResult& other) const {
  if (status != other.status || out != other.out) return false;
  return status != "EXCEPTION" || detail == other.detail;
}

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "tcode-oracle-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

bool java_oracle_available() {
  return fs::exists(TC_JAVA_EXECUTABLE) && fs::exists(TC_HARNESS_SOURCE);
}

bool c_oracle_available() { return fs::exists(TC_C_COMPILER); }

std::vector<RunResult> run_java_batch(const std::vector<JavaJob>& jobs) {
  if (jobs.empty()) return {};
  if (!java_oracle_available()) throw std::runtime_error("java runtime not found");
  TempDir dir;
  std::map<std::string, fs::path> sources;
  std::ostringstream manifest;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto it = sources.find(jobs[i].source);
    if (it == sources.end()) {
      fs::path p = dir.path() / ("p" + std::to_string(sources.size()) + ".java");
      write_file(p, jobs[i].source);
      it = sources.emplace(jobs[i].source, p).first;
    }
    std::string args;
    for (const auto& a : jobs[i].args) args += (args.empty() ? "" : " ") + a;
    manifest << i << '\t' << it->second.string() << '\t' << jobs[i].class_name << '\t' << args
             << '\n';
  }
  fs::path jobs_file = dir.path() / "jobs.txt";
  fs::path results_file = dir.path() / "results.txt";
  write_file(jobs_file, manifest.str());
  std::string cmd = quote(TC_JAVA_EXECUTABLE) + " -Xss16m -cp " + quote(TC_JANINO_CLASSPATH) +
                    " org.codehaus.janino.SimpleCompiler " + quote(TC_HARNESS_SOURCE) +
                    " Harness " + quote(jobs_file.string()) + " " + quote(results_file.string()) +
                    " > " + quote((dir.path() / "harness.log").string()) + " 2>&1";
  if (std::system(cmd.c_str()) != 0)
    throw std::runtime_error("java harness failed: " + read_file(dir.path() / "harness.log"));

  std::vector<RunResult> results(jobs.size());
  std::istringstream in(read_file(results_file));
  std::string line;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto parts = split(line, '\t');
    if (parts.size() != 4) throw std::runtime_error("bad harness line: " + line);
    std::size_t id = std::stoul(parts[0]);
    results.at(id) = {parts[1], base64_decode(parts[2]), base64_decode(parts[3])};
    ++seen;
  }
  if (seen != jobs.size()) throw std::runtime_error("harness returned too few results");
  return results;
}

std::vector<RunResult> run_c_program(const std::string& source,
                                     const std::vector<std::vector<std::string>>& inputs) {
  TempDir dir;
  fs::path src = dir.path() / "prog.c";
  fs::path exe = dir.path() / "prog";
  fs::path log = dir.path() / "cc.log";
  write_file(src, source);
  std::string cc = quote(TC_C_COMPILER) + " -std=gnu11 -O0 -w -o " + quote(exe.string()) + " " +
                   quote(src.string()) + " > " + quote(log.string()) + " 2>&1";
  if (std::system(cc.c_str()) != 0)
    return std::vector<RunResult>(inputs.size(), {"COMPILE_ERROR", "", read_file(log)});

  std::vector<RunResult> results;
  for (const auto& args : inputs) {
    fs::path out = dir.path() / "out.txt";
    std::string cmd = "timeout 10 " + quote(exe.string());
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " > " + quote(out.string()) + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::string status = code == 0 ? "OK" : code == 124 ? "TIMEOUT" : "EXIT " + std::to_string(code);
    results.push_back({status, read_file(out), ""});
  }
  return results;
}

std::vector<EquivalenceProgram> load_programs(const fs::path& dir, Language lang) {
  const std::string ext = lang == Language::Java ? ".java" : ".c";
  std::vector<EquivalenceProgram> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ext)
      out.push_back({entry.path().filename().string(), lang, read_file(entry.path())});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

const std::vector<std::vector<std::string>>& harness_inputs() {
  static const std::vector<std::vector<std::string>> inputs = {
      {"5", "3", "7"}, {"12", "4", "1"}, {"0", "9", "2"}, {"-6", "2", "15"}, {"20", "7", "4"}};
  return inputs;
}

EquivalenceReport run_equivalence(const std::vector<EquivalenceProgram>& programs,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::vector<std::vector<std::string>>& inputs,
                                  const AugmentConfig& base) {
  EquivalenceReport report;
  report.programs = programs.size();

  struct Variant {
    std::size_t program;
    std::string text;
    std::vector<std::uint64_t> seeds;
  };
  std::vector<Variant> variants;  // index 0.. of each program's originals first
  std::vector<std::size_t> original_index(programs.size());

  for (std::size_t p = 0; p < programs.size(); ++p) {
    const auto& prog = programs[p];
    SourceSnippet clean = strip_comments({prog.name, prog.language, prog.source, {}});
    original_index[p] = variants.size();
    variants.push_back({p, prog.source, {}});
    std::map<std::string, std::size_t> distinct;
    NormalizedSnippet n;
    n.text = clean.text;
    n.source_id = prog.name;
    n.language = prog.language;
    for (std::uint64_t seed : seeds) {
      AugmentConfig cfg = base;
      cfg.rng_seed = seed;
      cfg.language = prog.language;
      AnchorSnippet anchor = compose_anchor(n, cfg);
      ++report.anchors;
      if (anchor.is_identity()) ++report.identity_anchors;
      for (const auto& a : anchor.applied) ++report.applied[a.kind];
      auto it = distinct.find(anchor.text);
      if (it == distinct.end()) {
        it = distinct.emplace(anchor.text, variants.size()).first;
        variants.push_back({p, anchor.text, {}});
      }
      variants[it->second].seeds.push_back(seed);
    }
    report.distinct_anchors += distinct.size();
  }

  std::vector<std::vector<RunResult>> results(variants.size());
  std::vector<JavaJob> java_jobs;
  std::vector<std::pair<std::size_t, std::size_t>> java_slots;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    const auto& prog = programs[variants[v].program];
    if (prog.language == Language::Java) {
      results[v].resize(inputs.size());
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        java_jobs.push_back({variants[v].text, class_name_of(prog.name), inputs[i]});
        java_slots.emplace_back(v, i);
      }
    } else {
      results[v] = run_c_program(variants[v].text, inputs);
    }
  }
  auto java_results = run_java_batch(java_jobs);
  for (std::size_t k = 0; k < java_results.size(); ++k)
    results[java_slots[k].first][java_slots[k].second] = java_results[k];

  for (std::size_t v = 0; v < variants.size(); ++v) {
    std::size_t p = variants[v].program;
    const auto& expected = results[original_index[p]];
    bool is_original = v == original_index[p];
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (is_original) {
        if (expected[i].status == "COMPILE_ERROR" || expected[i].status == "TIMEOUT") {
          ++report.original_failures;
          report.failures.push_back(programs[p].name + ": original " + expected[i].status + " " +
                                    expected[i].detail);
        }
        continue;
      }
      report.runs += variants[v].seeds.size();
      if (!results[v][i].same_behavior(expected[i])) {
        report.mismatches += variants[v].seeds.size();
        std::ostringstream msg;
        msg << programs[p].name << " seed " << variants[v].seeds.front() << " input " << i << ": "
            << results[v][i].status << " [" << results[v][i].detail.substr(0, 300) << "] got '"
            << results[v][i].out.substr(0, 200) << "' expected '" << expected[i].out.substr(0, 200)
            << "'\n--- anchor ---\n"
            << variants[v].text;
        report.failures.push_back(msg.str());
        break;
      }
    }
  }
  return report;
}

}  // namespace tcode::test
