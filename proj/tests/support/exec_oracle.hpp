#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "transformcode/augment/augment.hpp"

namespace tcode::test {

/// Outcome of one program execution.
struct RunResult {
  /// OK, EXCEPTION, EXIT <code>, COMPILE_ERROR, TIMEOUT.
  std::string status;
  std::string out;
  /// Exception class or compiler message.
  std::string detail;

  /// Behavioral equality: status, stdout and exception class.
  bool same_behavior(const RunResult& other) const;
};

struct JavaJob {
  std::string source;
  std::string class_name;
  std::vector<std::string> args;
};

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

bool java_oracle_available();
bool c_oracle_available();

/// Compiles and runs every job inside one JVM.
std::vector<RunResult> run_java_batch(const std::vector<JavaJob>& jobs);

/// Compiles once, then runs each argument vector.
std::vector<RunResult> run_c_program(const std::string& source,
                                     const std::vector<std::vector<std::string>>& inputs);

struct EquivalenceProgram {
  std::string name;
  Language language = Language::Java;
  std::string source;
};

struct EquivalenceReport {
  std::size_t programs = 0;
  std::size_t anchors = 0;
  std::size_t distinct_anchors = 0;
  std::size_t identity_anchors = 0;
  std::size_t runs = 0;
  std::size_t mismatches = 0;
  std::size_t original_failures = 0;
  std::map<TransformKind, std::size_t> applied;
  std::vector<std::string> failures;

  bool passed() const { return mismatches == 0 && original_failures == 0 && failures.empty(); }
};

/// Loads every .java / .c file under `dir`.
std::vector<EquivalenceProgram> load_programs(const std::filesystem::path& dir, Language lang);

/// For each program and seed, builds an anchor from the comment-free source
/// and compares its behavior to the original on every input.
EquivalenceReport run_equivalence(const std::vector<EquivalenceProgram>& programs,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::vector<std::vector<std::string>>& inputs,
                                  const AugmentConfig& base = {});

/// The fixed argument vectors used by the equivalence suites.
const std::vector<std::vector<std::string>>& harness_inputs();

}  // namespace tcode::test
