#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "transformcode/augment/augment.hpp"

namespace tcode {

struct PreprocessedSample {
  std::string id;
  Language language = Language::Java;
  std::vector<std::string> tokens_normalized;
  std::vector<std::string> tokens_anchor;
  /// Further anchors of the same snippet, drawn with other seeds.
  std::vector<std::vector<std::string>> extra_anchors;
  std::optional<std::string> label;

  friend bool operator==(const PreprocessedSample&, const PreprocessedSample&) = default;
};

struct SampleFailure {
  std::string id;
  std::string error;
  std::string message;
};

struct PreprocessResult {
  /// Input order, failures removed.
  std::vector<PreprocessedSample> samples;
  std::vector<SampleFailure> failures;
};

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads. The first
/// exception is rethrown after all threads finish.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// normalize, compose_anchor, then extract both sides. Each snippet is
/// seeded from cfg.rng_seed and its id, so output does not depend on the
/// worker count. `views` anchors are drawn per snippet; view v > 0 uses a
/// seed derived from cfg.rng_seed and v. A first anchor identical to its
/// source is reported as a failure.
PreprocessedSample preprocess_one(const SourceSnippet& snippet, const AugmentConfig& cfg,
                                  std::size_t views = 1);
PreprocessResult preprocess(const std::vector<SourceSnippet>& snippets, const AugmentConfig& cfg,
                            std::size_t workers = 1, std::size_t views = 1);

/// Versioned JSON-lines: a header object, then one sample per line.
inline constexpr int kSamplesVersion = 1;
std::string serialize_samples(const std::vector<PreprocessedSample>& samples);
std::vector<PreprocessedSample> parse_samples(const std::string& bytes, const std::string& origin = "samples");
void save_samples(const std::filesystem::path& path, const std::vector<PreprocessedSample>& samples);
std::vector<PreprocessedSample> load_samples(const std::filesystem::path& path);

}  // namespace tcode
