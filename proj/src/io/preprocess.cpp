#include "transformcode/io/preprocess.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"
#include "transformcode/extract/extract.hpp"
#include "transformcode/io/dataset.hpp"
#include "transformcode/util/rng.hpp"

namespace tcode {

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

PreprocessedSample preprocess_one(const SourceSnippet& snippet, const AugmentConfig& cfg,
                                  std::size_t views) {
  if (views < 1) fail(ErrorCode::InvalidConfig, "at least one anchor view is required");
  NormalizedSnippet n = normalize(snippet);
  PreprocessedSample s;
  s.id = snippet.id;
  s.language = snippet.language;
  s.label = snippet.label;
  s.tokens_normalized = extract_path(parse(n.as_snippet()), snippet.id, true).tokens;
  for (std::size_t v = 0; v < views; ++v) {
    AugmentConfig c = cfg;
    c.language = snippet.language;
    if (v > 0) c.rng_seed = derive_seed(cfg.rng_seed, "view" + std::to_string(v));
    AnchorSnippet anchor = compose_anchor(n, c);
    if (v == 0 && anchor.is_identity())
      fail(ErrorCode::IdentityAnchor, "no transformation applies to " + snippet.id);
    SourceSnippet anchored{snippet.id, snippet.language, anchor.text, snippet.label};
    auto tokens = extract_path(parse(normalize(anchored).as_snippet()), snippet.id, true).tokens;
    if (v == 0) s.tokens_anchor = std::move(tokens);
    else s.extra_anchors.push_back(std::move(tokens));
  }
  return s;
}

PreprocessResult preprocess(const std::vector<SourceSnippet>& snippets, const AugmentConfig& cfg,
                            std::size_t workers, std::size_t views) {
  cfg.validate();
  std::vector<std::optional<PreprocessedSample>> slots(snippets.size());
  std::vector<std::optional<SampleFailure>> failures(snippets.size());
  parallel_for(snippets.size(), workers, [&](std::size_t i) {
    try {
      slots[i] = preprocess_one(snippets[i], cfg, views);
    } catch (const Error& e) {
      failures[i] = SampleFailure{snippets[i].id, std::string(error_code_name(e.code())), e.what()};
    }
  });
  PreprocessResult r;
  for (std::size_t i = 0; i < snippets.size(); ++i) {
    if (slots[i]) r.samples.push_back(std::move(*slots[i]));
    if (failures[i]) r.failures.push_back(std::move(*failures[i]));
  }
  return r;
}

std::string serialize_samples(const std::vector<PreprocessedSample>& samples) {
  std::string out;
  nlohmann::ordered_json header;
  header["format"] = "transformcode-samples";
  header["format_version"] = kSamplesVersion;
  header["count"] = samples.size();
  out += header.dump() + "\n";
  for (const auto& s : samples) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["language"] = language_name(s.language);
    if (s.label) j["label"] = *s.label;
    j["normalized"] = s.tokens_normalized;
    j["anchor"] = s.tokens_anchor;
    if (!s.extra_anchors.empty()) j["extra_anchors"] = s.extra_anchors;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<PreprocessedSample> parse_samples(const std::string& bytes, const std::string& origin) {
  std::istringstream in(bytes);
  std::string line;
  std::size_t n = 0;
  std::vector<PreprocessedSample> out;
  std::optional<std::size_t> count;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::MalformedRecord, origin + ":" + std::to_string(n) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      bad(std::string("invalid JSON: ") + e.what());
    }
    try {
      if (!count) {
        if (j.value("format", std::string()) != "transformcode-samples") bad("not a samples file");
        if (j.at("format_version").get<int>() != kSamplesVersion)
          fail(ErrorCode::UnsupportedVersion, origin + ": unsupported samples version");
        count = j.at("count").get<std::size_t>();
        continue;
      }
      PreprocessedSample s;
      s.id = j.at("id").get<std::string>();
      auto lang = language_from_name(j.at("language").get<std::string>());
      if (!lang) bad("unknown language");
      s.language = *lang;
      if (j.contains("label")) s.label = j.at("label").get<std::string>();
      s.tokens_normalized = j.at("normalized").get<std::vector<std::string>>();
      s.tokens_anchor = j.at("anchor").get<std::vector<std::string>>();
      if (j.contains("extra_anchors"))
        s.extra_anchors = j.at("extra_anchors").get<std::vector<std::vector<std::string>>>();
      if (s.tokens_normalized.empty() || s.tokens_anchor.empty()) bad("empty token list");
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      bad(e.what());
    }
  }
  if (!count) fail(ErrorCode::MalformedRecord, origin + ": missing header");
  if (*count != out.size()) fail(ErrorCode::MalformedRecord, origin + ": record count differs from header");
  return out;
}

void save_samples(const std::filesystem::path& path, const std::vector<PreprocessedSample>& samples) {
  write_file(path, serialize_samples(samples));
}

std::vector<PreprocessedSample> load_samples(const std::filesystem::path& path) {
  return parse_samples(read_file(path), path.string());
}

}  // namespace tcode
