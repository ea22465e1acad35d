#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "transformcode/ast/syntax_tree.hpp"

namespace tcode {

struct PairRecord {
  std::string id1, id2;
  bool clone = false;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

/// Snippet store: one JSON object per line,
/// {"id","language":"java"|"c","code","label"?,"format_version"?}.
/// Blank lines are skipped. Throws MalformedRecord naming the line.
std::vector<SourceSnippet> read_snippets(std::istream& in, const std::string& origin = "snippets");

/// CSV with header `id1,id2,label`; label is clone/non-clone, 1/0 or true/false.
std::vector<PairRecord> read_pairs(std::istream& in, const std::string& origin = "pairs");

struct Dataset {
  /// Training samples, unique by id, in first-appearance order.
  std::vector<SourceSnippet> snippets;
  std::vector<PairRecord> pairs;
  /// Snippets in the store before pair filtering.
  std::size_t store_size = 0;

  /// Index of an id in `snippets`, or -1.
  long find(const std::string& id) const;
};

/// Without pairs every stored snippet is a sample. With pairs the samples are
/// the distinct ids the pairs mention. Throws DanglingPairId for ids missing
/// from the store.
Dataset ingest(const std::filesystem::path& snippet_file,
               const std::optional<std::filesystem::path>& pair_file = std::nullopt);
Dataset ingest(std::vector<SourceSnippet> store, std::vector<PairRecord> pairs, bool use_pairs);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory, then renames.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace tcode
