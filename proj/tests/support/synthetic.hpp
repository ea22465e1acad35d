#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "transformcode/io/dataset.hpp"

namespace tcode::test {

/// Variants of a few base programs, each labeled with its base's name.
struct VariantCorpus {
  std::vector<std::string> classes;
  /// variants[c] holds the snippets of class c.
  std::vector<std::vector<SourceSnippet>> variants;
};

/// Each variant is the base after 1 to 3 rounds of generate_anchor. Variants
/// of one class have distinct texts.
VariantCorpus make_variant_corpus(const std::filesystem::path& dir, std::size_t per_class,
                                  std::uint64_t seed);

/// All pairs among `snippets`; clone when the labels agree.
std::vector<PairRecord> all_pairs(const std::vector<SourceSnippet>& snippets);

std::string snippet_store_text(const std::vector<SourceSnippet>& snippets);
std::string pair_csv_text(const std::vector<PairRecord>& pairs);

}  // namespace tcode::test
