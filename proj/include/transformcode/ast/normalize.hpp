#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "transformcode/ast/syntax_tree.hpp"

namespace tcode {

/// Comment-free source with variables renamed to var1, var2, ...
///
/// rename_map lists (original, canonical) in canonical-index order, which is
/// the order of first occurrence in a pre-order walk of the comment-free tree.
struct NormalizedSnippet {
  std::string text;
  std::vector<std::pair<std::string, std::string>> rename_map;
  std::string source_id;
  Language language = Language::Java;
  std::optional<std::string> label;

  SourceSnippet as_snippet() const { return {source_id, language, text, label}; }
};

/// Removes line and block comments using the grammar's comment nodes, so
/// comment-like text inside string literals is left alone.
SourceSnippet strip_comments(const SourceSnippet& snippet);

NormalizedSnippet normalize(const SourceSnippet& snippet);

/// Canonical name for a 1-based index ("var" + index).
std::string canonical_name(std::size_t index);

/// Every identifier spelling present in the tree (all identifier kinds).
std::set<std::string> identifier_spellings(const SyntaxTree& tree);

}  // namespace tcode
