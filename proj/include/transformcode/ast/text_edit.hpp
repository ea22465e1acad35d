#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "transformcode/ast/syntax_tree.hpp"

namespace tcode {

/// Replace the bytes of `span` with `replacement`. Zero-width spans insert.
struct TextEdit {
  ByteSpan span;
  std::string replacement;
};

/// Applies non-overlapping edits (any order) to `source`. Overlapping edits
/// are a programming error and throw std::logic_error.
std::string apply_edits(std::string_view source, std::vector<TextEdit> edits);

}  // namespace tcode
