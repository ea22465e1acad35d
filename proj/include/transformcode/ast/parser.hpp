#pragma once

#include <span>
#include <string_view>

#include "transformcode/ast/syntax_tree.hpp"

extern "C" {
struct TSLanguage;
}

namespace tcode {

/// Compile-time grammar table entry.
struct GrammarEntry {
  Language language;
  const TSLanguage* (*grammar)();
};

std::span<const GrammarEntry> registered_grammars() noexcept;

/// Throws Error(UnsupportedLanguage) when no grammar is registered.
const TSLanguage* grammar_for(Language lang);

/// Parses `text` into a SyntaxTree spanning the whole input. Never throws on
/// malformed code; grammar recovery is reported through had_errors().
SyntaxTree parse_source(Language lang, std::string_view text);

inline SyntaxTree parse(const SourceSnippet& snippet) {
  return parse_source(snippet.language, snippet.text);
}

}  // namespace tcode
