#pragma once

#include <set>
#include <string>
#include <string_view>

#include "transformcode/ast/syntax_tree.hpp"

namespace tcode {

/// Node-kind vocabulary of one grammar, so the passes above the parser can be
/// written once for every registered language.
struct GrammarProfile {
  Language language;
  std::set<std::string, std::less<>> comment_kinds;
  std::set<std::string, std::less<>> block_kinds;
  std::set<std::string, std::less<>> declaration_kinds;
  std::set<std::string, std::less<>> statement_kinds;
  std::set<std::string, std::less<>> identifier_kinds;
  std::set<std::string, std::less<>> literal_kinds;
  std::set<std::string, std::less<>> call_kinds;
  /// Kinds that may change control flow out of the enclosing statement.
  std::set<std::string, std::less<>> jump_kinds;
  /// Scalar primitive type kinds (for declarations eligible for rewriting).
  std::set<std::string, std::less<>> scalar_type_kinds;
  std::string for_init_field;
  std::string true_literal;
  bool has_exceptions = false;
};

const GrammarProfile& profile_for(Language lang);

inline bool is_kind_in(const std::set<std::string, std::less<>>& set,
                       std::string_view kind) {
  return set.find(kind) != set.end();
}

}  // namespace tcode
