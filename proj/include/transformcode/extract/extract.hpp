#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "transformcode/ast/syntax_tree.hpp"

namespace tcode {

/// Flattened critical-path tokens of one snippet: the encoder's input.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_id;
  bool normalized = false;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

enum class PruneAction {
  /// Node and its subtree emit nothing.
  Drop,
  /// Emit the node's text as one token with layout whitespace removed.
  Atom,
  /// Emit `keyword`, then the listed fields in the listed order.
  Reorder,
  /// Descend only into the listed fields, in the listed order.
  Fields,
  /// Emit the callee as one composite token, then descend the arguments.
  Call,
  /// Parameter: "<type> <name>" when the type is a scalar primitive and the
  /// declarator is a plain name; otherwise nothing.
  Signature,
};

struct PruneRule {
  PruneAction action = PruneAction::Drop;
  std::vector<std::string> fields;
  std::string keyword;
};

/// Per-language pruning data. Kinds without a rule are walked in source
/// order; leaves are emitted when they are named (identifiers, literals), a
/// kept keyword, or an operator.
struct PruningTable {
  std::map<std::string, PruneRule, std::less<>> rules;
  std::set<std::string, std::less<>> keywords;
  std::set<std::string, std::less<>> operators;
};

const PruningTable& pruning_table(Language lang);

/// Pruned depth-first token emission. Throws Error(EmptyTree) when the tree
/// holds no statement.
TokenSequence extract_path(const SyntaxTree& tree, std::string source_id = {},
                           bool normalized = false);

}  // namespace tcode
