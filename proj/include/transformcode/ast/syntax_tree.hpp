#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcode {

enum class Language { Java, C };

std::string_view language_name(Language lang) noexcept;
/// Accepts "java"/"c" in any letter case.
std::optional<Language> language_from_name(std::string_view name) noexcept;

struct SourceSnippet {
  std::string id;
  Language language = Language::Java;
  std::string text;
  std::optional<std::string> label;
};

using NodeRef = std::uint32_t;
inline constexpr NodeRef kNoNode = static_cast<NodeRef>(-1);

struct ByteSpan {
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  std::uint32_t size() const noexcept { return end - start; }
  bool contains(const ByteSpan& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct SyntaxNode {
  std::string kind;
  ByteSpan span;
  std::vector<NodeRef> children;
  NodeRef parent = kNoNode;
  /// Grammar field under which this node hangs off its parent ("" if none).
  std::string field;
  /// Set for leaves only.
  std::optional<std::string> leaf_text;
  bool named = false;
  bool error = false;
  bool missing = false;
};

/// Arena-backed, immutable parse tree. Owns a copy of the parsed source so
/// node text stays valid for the tree's lifetime.
class SyntaxTree {
 public:
  SyntaxTree() = default;
  SyntaxTree(Language lang, std::string source, std::vector<SyntaxNode> nodes,
             NodeRef root, bool had_errors);

  Language language() const noexcept { return language_; }
  const std::string& source() const noexcept { return source_; }
  NodeRef root() const noexcept { return root_; }
  bool had_errors() const noexcept { return had_errors_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  const SyntaxNode& node(NodeRef ref) const { return nodes_.at(ref); }
  const std::string& kind(NodeRef ref) const { return nodes_.at(ref).kind; }
  std::string_view text(NodeRef ref) const;
  const std::vector<NodeRef>& children(NodeRef ref) const {
    return nodes_.at(ref).children;
  }
  std::vector<NodeRef> named_children(NodeRef ref) const;
  NodeRef parent(NodeRef ref) const { return nodes_.at(ref).parent; }

  /// First child hanging off `field`, or kNoNode.
  NodeRef child_by_field(NodeRef ref, std::string_view field) const;
  std::vector<NodeRef> children_by_field(NodeRef ref,
                                         std::string_view field) const;
  /// First direct child of the given kind, or kNoNode.
  NodeRef child_of_kind(NodeRef ref, std::string_view kind) const;

  bool is_leaf(NodeRef ref) const { return nodes_.at(ref).children.empty(); }
  bool is_ancestor(NodeRef ancestor, NodeRef ref) const;

  /// Pre-order visit. The callback returns false to skip a node's subtree.
  template <class Visitor>
  void preorder(NodeRef start, Visitor&& visit) const {
    std::vector<NodeRef> stack{start};
    while (!stack.empty()) {
      NodeRef cur = stack.back();
      stack.pop_back();
      if (!visit(cur)) continue;
      const auto& kids = nodes_[cur].children;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
  }

  /// Nodes of the given kind in pre-order.
  std::vector<NodeRef> find_all(std::string_view kind) const;

  /// S-expression rendering with named nodes only; handy in test failures.
  std::string to_sexp(NodeRef ref) const;

 private:
  Language language_ = Language::Java;
  std::string source_;
  std::vector<SyntaxNode> nodes_;
  NodeRef root_ = kNoNode;
  bool had_errors_ = false;
};

}  // namespace tcode
