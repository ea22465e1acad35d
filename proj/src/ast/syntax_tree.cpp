#include "transformcode/ast/syntax_tree.hpp"

#include <algorithm>
#include <cctype>

namespace tcode {

std::string_view language_name(Language lang) noexcept {
  switch (lang) {
    case Language::Java: return "java";
    case Language::C: return "c";
  }
  return "unknown";
}

std::optional<Language> language_from_name(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "java") return Language::Java;
  if (lower == "c") return Language::C;
  return std::nullopt;
}

SyntaxTree::SyntaxTree(Language lang, std::string source,
                       std::vector<SyntaxNode> nodes, NodeRef root,
                       bool had_errors)
    : language_(lang),
      source_(std::move(source)),
      nodes_(std::move(nodes)),
      root_(root),
      had_errors_(had_errors) {}

std::string_view SyntaxTree::text(NodeRef ref) const {
  const auto& span = nodes_.at(ref).span;
  return std::string_view(source_).substr(span.start, span.size());
}

std::vector<NodeRef> SyntaxTree::named_children(NodeRef ref) const {
  std::vector<NodeRef> out;
  for (NodeRef c : nodes_.at(ref).children)
    if (nodes_[c].named) out.push_back(c);
  return out;
}

NodeRef SyntaxTree::child_by_field(NodeRef ref, std::string_view field) const {
  for (NodeRef c : nodes_.at(ref).children)
    if (nodes_[c].field == field) return c;
  return kNoNode;
}

std::vector<NodeRef> SyntaxTree::children_by_field(NodeRef ref,
                                                   std::string_view field) const {
  std::vector<NodeRef> out;
  for (NodeRef c : nodes_.at(ref).children)
    if (nodes_[c].field == field) out.push_back(c);
  return out;
}

NodeRef SyntaxTree::child_of_kind(NodeRef ref, std::string_view kind) const {
  for (NodeRef c : nodes_.at(ref).children)
    if (nodes_[c].kind == kind) return c;
  return kNoNode;
}

bool SyntaxTree::is_ancestor(NodeRef ancestor, NodeRef ref) const {
  for (NodeRef cur = ref; cur != kNoNode; cur = nodes_.at(cur).parent)
    if (cur == ancestor) return true;
  return false;
}

std::vector<NodeRef> SyntaxTree::find_all(std::string_view kind) const {
  std::vector<NodeRef> out;
  if (root_ == kNoNode) return out;
  preorder(root_, [&](NodeRef n) {
    if (nodes_[n].kind == kind) out.push_back(n);
    return true;
  });
  return out;
}

std::string SyntaxTree::to_sexp(NodeRef ref) const {
  const auto& n = nodes_.at(ref);
  std::string out = "(";
  if (!n.field.empty()) out += n.field + ": ";
  out += n.kind;
  for (NodeRef c : n.children) {
    if (!nodes_[c].named) continue;
    out += ' ';
    out += to_sexp(c);
  }
  out += ')';
  return out;
}

}  // namespace tcode
