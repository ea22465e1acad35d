#include "transformcode/ast/normalize.hpp"

#include <map>

#include "transformcode/ast/grammar_profile.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/ast/text_edit.hpp"

namespace tcode {
namespace {

using NameSet = std::set<std::string, std::less<>>;

bool is_identifier(const SyntaxTree& tree, NodeRef n) {
  return is_kind_in(profile_for(tree.language()).identifier_kinds, tree.kind(n));
}

// Follows a C declarator chain down to the declared identifier. Function
// declarators yield nothing: those name functions, not variables.
NodeRef c_declared_identifier(const SyntaxTree& tree, NodeRef decl) {
  while (decl != kNoNode) {
    const auto& kind = tree.kind(decl);
    if (kind == "identifier" || kind == "field_identifier") return decl;
    if (kind == "function_declarator") return kNoNode;
    if (kind == "parenthesized_declarator") {
      auto kids = tree.named_children(decl);
      decl = kids.empty() ? kNoNode : kids.front();
      continue;
    }
    decl = tree.child_by_field(decl, "declarator");
  }
  return kNoNode;
}

NodeRef single_root_definition(const SyntaxTree& tree, std::string_view kind) {
  NodeRef found = kNoNode;
  const auto& prof = profile_for(tree.language());
  for (NodeRef c : tree.named_children(tree.root())) {
    if (is_kind_in(prof.comment_kinds, tree.kind(c))) continue;
    if (tree.kind(c) == "preproc_include") continue;
    if (tree.kind(c) != kind || found != kNoNode) return kNoNode;
    found = c;
  }
  return found;
}

// Name of the method/function when the snippet root is exactly one.
std::string root_routine_name(const SyntaxTree& tree) {
  if (tree.language() == Language::Java) {
    NodeRef m = single_root_definition(tree, "method_declaration");
    if (m == kNoNode) return {};
    NodeRef name = tree.child_by_field(m, "name");
    return name == kNoNode ? std::string{} : std::string(tree.text(name));
  }
  NodeRef f = single_root_definition(tree, "function_definition");
  if (f == kNoNode) return {};
  NodeRef decl = tree.child_by_field(f, "declarator");
  while (decl != kNoNode && tree.kind(decl) != "function_declarator")
    decl = tree.child_by_field(decl, "declarator");
  if (decl == kNoNode) return {};
  NodeRef name = tree.child_by_field(decl, "declarator");
  return name == kNoNode ? std::string{} : std::string(tree.text(name));
}

NameSet eligible_java(const SyntaxTree& tree) {
  NameSet names;
  auto add = [&](NodeRef n) {
    if (n != kNoNode && tree.kind(n) == "identifier") names.emplace(tree.text(n));
  };
  tree.preorder(tree.root(), [&](NodeRef n) {
    const auto& kind = tree.kind(n);
    const auto& parent_kind = tree.parent(n) == kNoNode ? std::string{} : tree.kind(tree.parent(n));
    if (kind == "formal_parameter" || kind == "catch_formal_parameter" ||
        kind == "enhanced_for_statement") {
      add(tree.child_by_field(n, "name"));
    } else if (kind == "variable_declarator" &&
               (parent_kind == "local_variable_declaration" ||
                parent_kind == "field_declaration" || parent_kind == "spread_parameter")) {
      add(tree.child_by_field(n, "name"));
    } else if (kind == "field_access") {
      add(tree.child_by_field(n, "field"));
    } else if (kind == "lambda_expression") {
      NodeRef params = tree.child_by_field(n, "parameters");
      if (params != kNoNode) {
        if (tree.kind(params) == "identifier") add(params);
        for (NodeRef c : tree.named_children(params)) add(c);
      }
    }
    return kind != "import_declaration" && kind != "package_declaration";
  });
  return names;
}

NameSet eligible_c(const SyntaxTree& tree) {
  NameSet names;
  auto add = [&](NodeRef n) {
    if (n != kNoNode) names.emplace(tree.text(n));
  };
  tree.preorder(tree.root(), [&](NodeRef n) {
    const auto& kind = tree.kind(n);
    if (kind == "parameter_declaration") {
      add(c_declared_identifier(tree, tree.child_by_field(n, "declarator")));
    } else if (kind == "declaration") {
      for (NodeRef d : tree.children_by_field(n, "declarator"))
        add(c_declared_identifier(tree, d));
    } else if (kind == "field_expression") {
      add(tree.child_by_field(n, "field"));
    }
    return kind.rfind("preproc_", 0) != 0;
  });
  return names;
}

enum class Position { Variable, Routine, Protected };

// Classifies an identifier occurrence by its syntactic position.
Position classify(const SyntaxTree& tree, NodeRef n) {
  NodeRef parent = tree.parent(n);
  if (parent == kNoNode) return Position::Variable;
  const auto& pk = tree.kind(parent);
  const auto& field = tree.node(n).field;
  if (tree.language() == Language::Java) {
    if ((pk == "method_declaration" || pk == "method_invocation") && field == "name")
      return Position::Routine;
    if ((pk == "class_declaration" || pk == "interface_declaration" ||
         pk == "enum_declaration" || pk == "record_declaration" ||
         pk == "constructor_declaration") &&
        field == "name")
      return Position::Protected;
    if (pk == "labeled_statement" || pk == "break_statement" || pk == "continue_statement" ||
        pk == "scoped_identifier" || pk == "marker_annotation" || pk == "annotation")
      return Position::Protected;
    return Position::Variable;
  }
  if (pk == "function_declarator" && field == "declarator") return Position::Routine;
  if (pk == "call_expression" && field == "function") return Position::Routine;
  return Position::Variable;
}

}  // namespace

std::string canonical_name(std::size_t index) { return "var" + std::to_string(index); }

std::set<std::string> identifier_spellings(const SyntaxTree& tree) {
  std::set<std::string> out;
  const auto& prof = profile_for(tree.language());
  tree.preorder(tree.root(), [&](NodeRef n) {
    if (is_kind_in(prof.identifier_kinds, tree.kind(n)) || tree.kind(n) == "type_identifier")
      out.emplace(tree.text(n));
    return true;
  });
  return out;
}

SourceSnippet strip_comments(const SourceSnippet& snippet) {
  SyntaxTree tree = parse(snippet);
  const auto& prof = profile_for(snippet.language);
  std::vector<TextEdit> edits;
  tree.preorder(tree.root(), [&](NodeRef n) {
    if (is_kind_in(prof.comment_kinds, tree.kind(n))) {
      edits.push_back({tree.node(n).span, ""});
      return false;
    }
    return true;
  });
  SourceSnippet out = snippet;
  out.text = apply_edits(snippet.text, std::move(edits));
  return out;
}

NormalizedSnippet normalize(const SourceSnippet& snippet) {
  SourceSnippet clean = strip_comments(snippet);
  SyntaxTree tree = parse(clean);

  NameSet eligible = tree.language() == Language::Java ? eligible_java(tree) : eligible_c(tree);
  const std::string routine = root_routine_name(tree);
  if (!routine.empty()) eligible.insert(routine);

  std::map<std::string, std::string, std::less<>> assigned;
  NormalizedSnippet out;
  out.source_id = snippet.id;
  out.language = snippet.language;
  out.label = snippet.label;
  std::vector<TextEdit> edits;

  tree.preorder(tree.root(), [&](NodeRef n) {
    const auto& kind = tree.kind(n);
    if (kind.rfind("preproc_", 0) == 0 || kind == "import_declaration" ||
        kind == "package_declaration")
      return false;
    if (!is_identifier(tree, n)) return true;
    std::string_view text = tree.text(n);
    if (eligible.find(text) == eligible.end()) return true;
    switch (classify(tree, n)) {
      case Position::Protected: return true;
      case Position::Routine:
        if (text != routine) return true;
        break;
      case Position::Variable: break;
    }
    auto it = assigned.find(text);
    if (it == assigned.end()) {
      std::string canon = canonical_name(assigned.size() + 1);
      it = assigned.emplace(std::string(text), canon).first;
      out.rename_map.emplace_back(std::string(text), std::move(canon));
    }
    if (it->second != text) edits.push_back({tree.node(n).span, it->second});
    return true;
  });

  out.text = apply_edits(clean.text, std::move(edits));
  return out;
}

}  // namespace tcode
