#include "transformcode/extract/extract.hpp"

#include "transformcode/ast/grammar_profile.hpp"
#include "transformcode/error.hpp"

namespace tcode {
namespace {

const std::set<std::string, std::less<>> kOperators = {
    "=",  "+=", "-=", "*=", "/=", "%=", "&=",  "|=",  "^=", "<<=", ">>=", ">>>=",
    "++", "--", "+",  "-",  "*",  "/",  "%",   "<",   ">",  "<=",  ">=",  "==",
    "!=", "&&", "||", "!",  "~",  "&",  "|",   "^",   "<<", ">>",  ">>>", "?",
    "->", "instanceof"};

PruneRule drop() { return {PruneAction::Drop, {}, {}}; }
PruneRule atom() { return {PruneAction::Atom, {}, {}}; }
PruneRule fields(std::vector<std::string> f) { return {PruneAction::Fields, std::move(f), {}}; }

PruningTable make_java_table() {
  PruningTable t;
  t.operators = kOperators;
  t.keywords = {"if",    "else",  "for",     "while", "do",   "return", "break",
                "continue", "switch", "case", "default", "try", "catch", "finally",
                "throw", "new",   "yield"};
  for (const char* k :
       {"line_comment", "block_comment", "modifiers", "integral_type",
        "floating_point_type", "boolean_type", "void_type", "type_identifier",
        "array_type", "generic_type", "scoped_type_identifier", "dimensions",
        "type_arguments", "type_parameters", "throws", "annotation",
        "marker_annotation", "import_declaration", "package_declaration",
        "superclass", "super_interfaces", "catch_type", "spread_parameter"})
    t.rules[k] = drop();
  for (const char* k : {"field_access", "array_access", "string_literal",
                        "character_literal", "text_block"})
    t.rules[k] = atom();
  t.rules["class_declaration"] = fields({"body"});
  t.rules["interface_declaration"] = fields({"body"});
  t.rules["enum_declaration"] = fields({"body"});
  t.rules["method_declaration"] = fields({"parameters", "body"});
  t.rules["constructor_declaration"] = fields({"parameters", "body"});
  t.rules["formal_parameter"] = {PruneAction::Signature, {}, {}};
  t.rules["for_statement"] = {PruneAction::Reorder,
                              {"condition", "update", "init", "body"}, "for"};
  t.rules["method_invocation"] = {PruneAction::Call, {"arguments"}, {}};
  return t;
}

PruningTable make_c_table() {
  PruningTable t;
  t.operators = kOperators;
  t.keywords = {"if",    "else",   "for",  "while",   "do",      "return",
                "break", "continue", "switch", "case", "default", "goto"};
  for (const char* k :
       {"comment", "primitive_type", "sized_type_specifier", "type_identifier",
        "type_qualifier", "storage_class_specifier", "struct_specifier",
        "union_specifier", "enum_specifier", "type_descriptor",
        "preproc_include", "preproc_def", "preproc_function_def",
        "preproc_call", "preproc_if", "preproc_ifdef"})
    t.rules[k] = drop();
  for (const char* k : {"field_expression", "subscript_expression", "string_literal",
                        "char_literal", "concatenated_string"})
    t.rules[k] = atom();
  t.rules["function_definition"] = fields({"declarator", "body"});
  t.rules["function_declarator"] = fields({"parameters"});
  t.rules["parameter_declaration"] = {PruneAction::Signature, {}, {}};
  t.rules["for_statement"] = {PruneAction::Reorder,
                              {"condition", "update", "initializer", "body"}, "for"};
  t.rules["call_expression"] = {PruneAction::Call, {"arguments"}, {}};
  return t;
}

class Extractor {
 public:
  Extractor(const SyntaxTree& tree, const PruningTable& table)
      : tree_(tree), table_(table), profile_(profile_for(tree.language())) {}

  void walk(NodeRef n) {
    const auto& node = tree_.node(n);
    if (node.missing) return;
    auto rule = table_.rules.find(node.kind);
    if (rule != table_.rules.end()) {
      apply(n, rule->second);
      return;
    }
    if (node.children.empty()) {
      emit_leaf(n);
      return;
    }
    for (NodeRef c : node.children) walk(c);
  }

  std::vector<std::string> tokens;

 private:
  void apply(NodeRef n, const PruneRule& rule) {
    switch (rule.action) {
      case PruneAction::Drop: return;
      case PruneAction::Atom: tokens.push_back(atom_text(n)); return;
      case PruneAction::Reorder:
        if (!rule.keyword.empty()) tokens.push_back(rule.keyword);
        [[fallthrough]];
      case PruneAction::Fields:
        for (const auto& f : rule.fields)
          for (NodeRef c : tree_.children_by_field(n, f)) walk(c);
        return;
      case PruneAction::Call: emit_call(n, rule); return;
      case PruneAction::Signature: emit_signature(n); return;
    }
  }

  void emit_leaf(NodeRef n) {
    const auto& node = tree_.node(n);
    std::string_view text = tree_.text(n);
    if (text.empty()) return;
    if (node.named) {
      if (is_kind_in(profile_.comment_kinds, node.kind)) return;
      tokens.emplace_back(text);
      return;
    }
    if (table_.keywords.count(text) || table_.operators.count(text)) tokens.emplace_back(text);
  }

  // Concatenated leaf text; literals keep their inner whitespace.
  std::string atom_text(NodeRef n) const {
    const auto& node = tree_.node(n);
    if (node.children.empty() || is_kind_in(profile_.literal_kinds, node.kind))
      return std::string(tree_.text(n));
    std::string out;
    for (NodeRef c : node.children) {
      if (is_kind_in(profile_.comment_kinds, tree_.kind(c))) continue;
      out += atom_text(c);
    }
    return out;
  }

  void emit_call(NodeRef n, const PruneRule& rule) {
    NodeRef args = tree_.child_by_field(n, rule.fields.front());
    std::string callee;
    for (NodeRef c : tree_.children(n)) {
      if (c == args) break;
      if (is_kind_in(profile_.comment_kinds, tree_.kind(c))) continue;
      if (tree_.kind(c) == "type_arguments") continue;
      callee += atom_text(c);
    }
    if (!callee.empty()) tokens.push_back(std::move(callee));
    if (args != kNoNode) walk(args);
  }

  void emit_signature(NodeRef n) {
    NodeRef type = tree_.child_by_field(n, "type");
    NodeRef name = tree_.child_by_field(n, tree_.language() == Language::Java ? "name" : "declarator");
    if (type == kNoNode || name == kNoNode) return;
    if (!is_kind_in(profile_.scalar_type_kinds, tree_.kind(type))) return;
    if (tree_.kind(name) != "identifier") return;
    tokens.push_back(atom_text(type));
    tokens.emplace_back(tree_.text(name));
  }

  const SyntaxTree& tree_;
  const PruningTable& table_;
  const GrammarProfile& profile_;
};

bool has_statement(const SyntaxTree& tree) {
  const auto& prof = profile_for(tree.language());
  bool found = false;
  tree.preorder(tree.root(), [&](NodeRef n) {
    const auto& kind = tree.kind(n);
    if (is_kind_in(prof.statement_kinds, kind) && !is_kind_in(prof.block_kinds, kind))
      found = true;
    return !found;
  });
  return found;
}

}  // namespace

const PruningTable& pruning_table(Language lang) {
  static const PruningTable java = make_java_table();
  static const PruningTable c = make_c_table();
  return lang == Language::Java ? java : c;
}

TokenSequence extract_path(const SyntaxTree& tree, std::string source_id, bool normalized) {
  if (tree.root() == kNoNode || !has_statement(tree))
    fail(ErrorCode::EmptyTree, "snippet '" + source_id + "' contains no statement");
  Extractor ex(tree, pruning_table(tree.language()));
  ex.walk(tree.root());
  return {std::move(ex.tokens), std::move(source_id), normalized};
}

}  // namespace tcode
