#include "transformcode/ast/parser.hpp"

#include <tree_sitter/api.h>

#include <array>
#include <memory>

#include "transformcode/error.hpp"

extern "C" {
const TSLanguage* tree_sitter_java(void);
const TSLanguage* tree_sitter_c(void);
}

namespace tcode {
namespace {

constexpr std::array<GrammarEntry, 2> kGrammars{{
    {Language::Java, &tree_sitter_java},
    {Language::C, &tree_sitter_c},
}};

struct ParserDeleter {
  void operator()(TSParser* p) const { ts_parser_delete(p); }
};
struct TreeDeleter {
  void operator()(TSTree* t) const { ts_tree_delete(t); }
};

class Converter {
 public:
  Converter(std::string_view source, std::uint32_t offset)
      : source_(source), offset_(offset) {}

  // Converts the subtree under the cursor. Spans are shifted by -offset_ and
  // clamped to the visible source.
  NodeRef convert(TSTreeCursor* cursor, NodeRef parent) {
    TSNode ts = ts_tree_cursor_current_node(cursor);
    SyntaxNode node;
    node.kind = ts_node_type(ts);
    node.named = ts_node_is_named(ts);
    node.error = ts_node_is_error(ts);
    node.missing = ts_node_is_missing(ts);
    node.parent = parent;
    if (const char* field = ts_tree_cursor_current_field_name(cursor)) node.field = field;
    node.span = shift(ts_node_start_byte(ts), ts_node_end_byte(ts));
    const NodeRef self = static_cast<NodeRef>(nodes.size());
    nodes.push_back(std::move(node));

    if (ts_tree_cursor_goto_first_child(cursor)) {
      do {
        NodeRef child = convert(cursor, self);
        nodes[self].children.push_back(child);
      } while (ts_tree_cursor_goto_next_sibling(cursor));
      ts_tree_cursor_goto_parent(cursor);
    }
    if (nodes[self].children.empty()) {
      const auto& span = nodes[self].span;
      nodes[self].leaf_text = std::string(source_.substr(span.start, span.size()));
    }
    return self;
  }

  std::vector<SyntaxNode> nodes;

 private:
  ByteSpan shift(std::uint32_t start, std::uint32_t end) const {
    auto clamp = [&](std::uint32_t b) {
      std::uint32_t v = b >= offset_ ? b - offset_ : 0;
      return std::min<std::uint32_t>(v, static_cast<std::uint32_t>(source_.size()));
    };
    return {clamp(start), clamp(end)};
  }

  std::string_view source_;
  std::uint32_t offset_;
};

struct RawParse {
  std::unique_ptr<TSTree, TreeDeleter> tree;
  bool had_errors = false;
};

RawParse raw_parse(TSParser* parser, std::string_view text) {
  RawParse out;
  out.tree.reset(ts_parser_parse_string(parser, nullptr, text.data(),
                                        static_cast<std::uint32_t>(text.size())));
  out.had_errors = ts_node_has_error(ts_tree_root_node(out.tree.get()));
  return out;
}

// A Java snippet that is a bare method (or a run of members) does not parse as
// a compilation unit. Such snippets are parsed inside a synthetic class body
// and the members are re-rooted under a "program" node.
constexpr std::string_view kJavaWrapPrefix = "class __Snippet__ {\n";
constexpr std::string_view kJavaWrapSuffix = "\n}";

SyntaxTree convert_wrapped(std::string_view text, TSTree* tree) {
  const auto offset = static_cast<std::uint32_t>(kJavaWrapPrefix.size());
  Converter conv(text, offset);
  SyntaxNode root;
  root.kind = "program";
  root.named = true;
  root.span = {0, static_cast<std::uint32_t>(text.size())};
  conv.nodes.push_back(std::move(root));

  TSNode program = ts_tree_root_node(tree);
  TSNode cls = ts_node_named_child(program, 0);
  TSNode body = ts_node_child_by_field_name(cls, "body", 4);
  TSTreeCursor cursor = ts_tree_cursor_new(body);
  if (ts_tree_cursor_goto_first_child(&cursor)) {
    do {
      TSNode cur = ts_tree_cursor_current_node(&cursor);
      // Skip the synthetic braces.
      if (!ts_node_is_named(cur)) {
        std::string_view type = ts_node_type(cur);
        if (type == "{" || type == "}") continue;
      }
      NodeRef child = conv.convert(&cursor, 0);
      conv.nodes[child].field.clear();
      conv.nodes[0].children.push_back(child);
    } while (ts_tree_cursor_goto_next_sibling(&cursor));
  }
  ts_tree_cursor_delete(&cursor);
  return SyntaxTree(Language::Java, std::string(text), std::move(conv.nodes), 0, false);
}

}  // namespace

std::span<const GrammarEntry> registered_grammars() noexcept { return kGrammars; }

const TSLanguage* grammar_for(Language lang) {
  for (const auto& entry : kGrammars)
    if (entry.language == lang) return entry.grammar();
  fail(ErrorCode::UnsupportedLanguage,
       "no grammar registered for language '" + std::string(language_name(lang)) + "'");
}

SyntaxTree parse_source(Language lang, std::string_view text) {
  std::unique_ptr<TSParser, ParserDeleter> parser(ts_parser_new());
  ts_parser_set_language(parser.get(), grammar_for(lang));

  RawParse direct = raw_parse(parser.get(), text);
  if (direct.had_errors && lang == Language::Java) {
    std::string wrapped;
    wrapped.reserve(text.size() + kJavaWrapPrefix.size() + kJavaWrapSuffix.size());
    wrapped.append(kJavaWrapPrefix).append(text).append(kJavaWrapSuffix);
    RawParse retry = raw_parse(parser.get(), wrapped);
    if (!retry.had_errors) return convert_wrapped(text, retry.tree.get());
  }

  Converter conv(text, 0);
  TSTreeCursor cursor = ts_tree_cursor_new(ts_tree_root_node(direct.tree.get()));
  NodeRef root = conv.convert(&cursor, kNoNode);
  ts_tree_cursor_delete(&cursor);
  conv.nodes[root].span = {0, static_cast<std::uint32_t>(text.size())};
  return SyntaxTree(lang, std::string(text), std::move(conv.nodes), root,
                    direct.had_errors);
}

}  // namespace tcode
