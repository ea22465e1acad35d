#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "test_support.hpp"
#include "transformcode/ast/grammar_profile.hpp"
#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"

using namespace tcode;

namespace {

SourceSnippet java(std::string text) { return {"s", Language::Java, std::move(text), {}}; }
SourceSnippet c_src(std::string text) { return {"s", Language::C, std::move(text), {}}; }

std::size_t count_kind(const SyntaxTree& tree, std::string_view kind) {
  return tree.find_all(kind).size();
}

// Checks the structural tree invariants: child spans nested in the parent,
// ordered and non-overlapping; leaves carry text.
void expect_well_formed(const SyntaxTree& tree) {
  for (NodeRef n = 0; n < tree.size(); ++n) {
    const auto& node = tree.node(n);
    std::uint32_t prev_end = node.span.start;
    for (NodeRef c : node.children) {
      const auto& child = tree.node(c);
      EXPECT_TRUE(node.span.contains(child.span)) << node.kind << " / " << child.kind;
      EXPECT_GE(child.span.start, prev_end);
      prev_end = child.span.end;
      EXPECT_EQ(child.parent, n);
    }
    if (node.children.empty()) EXPECT_TRUE(node.leaf_text.has_value());
  }
}

}  // namespace

TEST(Parse, BubbleSortHasTwoNestedLoopsAndOneIf) {
  auto tree = parse(java(test::read_data("snippets/BubbleSortExample.java")));
  EXPECT_FALSE(tree.had_errors());
  auto fors = tree.find_all("for_statement");
  ASSERT_EQ(fors.size(), 2u);
  EXPECT_TRUE(tree.is_ancestor(fors[0], fors[1]));
  EXPECT_EQ(count_kind(tree, "if_statement"), 1u);
  auto body = tree.child_by_field(tree.find_all("method_declaration").at(0), "body");
  EXPECT_TRUE(tree.is_ancestor(body, fors[0]));
  expect_well_formed(tree);
}

TEST(Parse, EmptyMethodBody) {
  auto tree = parse(java("void f(){}"));
  EXPECT_FALSE(tree.had_errors());
  auto methods = tree.find_all("method_declaration");
  ASSERT_EQ(methods.size(), 1u);
  auto body = tree.child_by_field(methods[0], "body");
  EXPECT_TRUE(tree.named_children(body).empty());
}

TEST(Parse, MalformedInputRecoversAndSpansWholeText) {
  const std::string text = "int x = ;";
  auto tree = parse(java(text));
  EXPECT_TRUE(tree.had_errors());
  EXPECT_EQ(tree.node(tree.root()).span.start, 0u);
  EXPECT_EQ(tree.node(tree.root()).span.end, text.size());
  expect_well_formed(tree);
}

TEST(Parse, CGrammarRegistered) {
  auto tree = parse(c_src("int main(void) { int a = 1; return a; }"));
  EXPECT_FALSE(tree.had_errors());
  EXPECT_EQ(count_kind(tree, "function_definition"), 1u);
  EXPECT_EQ(registered_grammars().size(), 2u);
}

TEST(Parse, TotalOnRandomBytes) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "int x=;{}()[]+-*/<>!&|\"'\n\t abcfor while if else 0123456789.\\";
  for (int round = 0; round < 300; ++round) {
    std::string text;
    std::size_t len = rng() % 120;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    for (auto lang : {Language::Java, Language::C}) {
      SyntaxTree tree;
      ASSERT_NO_THROW(tree = parse_source(lang, text));
      EXPECT_EQ(tree.node(tree.root()).span.end, text.size());
    }
  }
}

TEST(StripComments, LineComment) {
  EXPECT_EQ(strip_comments(java("int n; // count")).text, "int n; ");
}

TEST(StripComments, BlockComments) {
  EXPECT_EQ(strip_comments(java("/*a*/x/*b*/=1;")).text, "x=1;");
  EXPECT_EQ(strip_comments(c_src("/*a*/x/*b*/=1;")).text, "x=1;");
}

TEST(StripComments, BubbleSortLosesOnlyTheComment) {
  const std::string src = test::read_data("snippets/BubbleSortExample.java");
  const std::string comment = "// swap elements  ";
  std::string expected = src;
  expected.erase(expected.find(comment), comment.size());
  EXPECT_EQ(strip_comments(java(src)).text, expected);
}

TEST(StripComments, CommentMarkersInsideStringsSurvive) {
  const std::string src = "class A { String s = \"// not a comment /* nor */\"; }";
  EXPECT_EQ(strip_comments(java(src)).text, src);
}

TEST(StripComments, NonCommentTokensUnchanged) {
  const std::string src = test::read_data("snippets/BubbleSortExample.java");
  auto leaves = [](const SyntaxTree& t) {
    std::vector<std::string> out;
    const auto& prof = profile_for(t.language());
    t.preorder(t.root(), [&](NodeRef n) {
      if (is_kind_in(prof.comment_kinds, t.kind(n))) return false;
      if (t.is_leaf(n)) out.emplace_back(t.text(n));
      return true;
    });
    return out;
  };
  auto before = parse(java(src));
  auto after = parse(strip_comments(java(src)));
  EXPECT_EQ(leaves(before), leaves(after));
}

TEST(Normalize, GetMaxParametersBecomeVar2AndVar3) {
  auto n = normalize(java("public int getMax(int a, int b){ if (a>b) return a; else return b;}"));
  EXPECT_EQ(n.text, "public int var1(int var2, int var3){ if (var2>var3) return var2; else return var3;}");
  ASSERT_EQ(n.rename_map.size(), 3u);
  EXPECT_EQ(n.rename_map[0], (std::pair<std::string, std::string>{"getMax", "var1"}));
  EXPECT_EQ(n.rename_map[1], (std::pair<std::string, std::string>{"a", "var2"}));
  EXPECT_EQ(n.rename_map[2], (std::pair<std::string, std::string>{"b", "var3"}));
}

TEST(Normalize, NothingToRename) {
  auto n = normalize(java("return 1;"));
  EXPECT_EQ(n.text, "return 1;");
  EXPECT_TRUE(n.rename_map.empty());
}

TEST(Normalize, KeepsTypesCallsAndClassNames) {
  auto n = normalize(java(test::read_data("snippets/BubbleSortExample.java")));
  EXPECT_NE(n.text.find("class BubbleSortExample"), std::string::npos);
  EXPECT_NE(n.text.find("void bubbleSort(int[] var1)"), std::string::npos);
  EXPECT_NE(n.text.find("var1.var3"), std::string::npos);
  EXPECT_EQ(n.text.find("//"), std::string::npos);
}

TEST(Normalize, CFunctionRootRenamesRecursion) {
  auto n = normalize(c_src("int fact(int n) { if (n < 2) return 1; return n * fact(n - 1); }"));
  EXPECT_EQ(n.text, "int var1(int var2) { if (var2 < 2) return 1; return var2 * var1(var2 - 1); }");
}

TEST(Normalize, CProgramKeepsLibraryCalls) {
  auto n = normalize(c_src(
      "#include <stdio.h>\nint main(int argc, char **argv) { int total = argc; /* x */ "
      "printf(\"%d\\n\", total); return 0; }\nint helper(void) { return 2; }"));
  EXPECT_NE(n.text.find("printf(\"%d\\n\", var3)"), std::string::npos) << n.text;
  EXPECT_NE(n.text.find("int main(int var1, char **var2)"), std::string::npos) << n.text;
  EXPECT_NE(n.text.find("#include <stdio.h>"), std::string::npos);
}

TEST(Normalize, RenameMapInvariantsAndIdempotence) {
  const std::vector<SourceSnippet> corpus = {
      java(test::read_data("snippets/BubbleSortExample.java")),
      java("public int getMax(int a, int b){ if (a>b) return a; else return b;}"),
      java("class T { int f; void g(T o) { int f2 = o.f; for (int i : xs) f2 += i; } }"),
      c_src("struct P { int x; }; int g(struct P *p) { int s = p->x; s += 1; return s; }"),
  };
  const std::regex canon("var[1-9][0-9]*");
  for (const auto& s : corpus) {
    auto once = normalize(s);
    auto twice = normalize(once.as_snippet());
    EXPECT_EQ(once.text, twice.text);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < once.rename_map.size(); ++i) {
      EXPECT_TRUE(std::regex_match(once.rename_map[i].second, canon));
      EXPECT_EQ(once.rename_map[i].second, canonical_name(i + 1));
      EXPECT_TRUE(seen.insert(once.rename_map[i].first).second);
    }
  }
}
