#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <regex>

#include "test_support.hpp"
#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"
#include "transformcode/extract/extract.hpp"

using namespace tcode;

namespace {

using Tokens = std::vector<std::string>;

SourceSnippet java(std::string text) { return {"s", Language::Java, std::move(text), {}}; }

Tokens extract_java(const std::string& text) {
  return extract_path(parse(java(text))).tokens;
}

Tokens sorted(Tokens t) {
  std::sort(t.begin(), t.end());
  return t;
}

const Tokens kBubbleTokens = {
    "n", "=", "arr.length", "temp", "=", "0", "for", "i", "<", "n", "i", "++", "i", "=", "0",
    "for", "j", "<", "j", "++", "j", "=", "1", "if", "n", "-", "i", "arr[j-1]", ">", "arr[j]",
    "temp", "=", "arr[j-1]", "arr[j-1]", "=", "arr[j]", "arr[j]", "=", "temp"};

const Tokens kBubbleNormalized = {
    "var2", "=", "var1.var5", "var3", "=", "0", "for", "var4", "<", "var2", "var4", "++",
    "var4", "=", "0", "for", "var6", "<", "var6", "++", "var6", "=", "1", "if", "var2", "-",
    "var4", "var1[var6-1]", ">", "var1[var6]", "var3", "=", "var1[var6-1]", "var1[var6-1]",
    "=", "var1[var6]", "var1[var6]", "=", "var3"};

Tokens relabel(const Tokens& tokens, const std::vector<int>& perm) {
  static const std::regex var("var([0-9]+)");
  Tokens out;
  for (const auto& t : tokens) {
    std::string r;
    auto it = std::sregex_iterator(t.begin(), t.end(), var);
    std::size_t last = 0;
    for (; it != std::sregex_iterator(); ++it) {
      r += t.substr(last, it->position() - last);
      int idx = std::stoi((*it)[1].str());
      r += "var" + std::to_string(idx <= static_cast<int>(perm.size()) ? perm[idx - 1] : idx);
      last = it->position() + it->length();
    }
    r += t.substr(last);
    out.push_back(r);
  }
  return out;
}

// True when some renaming of var1..varK maps `a` onto `b` as multisets.
bool equal_up_to_bijection(const Tokens& a, const Tokens& b, int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  const Tokens target = sorted(b);
  do {
    if (sorted(relabel(a, perm)) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST(Extract, BubbleSortExactSequence) {
  Tokens got = extract_java(test::read_data("snippets/BubbleSortExample.java"));
  const Tokens expected = {
      "n", "=", "arr.length", "temp", "=", "0",
      "for", "i", "<", "n", "i", "++", "i", "=", "0",
      "for", "j", "<", "n", "-", "i", "j", "++", "j", "=", "1",
      "if", "arr[j-1]", ">", "arr[j]",
      "temp", "=", "arr[j-1]", "arr[j-1]", "=", "arr[j]", "arr[j]", "=", "temp"};
  EXPECT_EQ(got, expected);
}

TEST(Extract, BubbleSortMatchesReferenceMultiset) {
  Tokens got = extract_java(test::read_data("snippets/BubbleSortExample.java"));
  EXPECT_EQ(got.size(), 39u);
  EXPECT_EQ(sorted(got), sorted(kBubbleTokens));
}

TEST(Extract, NormalizedBubbleSortMatchesUpToRenaming) {
  auto n = normalize(java(test::read_data("snippets/BubbleSortExample.java")));
  auto seq = extract_path(parse(n.as_snippet()), n.source_id, true);
  EXPECT_TRUE(seq.normalized);
  EXPECT_EQ(n.rename_map.size(), 6u);
  EXPECT_TRUE(equal_up_to_bijection(seq.tokens, kBubbleNormalized, 6));
}

TEST(Extract, GetMaxTokenMultiset) {
  auto n = normalize(java("public int getMax(int a, int b) { if (a>b) return a; else return b;}"));
  auto seq = extract_path(parse(n.as_snippet()));
  const Tokens expected = {"int", "var2", "int", "var3", "if", "return", "var2",
                           "else", "return", "var3", "var2", ">", "var3"};
  EXPECT_EQ(sorted(seq.tokens), sorted(expected));
}

TEST(Extract, NoPunctuationCommentsOrModifiers) {
  const std::vector<std::string> sources = {
      test::read_data("snippets/BubbleSortExample.java"),
      "public static int f(int x) { /* c */ int y = x * 2; // d\n return Math.max(y, 3); }",
  };
  for (const auto& src : sources) {
    for (const auto& t : extract_java(src)) {
      EXPECT_TRUE(t != ";" && t != "{" && t != "}" && t != "(" && t != ")" && t != ",") << t;
      EXPECT_EQ(t.find("//"), std::string::npos);
      EXPECT_EQ(t.find("/*"), std::string::npos);
      EXPECT_NE(t, "public");
      EXPECT_NE(t, "static");
      EXPECT_EQ(t.find(' '), std::string::npos) << t;
    }
  }
}

TEST(Extract, CallEmitsCalleeThenArguments) {
  Tokens got = extract_java("void f() { System.out.println(a + 1); }");
  EXPECT_EQ(got, (Tokens{"System.out.println", "a", "+", "1"}));
}

TEST(Extract, StringLiteralKeepsInnerSpaces) {
  Tokens got = extract_java("void f() { s = \"a b\"; }");
  EXPECT_EQ(got, (Tokens{"s", "=", "\"a b\""}));
}

TEST(Extract, CForLoop) {
  auto tree = parse_source(Language::C,
                           "int sum(int n) { int s = 0; for (int i = 0; i < n; i++) s += i; return s; }");
  Tokens got = extract_path(tree).tokens;
  const Tokens expected = {"int", "n", "s", "=", "0", "for", "i", "<", "n", "i", "++",
                           "i", "=", "0", "s", "+=", "i", "return", "s"};
  EXPECT_EQ(got, expected);
}

TEST(Extract, EmptyTreeThrows) {
  try {
    extract_java("class A {}");
    FAIL() << "expected EmptyTree";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyTree);
  }
  EXPECT_THROW(extract_java(""), Error);
  EXPECT_THROW(extract_java("void f(){}"), Error);
}

TEST(Extract, Deterministic) {
  const std::string src = test::read_data("snippets/BubbleSortExample.java");
  EXPECT_EQ(extract_java(src), extract_java(src));
}
