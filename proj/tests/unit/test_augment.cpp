#include <gtest/gtest.h>

#include "test_support.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/augment/augment.hpp"
#include "transformcode/error.hpp"
#include "transformcode/extract/extract.hpp"

using namespace tcode;

namespace {

SyntaxTree java_tree(const std::string& text) { return parse_source(Language::Java, text); }
SyntaxTree c_tree(const std::string& text) { return parse_source(Language::C, text); }

TransformOptions with_p(double p) {
  TransformOptions o;
  o.site_probability = p;
  return o;
}

NormalizedSnippet as_normalized(const std::string& text, Language lang, std::string id = "t") {
  NormalizedSnippet n;
  n.text = text;
  n.language = lang;
  n.source_id = std::move(id);
  return n;
}

std::size_t statement_count(const std::string& text, Language lang) {
  auto tree = parse_source(lang, text);
  std::size_t count = 0;
  for (std::string_view kind : {"expression_statement", "local_variable_declaration", "declaration"})
    count += tree.find_all(kind).size();
  return count;
}

}  // namespace

TEST(TransformNames, RoundTrip) {
  for (auto k : kAllTransformKinds) EXPECT_EQ(transform_from_name(transform_name(k)), k);
  EXPECT_FALSE(transform_from_name("Nope"));
}

TEST(PermuteDeclaration, SwapsIndependentPair) {
  Rng rng(1);
  auto out = permute_declaration(java_tree("int a=1; int b=2;"), rng);
  EXPECT_EQ(out.text, "int b=2; int a=1;");
  EXPECT_TRUE(out.changed());
}

TEST(PermuteDeclaration, DependencyBlocksSwap) {
  Rng rng(1);
  auto out = permute_declaration(java_tree("int a=1; int b=a;"), rng);
  EXPECT_EQ(out.text, "int a=1; int b=a;");
  EXPECT_FALSE(out.changed());
}

TEST(PermuteDeclaration, CallInitializerBlocksSwap) {
  Rng rng(1);
  auto out = permute_declaration(java_tree("void f(){ int a=g(); int b=h(); }"), rng);
  EXPECT_FALSE(out.changed());
}

TEST(SwapCondition, MirrorsComparison) {
  Rng rng(1);
  auto out = swap_condition(java_tree("r = a > b;"), rng);
  EXPECT_EQ(out.text, "r = b < a;");
}

TEST(SwapCondition, CommutesAddition) {
  Rng rng(1);
  auto out = swap_condition(java_tree("int j = 0; k = j+1;"), rng);
  EXPECT_EQ(out.text, "int j = 0; k = 1+j;");
}

TEST(SwapCondition, CallsAreNotSwapped) {
  Rng rng(1);
  auto out = swap_condition(java_tree("r = f() > g();"), rng);
  EXPECT_FALSE(out.changed());
}

TEST(SwapCondition, NonCommutativeUntouched) {
  Rng rng(1);
  EXPECT_FALSE(swap_condition(c_tree("int f(int a,int b){ return a - b; }"), rng).changed());
  EXPECT_FALSE(swap_condition(c_tree("int f(int a,int b){ return a / b; }"), rng).changed());
}

TEST(SwapCondition, StringConcatenationUntouched) {
  Rng rng(1);
  EXPECT_FALSE(swap_condition(java_tree("String s = \"a\"; t = s + 1;"), rng).changed());
}

TEST(SwapCondition, InvolutionOnSingleSite) {
  const std::string src = "int f(int a, int b) { return a >= b; }";
  Rng rng(3);
  auto once = swap_condition(c_tree(src), rng);
  auto twice = swap_condition(c_tree(once.text), rng);
  EXPECT_EQ(once.text, "int f(int a, int b) { return b <= a; }");
  EXPECT_EQ(twice.text, src);
}

TEST(ArithmeticTransform, AssignmentToCompound) {
  const std::string src = "void f(){ int temp = 0; temp = temp + 1; }";
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed);
    auto out = arithmetic_transform(java_tree(src), rng);
    EXPECT_TRUE(out.text == "void f(){ int temp = 0; temp += 1; }" ||
                out.text == "void f(){ int temp = 0; temp++; }")
        << out.text;
  }
}

TEST(ArithmeticTransform, IncrementToAssignment) {
  const std::string src = "void f(){ int i = 0; i++; }";
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed);
    auto out = arithmetic_transform(java_tree(src), rng);
    EXPECT_TRUE(out.text == "void f(){ int i = 0; i = i + 1; }" ||
                out.text == "void f(){ int i = 0; i += 1; }")
        << out.text;
  }
}

TEST(ArithmeticTransform, CompoundExpandsWithParentheses) {
  Rng rng(0);
  auto out = arithmetic_transform(c_tree("void f(int x, int a, int b){ x -= a + b; }"), rng);
  EXPECT_EQ(out.text, "void f(int x, int a, int b){ x = x - (a + b); }");
}

TEST(ArithmeticTransform, NoApplicableRule) {
  Rng rng(0);
  EXPECT_FALSE(arithmetic_transform(java_tree("void f(){ int y = 1; x = y + 1; }"), rng).changed());
}

TEST(ArithmeticTransform, JavaNarrowingCompoundNotExpanded) {
  Rng rng(0);
  EXPECT_FALSE(arithmetic_transform(java_tree("void f(){ byte b = 0; b += 1; }"), rng).changed());
  EXPECT_FALSE(arithmetic_transform(java_tree("void f(){ int x = 0; x += 1.5; }"), rng).changed());
  EXPECT_FALSE(arithmetic_transform(java_tree("void f(){ char c = 'a'; c++; }"), rng).changed());
}

TEST(WhileForExchange, WhileBecomesFor) {
  Rng rng(0);
  auto out = while_for_exchange(java_tree("while(i<n){i++;}"), rng);
  EXPECT_EQ(out.text, "for (;i<n;){i++;}");
}

TEST(WhileForExchange, ForBecomesWhile) {
  Rng rng(0);
  auto out = while_for_exchange(c_tree("void f(int n){ int s = 0; for (int i = 0; i < n; i++) s += i; }"), rng);
  EXPECT_EQ(out.text, "void f(int n){ int s = 0; { int i = 0; while (i < n) { s += i; i++; } } }");
}

TEST(WhileForExchange, ContinueBlocksForToWhile) {
  Rng rng(0);
  auto out = while_for_exchange(
      java_tree("void f(){ for (int i = 0; i < 3; i++) { if (i == 1) continue; g(i); } }"), rng);
  EXPECT_FALSE(out.changed());
}

TEST(WhileForExchange, JavaBodyEndingInJumpSkipped) {
  Rng rng(0);
  auto out = while_for_exchange(
      java_tree("int f(){ for (int i = 0; i < 3; i++) { return i; } return 0; }"), rng);
  EXPECT_FALSE(out.changed());
}

TEST(AddDummyStatement, OneStatementBodyGainsOne) {
  const std::string src = "void f(){ x = 1; }";
  Rng rng(0);
  auto out = add_dummy_statement(java_tree(src), rng, with_p(1.0));
  EXPECT_EQ(out.text, "void f(){ x = 1; int var1 = " + out.text.substr(out.text.find("= ", 15) + 2, 1) + "; }");
  EXPECT_EQ(statement_count(out.text, Language::Java), 2u);
}

TEST(AddDummyStatement, ZeroProbabilityIsIdentity) {
  const std::string src = "void f(){ x = 1; y = 2; }";
  Rng rng(0);
  auto out = add_dummy_statement(java_tree(src), rng, with_p(0.0));
  EXPECT_EQ(out.text, src);
  EXPECT_FALSE(out.changed());
}

TEST(AddDummyStatement, FreshNameAvoidsSourceAndReserved) {
  const std::string src = "void f(int var1){ var1 = 1; }";
  TransformOptions opts = with_p(1.0);
  opts.reserved_names = {"var2"};
  Rng rng(0);
  auto out = add_dummy_statement(java_tree(src), rng, opts);
  EXPECT_NE(out.text.find("int var3 ="), std::string::npos) << out.text;
}

TEST(AddDummyStatement, NeverAfterJump) {
  Rng rng(0);
  auto out = add_dummy_statement(java_tree("int f(){ return 1; }"), rng, with_p(1.0));
  EXPECT_FALSE(out.changed());
}

TEST(AddDummyStatement, LengthensExtraction) {
  const std::string src = test::read_data("snippets/BubbleSortExample.java");
  Rng rng(5);
  auto out = add_dummy_statement(java_tree(src), rng, with_p(1.0));
  ASSERT_TRUE(out.changed());
  EXPECT_GT(extract_path(java_tree(out.text)).tokens.size(),
            extract_path(java_tree(src)).tokens.size());
}

TEST(AddTryCatch, WrapsStatement) {
  Rng rng(0);
  auto out = add_try_catch(java_tree("x = a/b;"), rng);
  EXPECT_EQ(out.text, "try { x = a/b; } catch (Exception e) { throw e; }");
}

TEST(AddTryCatch, CatchNameAvoidsExisting) {
  Rng rng(0);
  auto out = add_try_catch(java_tree("void f(int e){ e = 2; }"), rng);
  EXPECT_EQ(out.text, "void f(int e){ try { e = 2; } catch (Exception var1) { throw var1; } }");
}

TEST(AddTryCatch, CIsUnsupported) {
  Rng rng(0);
  const std::string src = "void f(int x){ x = 1; }";
  auto out = add_try_catch(c_tree(src), rng);
  EXPECT_TRUE(out.unsupported);
  EXPECT_EQ(out.text, src);
}

TEST(PermuteStatement, SwapsDisjointPair) {
  Rng rng(0);
  auto out = permute_statement(java_tree("a=1; b=2;"), rng, with_p(1.0));
  EXPECT_EQ(out.text, "b=2; a=1;");
}

TEST(PermuteStatement, DependenceBlocksSwap) {
  Rng rng(0);
  auto out = permute_statement(java_tree("a=1; b=a;"), rng, with_p(1.0));
  EXPECT_EQ(out.text, "a=1; b=a;");
}

TEST(PermuteStatement, CallsAndAliasesBlockSwap) {
  Rng rng(0);
  EXPECT_FALSE(permute_statement(java_tree("a=1; f(b);"), rng, with_p(1.0)).changed());
  EXPECT_FALSE(permute_statement(
                   c_tree("void f(void){ int s = 0; int *p = &s; int y; s = 1; y = *p; }"), rng,
                   with_p(1.0))
                   .changed());
}

TEST(GenerateAnchor, Deterministic) {
  auto n = normalize({"getmax", Language::Java,
                      "public int getMax(int a, int b){ if (a>b) return a; else return b;}", {}});
  AugmentConfig cfg;
  cfg.rng_seed = 42;
  auto first = generate_anchor(n, cfg);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(generate_anchor(n, cfg).text, first.text);
  EXPECT_FALSE(first.is_identity());
  EXPECT_NE(first.text, n.text);
}

TEST(GenerateAnchor, AllDisabledIsIdentity) {
  auto n = as_normalized("void f(){ int a = 1; int b = 2; }", Language::Java);
  AugmentConfig cfg;
  cfg.enabled.clear();
  auto anchor = generate_anchor(n, cfg);
  EXPECT_EQ(anchor.text, n.text);
  EXPECT_TRUE(anchor.applied.empty());
}

TEST(GenerateAnchor, NoSiteGivesIdentity) {
  auto n = as_normalized("int f(){ return 1; }", Language::Java);
  auto anchor = generate_anchor(n, AugmentConfig{});
  EXPECT_TRUE(anchor.is_identity());
  EXPECT_EQ(anchor.text, n.text);
}

TEST(GenerateAnchor, CRecordsTryCatchSkip) {
  auto n = as_normalized("int f(int a){ a = a + 1; return a; }", Language::C);
  AugmentConfig cfg;
  cfg.enabled = {TransformKind::AddTryCatch, TransformKind::ArithmeticTransform};
  cfg.language = Language::C;
  auto anchor = generate_anchor(n, cfg);
  ASSERT_EQ(anchor.unsupported.size(), 1u);
  EXPECT_EQ(anchor.unsupported[0], TransformKind::AddTryCatch);
  for (const auto& a : anchor.applied) EXPECT_NE(a.kind, TransformKind::AddTryCatch);
}

TEST(GenerateAnchor, ParseSoundAcrossSeeds) {
  auto n = normalize({"bubble", Language::Java, test::read_data("snippets/BubbleSortExample.java"), {}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    AugmentConfig cfg;
    cfg.rng_seed = seed;
    auto anchor = generate_anchor(n, cfg);
    EXPECT_FALSE(anchor.is_identity());
    EXPECT_FALSE(parse_source(Language::Java, anchor.text).had_errors()) << anchor.text;
  }
}

TEST(GenerateAnchor, InvalidProbabilityRejected) {
  AugmentConfig cfg;
  cfg.per_kind_probability[TransformKind::SwapCondition] = 1.5;
  try {
    generate_anchor(as_normalized("x = a > b;", Language::Java), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(AugmentReport, JsonLineShape) {
  AnchorSnippet a{"b<a", {{TransformKind::SwapCondition, {0, 3}}}, "p1", {}};
  EXPECT_EQ(augment_report_line(a),
            R"({"parent_id":"p1","applied":[{"kind":"SwapCondition","span":[0,3]}],"text":"b<a"})");
}

TEST(ComposeAnchor, SingleRoundMatchesGenerate) {
  auto n = normalize({"bubble", Language::Java, test::read_data("snippets/BubbleSortExample.java"), {}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    AugmentConfig cfg;
    cfg.rng_seed = seed;
    auto a = compose_anchor(n, cfg);
    auto b = generate_anchor(n, cfg);
    EXPECT_EQ(a.text, b.text);
    EXPECT_EQ(a.applied.size(), b.applied.size());
  }
}

TEST(ComposeAnchor, ChainedRoundsParseAndRepeat) {
  auto n = normalize({"bubble", Language::Java, test::read_data("snippets/BubbleSortExample.java"), {}});
  std::size_t longer = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AugmentConfig cfg;
    cfg.rng_seed = seed;
    cfg.max_rounds = 8;
    auto a = compose_anchor(n, cfg);
    EXPECT_EQ(compose_anchor(n, cfg).text, a.text);
    EXPECT_FALSE(parse_source(Language::Java, a.text).had_errors()) << a.text;
    if (a.applied.size() > generate_anchor(n, cfg).applied.size()) ++longer;
  }
  EXPECT_GT(longer, 0u);
}

TEST(ComposeAnchor, ZeroRoundsRejected) {
  AugmentConfig cfg;
  cfg.max_rounds = 0;
  EXPECT_THROW(compose_anchor(as_normalized("int a = 1;", Language::Java), cfg), Error);
}
