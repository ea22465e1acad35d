#include <gtest/gtest.h>

#include "exec_oracle.hpp"
#include "test_support.hpp"

using namespace tcode;
using namespace tcode::test;

namespace {

std::vector<EquivalenceProgram> pick(Language lang, std::initializer_list<const char*> names) {
  auto all = load_programs(data_path(lang == Language::Java ? "equivalence/java" : "equivalence/c"), lang);
  std::vector<EquivalenceProgram> out;
  for (const auto& p : all)
    for (const char* n : names)
      if (p.name == n) out.push_back(p);
  return out;
}

std::vector<std::uint64_t> seeds(std::uint64_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::uint64_t i = 0; i < n; ++i) s[i] = 1000 + i;
  return s;
}

std::string describe(const EquivalenceReport& r) {
  std::string s;
  for (const auto& f : r.failures) s += f + "\n";
  return s;
}

}  // namespace

class PerKindEquivalence : public ::testing::TestWithParam<TransformKind> {};

TEST_P(PerKindEquivalence, JavaAndCBehaviorUnchanged) {
  AugmentConfig cfg;
  cfg.enabled = {GetParam()};
  cfg.per_kind_probability[GetParam()] = 1.0;
  cfg.site_probability[GetParam()] = 0.5;
  auto programs = pick(Language::Java, {"BubbleSort.java", "Accumulate.java", "Triangle.java", "SafeDivide.java"});
  auto c_programs = pick(Language::C, {"bubble_sort.c", "accumulate.c", "pointer_sum.c"});
  programs.insert(programs.end(), c_programs.begin(), c_programs.end());
  ASSERT_EQ(programs.size(), 7u);
  auto report = run_equivalence(programs, seeds(4), harness_inputs(), cfg);
  EXPECT_TRUE(report.passed()) << describe(report);
  EXPECT_GT(report.runs, 0u);
}

INSTANTIATE_TEST_SUITE_P(AllKinds, PerKindEquivalence, ::testing::ValuesIn(kAllTransformKinds),
                         [](const auto& info) { return std::string(transform_name(info.param)); });

TEST(Equivalence, BubbleSortAnchorsSortIdentically) {
  auto report = run_equivalence(pick(Language::Java, {"BubbleSort.java"}), seeds(5), harness_inputs());
  EXPECT_TRUE(report.passed()) << describe(report);
  EXPECT_EQ(report.identity_anchors, 0u);
  EXPECT_EQ(report.runs, 25u);
}

TEST(Equivalence, ChainedRoundsKeepBehavior) {
  AugmentConfig cfg;
  cfg.max_rounds = 6;
  auto programs = pick(Language::Java, {"BubbleSort.java", "Accumulate.java", "SafeDivide.java"});
  auto c_programs = pick(Language::C, {"bubble_sort.c", "accumulate.c"});
  programs.insert(programs.end(), c_programs.begin(), c_programs.end());
  ASSERT_EQ(programs.size(), 5u);
  auto report = run_equivalence(programs, seeds(6), harness_inputs(), cfg);
  EXPECT_TRUE(report.passed()) << describe(report);
  EXPECT_GT(report.distinct_anchors, programs.size());
}
