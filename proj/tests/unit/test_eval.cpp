#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "transformcode/error.hpp"
#include "transformcode/eval/metrics.hpp"

using namespace tcode;

namespace {

EvalVec vec(std::initializer_list<double> v) {
  EvalVec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "_" : "") + parts[i];
  return s;
}

}  // namespace

TEST(Cosine, BasicCases) {
  auto v = vec({1, 2, 3});
  EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-15);
  EXPECT_EQ(cosine_similarity(vec({1, 0}), vec({0, 1})), 0.0);
  std::mt19937_64 g(1);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    EvalVec a(7), b(7);
    for (int i = 0; i < 7; ++i) a(i) = n(g), b(i) = n(g);
    double dot = 0, na = 0, nb = 0;
    for (int i = 0; i < 7; ++i) dot += a(i) * b(i), na += a(i) * a(i), nb += b(i) * b(i);
    EXPECT_NEAR(cosine_similarity(a, b), dot / std::sqrt(na * nb), 1e-9);
  }
}

TEST(Cosine, Errors) {
  try {
    cosine_similarity(vec({0, 0}), vec({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
  try {
    cosine_similarity(vec({1}), vec({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ClassifyPair, Threshold) {
  auto v = vec({0.3, -0.2, 0.9});
  EXPECT_TRUE(classify_pair(v, v, {1.0}));
  // cos = 0.74
  auto a = vec({1, 0});
  auto b = vec({0.74, std::sqrt(1 - 0.74 * 0.74)});
  EXPECT_FALSE(classify_pair(a, b, {0.75}));
  EXPECT_TRUE(classify_pair(a, b, {0.74 - 1e-12}));
}

TEST(ClassifyPair, RaisingThresholdNeverAddsClones) {
  std::mt19937_64 g(4);
  std::normal_distribution<double> n;
  for (int t = 0; t < 200; ++t) {
    auto a = vec({n(g), n(g), n(g)}), b = vec({n(g), n(g), n(g)});
    bool prev = true;
    for (double T = -1.0; T <= 1.0; T += 0.05) {
      bool d = classify_pair(a, b, {T});
      EXPECT_FALSE(d && !prev);
      prev = d;
    }
  }
}

TEST(Metrics, WorkedTable) {
  auto r = compute_metrics({2, 3, 1, 4});
  EXPECT_DOUBLE_EQ(r.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(r.precision, 2.0 / 3);
  EXPECT_DOUBLE_EQ(r.recall, 1.0 / 3);
  EXPECT_NEAR(r.f1, 4.0 / 9, 1e-15);
  EXPECT_FALSE(r.degenerate);
}

TEST(Metrics, PerfectAndDegenerate) {
  auto r = compute_metrics({3, 2, 0, 0});
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  auto d = compute_metrics({0, 5, 0, 2});
  EXPECT_EQ(d.precision, 0.0);
  EXPECT_TRUE(d.degenerate);
  EXPECT_THROW(compute_metrics({}), Error);
}

TEST(Metrics, TallyMatchesDecisions) {
  std::vector<PairDecision> ds{{"a", "b", 0.9, true, true}, {"a", "c", 0.1, false, true},
                               {"b", "c", 0.8, true, false}, {"c", "d", 0.2, false, false}};
  auto c = tally(ds);
  EXPECT_EQ(c, (ConfusionCounts{1, 1, 1, 1}));
  EXPECT_EQ(c.total(), ds.size());
  std::ostringstream out;
  write_decisions_csv(out, ds);
  EXPECT_EQ(out.str().substr(0, 27), "id1,id2,sim,decision,label\n");
  EXPECT_NE(out.str().find("a,b,0.900000000,clone,clone"), std::string::npos);
}

TEST(Metrics, JsonReport) {
  auto j = compute_metrics({2, 3, 1, 4}).to_json(0.75);
  EXPECT_EQ(j["counts"]["tp"], 2);
  EXPECT_EQ(j["threshold"], 0.75);
}

TEST(Subwords, Split) {
  EXPECT_EQ(subword_split("computeMax"), (std::vector<std::string>{"compute", "max"}));
  EXPECT_EQ(subword_split("compute_max"), (std::vector<std::string>{"compute", "max"}));
  EXPECT_EQ(subword_split("x"), (std::vector<std::string>{"x"}));
  EXPECT_EQ(subword_split("parse-HTTPHeader_v2"), (std::vector<std::string>{"parse", "http", "header", "v2"}));
  for (std::string s : {"computeMax", "getHTTPResponseCode", "a_b-c", "XMLParser"})
    EXPECT_EQ(subword_split(join(subword_split(s))), subword_split(s));
}

TEST(Subwords, WorkedScores) {
  auto a = subword_f1("compute_max", "computeMax");
  EXPECT_EQ(a.f1, 1.0);
  auto b = subword_f1("getMax", "computeMax");
  EXPECT_EQ(b.precision, 1.0);
  EXPECT_EQ(b.recall, 0.5);
  EXPECT_NEAR(b.f1, 2.0 / 3, 1e-15);
  auto c = subword_f1("getMaxResult", "getMax");
  EXPECT_EQ(c.recall, 1.0);
  EXPECT_NEAR(c.precision, 2.0 / 3, 1e-15);
  EXPECT_NEAR(c.f1, 0.8, 1e-15);
  EXPECT_EQ(subword_f1("foo", "bar").f1, 0.0);
  EXPECT_EQ(subword_f1("readAll", "readAll").f1, 1.0);
}

TEST(ClassifySnippet, Softmax) {
  auto e = vec({0.5, -1, 2});
  auto u = classify_snippet(e, Mat<double>::Zero(4, 3), EvalVec::Zero(4));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(u(i), 0.25, 1e-15);
  std::mt19937_64 g(2);
  std::normal_distribution<double> n;
  Mat<double> w(4, 3);
  for (int i = 0; i < 12; ++i) w.data()[i] = n(g);
  EvalVec b = vec({n(g), n(g), n(g), n(g)});
  auto p = classify_snippet(e, w, b);
  EXPECT_NEAR(p.sum(), 1.0, 1e-6);
  Eigen::Index i1, i2;
  p.maxCoeff(&i1);
  classify_snippet(e, w, (b.array() + 3.0).matrix()).maxCoeff(&i2);
  EXPECT_EQ(i1, i2);
  EXPECT_THROW(classify_snippet(e, Mat<double>::Zero(4, 2), EvalVec::Zero(4)), Error);
}
