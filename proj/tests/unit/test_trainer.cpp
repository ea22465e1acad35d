#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "transformcode/error.hpp"
#include "transformcode/trainer/trainer.hpp"

using namespace tcode;

namespace {

Vec random_vec(std::mt19937_64& g, int d, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = n(g);
  return v;
}

// Plain softmax cross-entropy with the positive at index 0.
double brute_info_nce(const Vec& q, const Vec& k, const std::vector<Vec>& neg, double tau) {
  std::vector<long double> l{static_cast<long double>(q.dot(k) / tau)};
  for (const auto& n : neg) l.push_back(q.dot(n) / tau);
  long double z = 0;
  for (auto v : l) z += std::exp(v);
  return static_cast<double>(-std::log(std::exp(l[0]) / z));
}

EncoderConfig small_encoder(int vocab) {
  EncoderConfig c;
  c.n_layers = 1;
  c.d_model = 16;
  c.n_heads = 2;
  c.max_relative_distance = 4;
  c.vocab_size = vocab;
  c.mlp_dims = {16, 8};
  return c;
}

// Two classes: sequences over tokens 0..4 or 5..9, key is a shuffled copy.
std::vector<TrainSample> two_class_corpus(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<TrainSample> out;
  for (int i = 0; i < n; ++i) {
    int cls = i % 2;
    TrainSample s;
    s.id = "s" + std::to_string(i);
    s.label = cls;
    std::uniform_int_distribution<std::uint32_t> tok(0, 4);
    for (int j = 0; j < 6; ++j) s.query_ids.push_back(tok(g) + 5 * cls);
    s.key_ids = s.query_ids;
    std::shuffle(s.key_ids.begin(), s.key_ids.end(), g);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(InfoNce, SymmetricLogitsGiveLn2) {
  Vec q(2), kp(2), kn(2);
  q << 1, 0;
  kp << 0, 1;
  kn << 0, -1;
  EXPECT_NEAR(info_nce(q, kp, {kn}, 1.0), std::log(2.0), 1e-12);
}

TEST(InfoNce, NoNegativesIsZero) {
  Vec q = Vec::Ones(4), k = Vec::Ones(4);
  EXPECT_EQ(info_nce(q, k, {}, 0.07), 0.0);
}

TEST(InfoNce, MatchesSoftmaxOracle) {
  std::mt19937_64 g(3);
  for (int t = 0; t < 50; ++t) {
    Vec q = random_vec(g, 8, 0.3), k = random_vec(g, 8, 0.3);
    std::vector<Vec> neg;
    for (int i = 0; i < 5; ++i) neg.push_back(random_vec(g, 8, 0.3));
    double a = info_nce(q, k, neg, 0.07), b = brute_info_nce(q, k, neg, 0.07);
    EXPECT_LE(std::abs(a - b), 1e-6 * std::max(1.0, std::abs(b)));
  }
}

TEST(InfoNce, Errors) {
  Vec q = Vec::Ones(3), k = Vec::Ones(3), bad = Vec::Ones(2);
  try {
    info_nce(q, k, {}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveTemperature);
  }
  try {
    info_nce(q, k, {bad}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(InfoNce, MonotoneInPositiveSimilarity) {
  std::mt19937_64 g(9);
  Vec q = random_vec(g, 6), k = random_vec(g, 6);
  std::vector<Vec> neg{random_vec(g, 6), random_vec(g, 6)};
  double prev = info_nce(q, k, neg, 0.5);
  for (int i = 0; i < 10; ++i) {
    k += 0.1 * q;
    double cur = info_nce(q, k, neg, 0.5);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(InfoNce, GradientMatchesFiniteDifferences) {
  std::mt19937_64 g(11);
  Vec q = random_vec(g, 5), k = random_vec(g, 5);
  std::vector<Vec> neg{random_vec(g, 5), random_vec(g, 5), random_vec(g, 5)};
  auto grad = info_nce_grad(q, k, neg, 0.3);
  const double h = 1e-6;
  for (int i = 0; i < 5; ++i) {
    Vec qp = q, qm = q;
    qp(i) += h;
    qm(i) -= h;
    double fd = (info_nce(qp, k, neg, 0.3) - info_nce(qm, k, neg, 0.3)) / (2 * h);
    EXPECT_NEAR(grad.d_q(i), fd, 1e-6);
  }
}

TEST(Momentum, DegenerateValues) {
  auto cfg = small_encoder(10).resolved();
  Encoder<double> q(cfg, 1), k(cfg, 2);
  auto key = k.params();
  momentum_update(key, q.params(), 0.0);
  EXPECT_EQ(key.token_embedding, q.params().token_embedding);
  auto frozen = k.params();
  momentum_update(frozen, q.params(), 1.0);
  EXPECT_EQ(frozen.token_embedding, k.params().token_embedding);
}

TEST(Momentum, ScalarArithmeticAndDriftBound) {
  auto cfg = small_encoder(10).resolved();
  Encoder<double> q(cfg, 1), k(cfg, 2);
  auto key = k.params();
  const double a = key.token_embedding(0, 0), b = q.params().token_embedding(0, 0);
  momentum_update(key, q.params(), 0.999);
  EXPECT_NEAR(key.token_embedding(0, 0), 0.999 * a + 0.001 * b, 1e-7);

  double gap = 0, moved = 0;
  auto before = k.params().tensors();
  auto after = key.tensors();
  auto qt = q.params().tensors();
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i].second->size() == 0) continue;
    gap = std::max(gap, (*qt[i].second - *before[i].second).cwiseAbs().maxCoeff());
    moved = std::max(moved, (*after[i].second - *before[i].second).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(moved, 0.001 * gap + 1e-15);
}

TEST(Momentum, ShapeMismatch) {
  auto c1 = small_encoder(10).resolved(), c2 = small_encoder(12).resolved();
  Encoder<double> q(c1, 1), k(c2, 1);
  auto key = k.params();
  try {
    momentum_update(key, q.params(), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(Queue, FifoWithCapacityFour) {
  NegativeQueue queue(4);
  auto item = [](float v) { return RowVec<float>::Constant(1, 1, v); };
  queue.enqueue({item(1), item(2), item(3)});
  queue.enqueue({item(4), item(5), item(6)});
  ASSERT_EQ(queue.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(queue.entries()[i](0), 3.0f + i);
}

TEST(Queue, OversizedBatchKeepsNewest) {
  NegativeQueue queue(3);
  std::vector<RowVec<float>> batch;
  for (int i = 0; i < 7; ++i) batch.push_back(RowVec<float>::Constant(1, 1, static_cast<float>(i)));
  queue.enqueue(batch);
  ASSERT_EQ(queue.size(), 3u);
  EXPECT_EQ(queue.entries()[0](0), 4.0f);
  EXPECT_EQ(queue.entries()[2](0), 6.0f);
}

TEST(Queue, MatchesListModel) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t cap = 1 + g() % 10;
    NegativeQueue queue(cap);
    std::vector<float> model;
    float next = 0;
    for (int op = 0; op < 20; ++op) {
      std::vector<RowVec<float>> batch;
      for (std::size_t i = 0, n = g() % 6; i < n; ++i) {
        batch.push_back(RowVec<float>::Constant(1, 1, next));
        model.push_back(next++);
      }
      queue.enqueue(batch);
      if (model.size() > cap) model.erase(model.begin(), model.end() - static_cast<long>(cap));
      ASSERT_EQ(queue.size(), model.size());
      for (std::size_t i = 0; i < model.size(); ++i) ASSERT_EQ(queue.entries()[i](0), model[i]);
    }
  }
}

TEST(Losses, CombinedSupervisedExample) {
  EXPECT_NEAR(combined_supervised_loss(1.0, 2.0, 0.2), 1.8, 1e-12);
  EXPECT_NEAR(combined_supervised_loss(1.0, 2.0, 1.0), 1.0, 1e-12);
  auto g = combined_supervised_grad(1.0, 2.0, logit(0.2));
  EXPECT_NEAR(g.total, 1.8, 1e-12);
  const double h = 1e-6;
  double fd = (combined_supervised_loss(1.0, 2.0, 0.2 + h) - combined_supervised_loss(1.0, 2.0, 0.2 - h)) / (2 * h);
  EXPECT_NEAR(g.d_alpha, fd, 1e-7);
  double l = logit(0.2);
  double fd_logit = (combined_supervised_grad(1.0, 2.0, l + h).total -
                     combined_supervised_grad(1.0, 2.0, l - h).total) / (2 * h);
  EXPECT_NEAR(g.d_logit, fd_logit, 1e-7);
}

TEST(Losses, ClassificationExample) {
  EXPECT_NEAR(classification_loss(1, 2, 2, 0.1, 0.5), 2.9, 1e-12);
  EXPECT_NEAR(classification_loss(1, 2, 7, 0.3, 0.0), combined_supervised_loss(1, 2, 0.3), 1e-12);
  EXPECT_THROW(classification_grad(1, 2, 2, 0.0, -0.1), Error);
}

TEST(Losses, AlphaStaysInsideUnitInterval) {
  for (double l : {-40.0, -5.0, 0.0, 5.0, 40.0}) {
    double a = sigmoid(l);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
  EXPECT_NEAR(sigmoid(logit(0.1)), 0.1, 1e-12);
  EXPECT_THROW(logit(1.0), Error);
}

TEST(Trainer, BatchOfTwoHasOneNegativeEach) {
  auto enc = small_encoder(10);
  TrainConfig cfg;
  cfg.batch_size = 2;
  cfg.queue_capacity = 8;
  ContrastiveTrainer t(enc, cfg);
  auto data = two_class_corpus(2, 1);
  auto& key = t.encoders().key;
  Vec q0 = t.encoders().query.embed(data[0].query_ids).cast<double>();
  Vec k0 = key.embed(data[0].key_ids).cast<double>();
  Vec k1 = key.embed(data[1].key_ids).cast<double>();
  Vec q1 = t.encoders().query.embed(data[1].query_ids).cast<double>();
  Vec k0b = key.embed(data[0].key_ids).cast<double>();
  double expect = 0.5 * (info_nce(q0, k0, {k1}, 0.07) + info_nce(q1, k1, {k0b}, 0.07));
  auto st = t.train_step({data, {}});
  EXPECT_NEAR(st.loss.contrastive, expect, 1e-4);
  EXPECT_EQ(st.queue_len, 2u);
}

TEST(Trainer, QueueLengthArithmetic) {
  TrainConfig cfg;
  cfg.batch_size = 3;
  cfg.queue_capacity = 7;
  ContrastiveTrainer t(small_encoder(10), cfg);
  auto data = two_class_corpus(3, 2);
  std::size_t expected = 0;
  for (int i = 0; i < 4; ++i) {
    expected = std::min<std::size_t>(7, expected + 3);
    EXPECT_EQ(t.train_step({data, {}}).queue_len, expected);
  }
}

TEST(Trainer, RejectsSingleSampleBatch) {
  ContrastiveTrainer t(small_encoder(10), TrainConfig{});
  try {
    t.train_step({two_class_corpus(1, 3), {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BatchTooSmall);
  }
}

TEST(Trainer, KeyFollowsMomentumFormula) {
  TrainConfig cfg;
  cfg.momentum = 0.9;
  ContrastiveTrainer t(small_encoder(10), cfg);
  auto key_before = t.encoders().key.params();
  t.train_step({two_class_corpus(4, 4), {}});
  const auto& q = t.encoders().query.params();
  const auto& k = t.encoders().key.params();
  Mat<float> expect = (0.9 * key_before.token_embedding.cast<double>() +
                       0.1 * q.token_embedding.cast<double>()).cast<float>();
  EXPECT_LE((expect - k.token_embedding).cwiseAbs().maxCoeff(), 1e-6f);
  EXPECT_GT((k.token_embedding - key_before.token_embedding).cwiseAbs().maxCoeff(), 0.0f);
}

TEST(Trainer, LossDecreasesOnTwoClassCorpus) {
  TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.queue_capacity = 32;
  cfg.learning_rate = 1e-3;
  cfg.momentum = 0.99;
  cfg.seed = 7;
  ContrastiveTrainer t(small_encoder(10), cfg);
  auto data = two_class_corpus(64, 5);
  std::vector<double> losses;
  std::mt19937_64 g(1);
  for (int step = 0; step < 100; ++step) {
    std::vector<TrainSample> batch;
    for (int i = 0; i < 8; ++i) batch.push_back(data[g() % data.size()]);
    losses.push_back(t.train_step({batch, {}}).loss.contrastive);
  }
  double early = std::accumulate(losses.begin() + 10, losses.begin() + 30, 0.0) / 20;
  double late = std::accumulate(losses.end() - 20, losses.end(), 0.0) / 20;
  EXPECT_LT(late, early);
}

TEST(Trainer, TrainedEncoderSeesTokenOrder) {
  TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.learning_rate = 1e-3;
  cfg.momentum = 0.99;
  cfg.epochs = 3;
  ContrastiveTrainer t(small_encoder(10), cfg);
  train(t, two_class_corpus(32, 6), {});
  std::vector<std::uint32_t> a{0, 1, 2, 3, 4}, b{4, 3, 2, 1, 0};
  auto ea = t.encoders().query.embed(a), eb = t.encoders().query.embed(b);
  EXPECT_GT((ea - eb).cwiseAbs().maxCoeff(), 1e-6f);
}

TEST(Trainer, ClassifyModeTracksAllLossTerms) {
  TrainConfig cfg;
  cfg.mode = TrainMode::Classify;
  cfg.num_classes = 2;
  cfg.batch_size = 4;
  ContrastiveTrainer t(small_encoder(10), cfg);
  EXPECT_NEAR(t.alpha(), 0.1, 1e-6);
  auto st = t.train_step({two_class_corpus(4, 8), {}});
  ASSERT_TRUE(st.loss.supervised && st.loss.anchor);
  double recomputed = classification_loss(st.loss.contrastive, *st.loss.supervised, *st.loss.anchor,
                                          st.loss.alpha_value, 0.5);
  EXPECT_NEAR(st.loss.total, recomputed, 1e-7);
  EXPECT_NE(t.alpha(), st.loss.alpha_value);
  auto p = t.classify(t.encoders().query.embed({0, 1, 2}).cast<double>());
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
}

TEST(Trainer, SupervisedCloneMode) {
  TrainConfig cfg;
  cfg.mode = TrainMode::SupervisedClone;
  cfg.batch_size = 4;
  ContrastiveTrainer t(small_encoder(10), cfg);
  EXPECT_NEAR(t.alpha(), 0.2, 1e-6);
  auto data = two_class_corpus(4, 9);
  auto st = t.train_step({data, {{0, 2, true}, {0, 1, false}}});
  ASSERT_TRUE(st.loss.supervised);
  EXPECT_NEAR(st.loss.total,
              combined_supervised_loss(st.loss.contrastive, *st.loss.supervised, st.loss.alpha_value), 1e-7);
  double p = t.clone_probability(Vec::Ones(8) / std::sqrt(8.0), Vec::Ones(8) / std::sqrt(8.0));
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
}

TEST(Trainer, CheckpointRestoresState) {
  TrainConfig cfg;
  cfg.mode = TrainMode::Classify;
  cfg.num_classes = 2;
  cfg.batch_size = 4;
  ContrastiveTrainer t(small_encoder(10), cfg);
  t.train_step({two_class_corpus(4, 10), {}});
  auto bytes = t.checkpoint().serialize();
  auto back = ContrastiveTrainer::from_checkpoint(Checkpoint::deserialize(bytes));
  EXPECT_EQ(back.steps(), 1u);
  EXPECT_EQ(back.checkpoint().serialize(), bytes);
}

TEST(Trainer, ConfigJsonRoundTrip) {
  TrainConfig cfg;
  cfg.mode = TrainMode::SupervisedClone;
  cfg.alpha_init = 0.3;
  cfg.seed = 99;
  auto back = TrainConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.to_json(), cfg.to_json());
  nlohmann::json bad = {{"mode", "nope"}};
  EXPECT_THROW(TrainConfig::from_json(bad), Error);
}

TEST(BuildPairs, CardinalityDeterminismAndDifference) {
  std::vector<SourceSnippet> batch{
      {"a", Language::Java, "class A { int f(int x, int y) { int s = x + y; int t = x * y; return s - t; } }", {}},
      {"b", Language::Java,
       "class B { int g(int n) { int s = 0; for (int i = 0; i < n; i++) { s = s + i; } return s; } }", {}}};
  AugmentConfig cfg;
  cfg.rng_seed = 3;
  auto r1 = build_pairs(batch, cfg);
  auto r2 = build_pairs(batch, cfg);
  EXPECT_EQ(r1.pairs.size() + r1.dropped.size(), 2u);
  ASSERT_EQ(r1.pairs.size(), r2.pairs.size());
  for (std::size_t i = 0; i < r1.pairs.size(); ++i) {
    EXPECT_EQ(r1.pairs[i].query.tokens, r2.pairs[i].query.tokens);
    EXPECT_EQ(r1.pairs[i].key.tokens, r2.pairs[i].key.tokens);
    EXPECT_NE(r1.pairs[i].query.tokens, r1.pairs[i].key.tokens);
  }
}
