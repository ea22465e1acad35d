#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "gradcheck.hpp"
#include "transformcode/encoder/checkpoint.hpp"
#include "transformcode/encoder/encoder.hpp"
#include "transformcode/error.hpp"

using namespace tcode;

namespace {

EncoderConfig tiny(int vocab = 10) {
  EncoderConfig c;
  c.n_layers = 1;
  c.d_model = 8;
  c.n_heads = 1;
  c.max_relative_distance = 4;
  c.vocab_size = vocab;
  c.mlp_dims = {8, 6};
  c.ffn_dim = 16;
  return c;
}

}  // namespace

TEST(Encoder, ZeroInputGivesZeroLogits) {
  Encoder<double> enc(tiny(), 1);
  Mat<double> x = Mat<double>::Zero(5, 8);
  EXPECT_EQ(enc.attention_logits(x, 0, 0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Encoder, LogitsByDirectSubstitution) {
  EncoderConfig c;
  c.n_layers = 1;
  c.d_model = 1;
  c.n_heads = 1;
  c.max_relative_distance = 1;
  c.vocab_size = 2;
  c.mlp_dims = {1};
  auto p = EncoderParams<double>::zeros(c);
  p.layers[0].wq(0, 0) = 2.0;
  p.layers[0].wk(0, 0) = 3.0;
  p.layers[0].rel_k << 0.1, 0.2, 0.3;
  Encoder<double> enc(c, p);
  Mat<double> x(2, 1);
  x << 1.0, 2.0;
  auto e = enc.attention_logits(x, 0, 0);
  // q = 2x, k = 3x; a[-1]=0.1, a[0]=0.2, a[+1]=0.3
  EXPECT_NEAR(e(0, 0), 2 * 3 + 2 * 0.2, 1e-12);
  EXPECT_NEAR(e(0, 1), 2 * 6 + 2 * 0.3, 1e-12);
  EXPECT_NEAR(e(1, 0), 4 * 3 + 4 * 0.1, 1e-12);
  EXPECT_NEAR(e(1, 1), 4 * 6 + 4 * 0.2, 1e-12);
}

TEST(Encoder, ClippingUsesBoundaryEntries) {
  const int k = 3;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      if (j - i >= k) EXPECT_EQ(rel_index(i, j, k), 2 * k);
      if (i - j >= k) EXPECT_EQ(rel_index(i, j, k), 0);
      if (std::abs(i - j) < k) EXPECT_EQ(rel_index(i, j, k), j - i + k);
    }
  // Same offset, same entry.
  EXPECT_EQ(rel_index(2, 4, k), rel_index(7, 9, k));
}

TEST(Encoder, DegenerateLayerReturnsEmbedding) {
  auto c = tiny(3);
  auto p = EncoderParams<double>::zeros(c);
  p.token_embedding.row(1) << 1, -1, 1, -1, 1, -1, 1, -1;
  for (auto& L : p.layers) {
    L.ln1_gain.setOnes();
    L.ln2_gain.setOnes();
  }
  p.head_w[0].setIdentity();
  p.head_w[1].setRandom();
  Encoder<double> enc(c, p);
  auto h = enc.hidden({1});
  EXPECT_LT((h.row(0) - p.token_embedding.row(1)).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Encoder, OutputShape) {
  Encoder<float> enc(tiny(), 3);
  for (std::size_t n : {1u, 2u, 7u, 40u}) {
    std::vector<std::uint32_t> ids(n, 2);
    auto h = enc.hidden(ids);
    EXPECT_EQ(h.rows(), static_cast<Eigen::Index>(n));
    EXPECT_EQ(h.cols(), 8);
  }
}

TEST(Encoder, InputErrors) {
  auto c = tiny();
  c.max_sequence_length = 4;
  Encoder<float> enc(c, 3);
  auto code = [&](std::vector<std::uint32_t> ids) {
    try {
      enc.embed(ids);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Usage;
  };
  EXPECT_EQ(code({}), ErrorCode::EmptySequence);
  EXPECT_EQ(code({1, 2, 3, 4, 5}), ErrorCode::SequenceTooLong);
  EXPECT_EQ(code({10}), ErrorCode::IdOutOfRange);
}

TEST(Encoder, ProjectSingleAffineHasNoRelu) {
  auto c = tiny();
  c.mlp_dims = {2};
  auto p = EncoderParams<double>::zeros(c);
  p.head_w[0](0, 0) = -1.0;
  p.head_w[0](1, 1) = 2.0;
  p.head_b[0] << 0.5, -3.0;
  Encoder<double> enc(c, p);
  RowVec<double> x = RowVec<double>::Zero(8);
  x(0) = 2.0;
  x(1) = 1.0;
  auto z = enc.project(x);
  EXPECT_DOUBLE_EQ(z(0), -1.5);
  EXPECT_DOUBLE_EQ(z(1), -1.0);
}

TEST(Encoder, ProjectZeroWeightsGivesLastBias) {
  auto c = tiny();
  c.mlp_dims = {3, 2};
  auto p = EncoderParams<double>::zeros(c);
  p.head_b[0] << 1, -2, 3;
  p.head_b[1] << -4, 5;
  Encoder<double> enc(c, p);
  auto z = enc.project(RowVec<double>::Random(8));
  EXPECT_DOUBLE_EQ(z(0), -4);
  EXPECT_DOUBLE_EQ(z(1), 5);
}

TEST(Encoder, ProjectTwoLayerHandExample) {
  auto c = tiny();
  c.d_model = 2;
  c.n_heads = 1;
  c.mlp_dims = {2, 2};
  auto p = EncoderParams<double>::zeros(c);
  p.head_w[0] << 1, 2, -3, 1;
  p.head_b[0] << 0.5, 0.5;
  p.head_w[1] << 1, 1, 2, -1;
  p.head_b[1] << 0, 1;
  Encoder<double> enc(c, p);
  RowVec<double> x(2);
  x << 1, 1;
  // h1 = relu([1+2+0.5, -3+1+0.5]) = [3.5, 0]; z = [3.5, 7+1]
  auto z = enc.project(x);
  EXPECT_DOUBLE_EQ(z(0), 3.5);
  EXPECT_DOUBLE_EQ(z(1), 8.0);
}

TEST(Encoder, ProjectIsNonlinear) {
  Encoder<double> enc(tiny(), 5);
  std::mt19937 rng(1);
  std::normal_distribution<double> nd;
  bool violated = false;
  for (int t = 0; t < 20 && !violated; ++t) {
    RowVec<double> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a(i) = nd(rng);
      b(i) = nd(rng);
    }
    auto lhs = enc.project(a + b);
    auto rhs = enc.project(a) + enc.project(b) - enc.project(RowVec<double>::Zero(8));
    violated = (lhs - rhs).norm() > 1e-6;
  }
  EXPECT_TRUE(violated);
}

TEST(Encoder, EmbeddingIsUnitNormAndDeterministic) {
  Encoder<float> enc(tiny(), 11);
  std::vector<std::uint32_t> ids = {1, 4, 2, 9, 9, 0};
  auto a = enc.embed(ids);
  auto b = enc.embed(ids);
  EXPECT_NEAR(a.norm(), 1.0f, 1e-6f);
  EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(float) * a.size()), 0);
}

TEST(Encoder, LayerNormStatistics) {
  Encoder<double> enc(tiny(), 13);
  auto c = enc.forward({1, 2, 3, 4, 5});
  for (const auto& L : c.layers)
    for (const Mat<double>* xhat : {&L.xhat1, &L.xhat2})
      for (Eigen::Index r = 0; r < xhat->rows(); ++r) {
        double mean = xhat->row(r).mean();
        double var = (xhat->row(r).array() - mean).square().mean();
        EXPECT_NEAR(mean, 0.0, 1e-5);
        EXPECT_NEAR(var, 1.0, 1e-4);
      }
}

TEST(Encoder, GradientsMatchFiniteDifferences) {
  for (bool rel_v : {true, false}) {
    auto c = tiny();
    c.mlp_dims = {8, 5};
    c.relative_values = rel_v;
    auto report = test::check_encoder_gradients(c, 21, test::dot_loss(5, 3));
    for (const auto& [name, err] : report.errors) EXPECT_LE(err, 1e-3) << name << " rel_v=" << rel_v;
  }
}

TEST(Encoder, CheckpointRoundTripIsBitExact) {
  Encoder<float> enc(tiny(), 17);
  Checkpoint c;
  c.meta["encoder"] = enc.config().to_json();
  export_params(enc.params(), "encoder/", c);
  std::string bytes = c.serialize();
  auto back = Checkpoint::deserialize(bytes);
  EXPECT_EQ(back.serialize(), bytes);
  auto enc2 = encoder_from_checkpoint(back);
  EXPECT_EQ(enc2.config(), enc.config());
  std::vector<std::uint32_t> ids = {3, 1, 4, 1, 5};
  auto a = enc.embed(ids);
  auto b = enc2.embed(ids);
  EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(float) * a.size()), 0);
}

TEST(Encoder, CheckpointRejectsCorruption) {
  Encoder<float> enc(tiny(), 17);
  Checkpoint c;
  c.meta["encoder"] = enc.config().to_json();
  export_params(enc.params(), "encoder/", c);
  std::string bytes = c.serialize();
  EXPECT_THROW(Checkpoint::deserialize(bytes.substr(0, bytes.size() - 3)), Error);
  std::string wrong = bytes;
  wrong[4] = 7;
  try {
    Checkpoint::deserialize(wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedVersion);
  }
  auto other = tiny();
  other.d_model = 4;
  other.mlp_dims = {4, 6};
  EXPECT_THROW(import_params<float>(other, "encoder/", c), Error);
}
