#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "transformcode/augment/augment.hpp"
#include "transformcode/encoder/checkpoint.hpp"
#include "transformcode/extract/extract.hpp"
#include "transformcode/trainer/losses.hpp"
#include "transformcode/trainer/moco.hpp"

namespace tcode {

enum class TrainMode { Unsupervised, SupervisedClone, Classify };

std::string_view train_mode_name(TrainMode mode) noexcept;
std::optional<TrainMode> train_mode_from_name(std::string_view name) noexcept;

struct TrainConfig {
  TrainMode mode = TrainMode::Unsupervised;
  double temperature = 0.07;
  std::size_t batch_size = 32;
  std::size_t epochs = 10;
  double learning_rate = 1e-4;
  double momentum = 0.999;
  std::size_t queue_capacity = 4096;
  /// Unset means 0.2 for SupervisedClone and 0.1 for Classify.
  std::optional<double> alpha_init;
  double anchor_coefficient = 0.5;
  std::size_t num_classes = 0;
  std::uint64_t seed = 0;
  /// Mean per-dimension variance of a batch of query embeddings below this
  /// counts as collapse.
  double collapse_floor = 1e-4;
  /// Checkpoint every E epochs; 0 writes only the final one.
  std::size_t checkpoint_every = 0;

  double resolved_alpha_init() const;
  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

/// Query and key token sequences for one snippet.
struct AnchorPair {
  std::string id;
  TokenSequence query;
  TokenSequence key;
  std::optional<int> label;
};

struct BuildPairsResult {
  std::vector<AnchorPair> pairs;
  /// Ids whose anchor came out unchanged.
  std::vector<std::string> dropped;
};

/// normalize -> compose_anchor -> extract both sides.
BuildPairsResult build_pairs(const std::vector<SourceSnippet>& batch, const AugmentConfig& cfg);

struct TrainSample {
  std::string id;
  std::vector<std::uint32_t> query_ids;
  std::vector<std::uint32_t> key_ids;
  /// Further key views; epoch e uses view (e - 1) mod (1 + extra count).
  std::vector<std::vector<std::uint32_t>> extra_key_ids;
  int label = -1;
};

/// Indices into TrainBatch::samples.
struct LabeledPair {
  std::size_t a = 0;
  std::size_t b = 0;
  bool clone = false;
};

struct TrainBatch {
  std::vector<TrainSample> samples;
  std::vector<LabeledPair> pairs;
};

struct StepStats {
  std::size_t step = 0;
  std::size_t epoch = 0;
  LossBreakdown loss;
  std::size_t queue_len = 0;
  double embedding_variance = 0;
  double min_dimension_variance = 0;
  bool collapse = false;

  /// {"step","loss_total","loss_contrastive","loss_supervised"?,"loss_anchor"?,"alpha","queue_len",...}
  nlohmann::json to_json() const;
};

class ContrastiveTrainer {
 public:
  ContrastiveTrainer(const EncoderConfig& encoder, const TrainConfig& cfg);

  /// One gradient step on the query side, then momentum update and enqueue.
  StepStats train_step(const TrainBatch& batch);

  const MomentumPair& encoders() const { return pair_; }
  MomentumPair& encoders() { return pair_; }
  const NegativeQueue& queue() const { return queue_; }
  const TrainConfig& config() const { return cfg_; }
  double alpha() const { return sigmoid(static_cast<double>(alpha_logit_(0, 0))); }
  std::size_t steps() const { return steps_; }
  const Mat<float>& classifier_weight() const { return cls_w_; }
  const Mat<float>& classifier_bias() const { return cls_b_; }

  /// Query encoder under "encoder/", key under "key/", heads and alpha.
  Checkpoint checkpoint() const;
  static ContrastiveTrainer from_checkpoint(const Checkpoint& ckpt);

  /// Class distribution for an embedding (Classify mode).
  Vec classify(const Vec& embedding) const;
  /// Clone probability for a pair of embeddings (SupervisedClone mode).
  double clone_probability(const Vec& a, const Vec& b) const;

 private:
  MomentumPair pair_;
  NegativeQueue queue_;
  TrainConfig cfg_;
  Adam adam_;
  Mat<float> cls_w_, cls_b_;
  Mat<float> alpha_logit_;
  std::size_t steps_ = 0;
};

struct TrainSummary {
  std::size_t steps = 0;
  std::size_t epochs = 0;
  std::size_t collapse_events = 0;
  double final_loss = 0;
};

/// Epoch loop with a per-epoch shuffle seeded from cfg.seed. In
/// SupervisedClone mode batches are drawn from `pairs`, otherwise from
/// `samples`. `on_epoch_end` may write checkpoints.
TrainSummary train(ContrastiveTrainer& trainer, const std::vector<TrainSample>& samples,
                   const std::vector<LabeledPair>& pairs,
                   const std::function<void(const StepStats&)>& on_step = {},
                   const std::function<void(std::size_t epoch)>& on_epoch_end = {});

}  // namespace tcode
