#pragma once

#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "transformcode/eval/metrics.hpp"
#include "transformcode/io/dataset.hpp"
#include "transformcode/io/preprocess.hpp"
#include "transformcode/tokenizer/vocabulary.hpp"
#include "transformcode/trainer/trainer.hpp"

namespace tcode {

struct RunConfig {
  std::filesystem::path snippets;
  std::optional<std::filesystem::path> pairs;
  std::filesystem::path out;
  std::size_t workers = 1;
  /// Anchors stored per sample; training cycles through them by epoch.
  std::size_t anchor_views = 1;
  AugmentConfig augment;
  VocabConfig tokenizer;
  EncoderConfig encoder;
  TrainConfig train;
  CloneEvalConfig eval;

  /// Seeds both the augmenter and the trainer.
  void set_seed(std::uint64_t seed);
  nlohmann::json to_json() const;
  /// Missing keys keep their defaults. Throws InvalidConfig.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
};

nlohmann::json augment_config_to_json(const AugmentConfig& cfg);
AugmentConfig augment_config_from_json(const nlohmann::json& j);

/// Trains on both token lists of every sample.
Vocabulary train_tokenizer(const std::vector<PreprocessedSample>& samples, const VocabConfig& cfg);

/// Subword ids, cut to at most `max_length`.
std::vector<std::uint32_t> model_ids(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                                     std::size_t max_length);

struct TrainingData {
  std::vector<TrainSample> samples;
  std::vector<LabeledPair> pairs;
  /// Class names in index order (Classify mode).
  std::vector<std::string> labels;
  /// Pairs naming a sample that is not present.
  std::size_t skipped_pairs = 0;
};

/// Encodes samples and resolves pairs and labels for the configured mode.
TrainingData prepare_training_data(const std::vector<PreprocessedSample>& samples,
                                   const std::vector<PairRecord>& pairs, const Vocabulary& vocab,
                                   const EncoderConfig& encoder, const TrainConfig& train);

/// A trained model as stored on disk: trainer state plus the vocabulary and
/// class names.
struct Model {
  ContrastiveTrainer trainer;
  Vocabulary vocab;
  std::vector<std::string> labels;

  Checkpoint checkpoint() const;
  static Model from_checkpoint(const Checkpoint& ckpt);
  void save(const std::filesystem::path& path) const;
  static Model load(const std::filesystem::path& path);

  const Encoder<float>& encoder() const { return trainer.encoders().query; }
};

struct TrainingRun {
  Model model;
  TrainSummary summary;
};

/// The encoder's vocab_size is taken from `vocab`.
TrainingRun run_training(const std::vector<PreprocessedSample>& samples,
                         const std::vector<PairRecord>& pairs, const Vocabulary& vocab,
                         const RunConfig& cfg,
                         const std::function<void(const StepStats&)>& on_step = {},
                         const std::function<void(std::size_t, const Model&)>& on_epoch_end = {});

struct EmbeddingResult {
  std::vector<std::string> ids;
  std::vector<EvalVec> embeddings;
  std::vector<SampleFailure> failures;
};

/// normalize -> extract -> encode -> embed, in input order.
EmbeddingResult embed_snippets(const Model& model, const std::vector<SourceSnippet>& snippets,
                               std::size_t workers = 1);

struct CloneEvaluation {
  std::vector<PairDecision> decisions;
  MetricsReport report;
  std::size_t skipped_pairs = 0;
};

CloneEvaluation evaluate_clones(const EmbeddingResult& embedded, const std::vector<PairRecord>& pairs,
                                const CloneEvalConfig& cfg);

}  // namespace tcode
