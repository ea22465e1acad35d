#include <chrono>
#include <cstdio>
#include <iostream>

#include "acceptance.hpp"
#include "synthetic.hpp"
#include "test_support.hpp"
#include "transformcode/io/pipeline.hpp"

namespace tcode::acceptance {
namespace {

constexpr std::size_t kVariantsPerClass = 50;
constexpr std::size_t kTrainPerClass = 30;
constexpr std::size_t kMaxEpochs = 50;
constexpr double kMaxMinutes = 15.0;
constexpr double kThreshold = 0.75;
constexpr double kMinF1 = 0.90;
constexpr std::size_t kAnchorViews = 50;
constexpr std::size_t kMaxRounds = 16;

RunConfig desk_config() {
  RunConfig cfg;
  cfg.set_seed(1);
  cfg.anchor_views = kAnchorViews;
  cfg.augment.max_rounds = kMaxRounds;
  cfg.encoder.n_layers = 2;
  cfg.encoder.d_model = 64;
  cfg.encoder.n_heads = 4;
  cfg.train.batch_size = 32;
  cfg.train.queue_capacity = 512;
  cfg.train.temperature = 0.07;
  cfg.train.momentum = 0.999;
  cfg.train.epochs = kMaxEpochs;
  cfg.train.learning_rate = 1e-3;
  cfg.eval.threshold = kThreshold;
  return cfg;
}

Verdict desk_scale() {
  auto start = std::chrono::steady_clock::now();
  auto corpus = test::make_variant_corpus(test::data_path("synthetic"), kVariantsPerClass, 1);
  std::vector<SourceSnippet> train_set, test_set;
  for (const auto& cls : corpus.variants)
    for (std::size_t i = 0; i < cls.size(); ++i) (i < kTrainPerClass ? train_set : test_set).push_back(cls[i]);

  RunConfig cfg = desk_config();
  auto pre = preprocess(train_set, cfg.augment, 1, cfg.anchor_views);
  if (!pre.failures.empty()) return {false, std::to_string(pre.failures.size()) + " training samples failed"};
  Vocabulary vocab = train_tokenizer(pre.samples, cfg.tokenizer);

  double min_variance = 1e9;
  auto run = run_training(pre.samples, {}, vocab, cfg, [&](const StepStats& st) {
    if (st.epoch > 1) min_variance = std::min(min_variance, st.embedding_variance);
  });

  auto embedded = embed_snippets(run.model, test_set, 1);
  if (!embedded.failures.empty())
    return {false, std::to_string(embedded.failures.size()) + " test snippets could not be embedded"};
  auto pairs = test::all_pairs(test_set);
  auto eval = evaluate_clones(embedded, pairs, cfg.eval);
  double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;

  const auto& r = eval.report;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%zu train / %zu test snippets, %zu held-out pairs, vocab %zu, %zu steps in %zu epochs, "
                "F1 %.4f (P %.4f R %.4f acc %.4f) at T=%.2f, collapse events %zu, min variance %.3g, "
                "%.1f min",
                train_set.size(), test_set.size(), pairs.size(), vocab.size(), run.summary.steps,
                run.summary.epochs, r.f1, r.precision, r.recall, r.accuracy, kThreshold,
                run.summary.collapse_events, min_variance, minutes);
  bool pass = r.f1 >= kMinF1 && run.summary.collapse_events == 0 && run.summary.epochs <= kMaxEpochs &&
              minutes <= kMaxMinutes;
  return {pass, buf};
}

Register r8(8, "desk-scale end-to-end clone detection", desk_scale);

}  // namespace
}  // namespace tcode::acceptance
