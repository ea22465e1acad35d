#include "transformcode/io/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"
#include "transformcode/extract/extract.hpp"

namespace tcode {

nlohmann::json augment_config_to_json(const AugmentConfig& cfg) {
  nlohmann::ordered_json j;
  std::vector<std::string> enabled;
  for (auto k : cfg.enabled) enabled.emplace_back(transform_name(k));
  j["enabled"] = enabled;
  nlohmann::ordered_json kind = nlohmann::ordered_json::object(), site = nlohmann::ordered_json::object();
  for (auto& [k, p] : cfg.per_kind_probability) kind[std::string(transform_name(k))] = p;
  for (auto& [k, p] : cfg.site_probability) site[std::string(transform_name(k))] = p;
  j["kind_probability"] = kind;
  j["site_probability"] = site;
  j["seed"] = cfg.rng_seed;
  j["max_rounds"] = cfg.max_rounds;
  return j;
}

AugmentConfig augment_config_from_json(const nlohmann::json& j) {
  AugmentConfig cfg;
  auto kind_of = [](const std::string& name) {
    auto k = transform_from_name(name);
    if (!k) fail(ErrorCode::InvalidConfig, "unknown transformation " + name);
    return *k;
  };
  if (j.contains("enabled")) {
    cfg.enabled.clear();
    for (const auto& n : j.at("enabled")) cfg.enabled.insert(kind_of(n.get<std::string>()));
  }
  if (j.contains("kind_probability"))
    for (auto& [k, v] : j.at("kind_probability").items()) cfg.per_kind_probability[kind_of(k)] = v.get<double>();
  if (j.contains("site_probability"))
    for (auto& [k, v] : j.at("site_probability").items()) cfg.site_probability[kind_of(k)] = v.get<double>();
  cfg.rng_seed = j.value("seed", cfg.rng_seed);
  cfg.max_rounds = j.value("max_rounds", cfg.max_rounds);
  cfg.validate();
  return cfg;
}

void RunConfig::set_seed(std::uint64_t seed) {
  augment.rng_seed = seed;
  train.seed = seed;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["snippets"] = snippets.string();
  j["pairs"] = pairs ? nlohmann::ordered_json(pairs->string()) : nlohmann::ordered_json(nullptr);
  j["out"] = out.string();
  j["workers"] = workers;
  j["anchor_views"] = anchor_views;
  j["augment"] = augment_config_to_json(augment);
  j["tokenizer"] = {{"max_size", tokenizer.max_size},
                    {"min_frequency", tokenizer.min_frequency},
                    {"continuation_marker", tokenizer.continuation_marker}};
  j["encoder"] = encoder.to_json();
  j["train"] = train.to_json();
  j["eval"] = {{"threshold", eval.threshold}};
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) fail(ErrorCode::InvalidConfig, "config must be a JSON object");
    if (j.contains("snippets")) c.snippets = j.at("snippets").get<std::string>();
    if (j.contains("pairs") && !j.at("pairs").is_null()) c.pairs = j.at("pairs").get<std::string>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    c.workers = j.value("workers", c.workers);
    c.anchor_views = j.value("anchor_views", c.anchor_views);
    if (j.contains("augment")) c.augment = augment_config_from_json(j.at("augment"));
    if (j.contains("tokenizer")) {
      const auto& t = j.at("tokenizer");
      c.tokenizer.max_size = t.value("max_size", c.tokenizer.max_size);
      c.tokenizer.min_frequency = t.value("min_frequency", c.tokenizer.min_frequency);
      c.tokenizer.continuation_marker = t.value("continuation_marker", c.tokenizer.continuation_marker);
    }
    if (j.contains("encoder")) c.encoder = EncoderConfig::from_json(j.at("encoder"));
    if (j.contains("train")) c.train = TrainConfig::from_json(j.at("train"));
    if (j.contains("eval")) c.eval.threshold = j.at("eval").value("threshold", c.eval.threshold);
    if (j.contains("seed")) c.set_seed(j.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
  }
  c.eval.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  return from_json(j);
}

Vocabulary train_tokenizer(const std::vector<PreprocessedSample>& samples, const VocabConfig& cfg) {
  std::vector<TokenSequence> corpus;
  corpus.reserve(2 * samples.size());
  for (const auto& s : samples) {
    corpus.push_back({s.tokens_normalized, s.id, true});
    corpus.push_back({s.tokens_anchor, s.id, true});
    for (const auto& extra : s.extra_anchors) corpus.push_back({extra, s.id, true});
  }
  return train_vocab(corpus, cfg);
}

std::vector<std::uint32_t> model_ids(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                                     std::size_t max_length) {
  auto ids = encode(TokenSequence{tokens, {}, true}, vocab);
  if (ids.size() > max_length) ids.resize(max_length);
  return ids;
}

TrainingData prepare_training_data(const std::vector<PreprocessedSample>& samples,
                                   const std::vector<PairRecord>& pairs, const Vocabulary& vocab,
                                   const EncoderConfig& encoder, const TrainConfig& train) {
  TrainingData d;
  const auto max_len = static_cast<std::size_t>(encoder.max_sequence_length);
  if (train.mode == TrainMode::Classify) {
    std::set<std::string> names;
    for (const auto& s : samples) {
      if (!s.label) fail(ErrorCode::MalformedRecord, "sample " + s.id + " has no label");
      names.insert(*s.label);
    }
    d.labels.assign(names.begin(), names.end());
  }
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& s : samples) {
    TrainSample t;
    t.id = s.id;
    t.query_ids = model_ids(s.tokens_normalized, vocab, max_len);
    t.key_ids = model_ids(s.tokens_anchor, vocab, max_len);
    for (const auto& extra : s.extra_anchors) t.extra_key_ids.push_back(model_ids(extra, vocab, max_len));
    if (train.mode == TrainMode::Classify)
      t.label = static_cast<int>(std::lower_bound(d.labels.begin(), d.labels.end(), *s.label) - d.labels.begin());
    index.emplace(s.id, d.samples.size());
    d.samples.push_back(std::move(t));
  }
  for (const auto& p : pairs) {
    auto a = index.find(p.id1), b = index.find(p.id2);
    if (a == index.end() || b == index.end()) {
      ++d.skipped_pairs;
      continue;
    }
    d.pairs.push_back({a->second, b->second, p.clone});
  }
  return d;
}

Checkpoint Model::checkpoint() const {
  Checkpoint c = trainer.checkpoint();
  std::ostringstream v;
  vocab.write(v);
  c.meta["vocabulary"] = v.str();
  c.meta["labels"] = labels;
  return c;
}

Model Model::from_checkpoint(const Checkpoint& ckpt) {
  if (!ckpt.meta.contains("vocabulary")) fail(ErrorCode::MalformedRecord, "checkpoint has no vocabulary");
  std::istringstream v(ckpt.meta.at("vocabulary").get<std::string>());
  return Model{ContrastiveTrainer::from_checkpoint(ckpt), Vocabulary::read(v),
               ckpt.meta.value("labels", std::vector<std::string>{})};
}

void Model::save(const std::filesystem::path& path) const { write_file(path, checkpoint().serialize()); }

Model Model::load(const std::filesystem::path& path) {
  return from_checkpoint(Checkpoint::deserialize(read_file(path)));
}

TrainingRun run_training(const std::vector<PreprocessedSample>& samples,
                         const std::vector<PairRecord>& pairs, const Vocabulary& vocab,
                         const RunConfig& cfg, const std::function<void(const StepStats&)>& on_step,
                         const std::function<void(std::size_t, const Model&)>& on_epoch_end) {
  EncoderConfig enc = cfg.encoder;
  enc.vocab_size = static_cast<int>(vocab.size());
  enc = enc.resolved();
  TrainConfig train_cfg = cfg.train;
  auto data = prepare_training_data(samples, pairs, vocab, enc, train_cfg);
  if (train_cfg.mode == TrainMode::Classify && train_cfg.num_classes == 0)
    train_cfg.num_classes = data.labels.size();
  Model model{ContrastiveTrainer(enc, train_cfg), vocab, data.labels};
  TrainSummary summary = train(model.trainer, data.samples, data.pairs, on_step, [&](std::size_t epoch) {
    if (on_epoch_end) on_epoch_end(epoch, model);
  });
  return {std::move(model), summary};
}

EmbeddingResult embed_snippets(const Model& model, const std::vector<SourceSnippet>& snippets,
                               std::size_t workers) {
  const auto& enc = model.encoder();
  const auto max_len = static_cast<std::size_t>(enc.config().max_sequence_length);
  std::vector<std::optional<EvalVec>> slots(snippets.size());
  std::vector<std::optional<SampleFailure>> failures(snippets.size());
  parallel_for(snippets.size(), workers, [&](std::size_t i) {
    try {
      auto tokens = extract_path(parse(normalize(snippets[i]).as_snippet()), snippets[i].id, true);
      slots[i] = enc.embed(model_ids(tokens.tokens, model.vocab, max_len)).cast<double>();
    } catch (const Error& e) {
      failures[i] = SampleFailure{snippets[i].id, std::string(error_code_name(e.code())), e.what()};
    }
  });
  EmbeddingResult r;
  for (std::size_t i = 0; i < snippets.size(); ++i) {
    if (slots[i]) {
      r.ids.push_back(snippets[i].id);
      r.embeddings.push_back(std::move(*slots[i]));
    }
    if (failures[i]) r.failures.push_back(std::move(*failures[i]));
  }
  return r;
}

CloneEvaluation evaluate_clones(const EmbeddingResult& embedded, const std::vector<PairRecord>& pairs,
                                const CloneEvalConfig& cfg) {
  cfg.validate();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < embedded.ids.size(); ++i) index.emplace(embedded.ids[i], i);
  CloneEvaluation out;
  for (const auto& p : pairs) {
    auto a = index.find(p.id1), b = index.find(p.id2);
    if (a == index.end() || b == index.end()) {
      ++out.skipped_pairs;
      continue;
    }
    double sim = cosine_similarity(embedded.embeddings[a->second], embedded.embeddings[b->second]);
    out.decisions.push_back({p.id1, p.id2, sim, sim >= cfg.threshold, p.clone});
  }
  out.report = compute_metrics(tally(out.decisions));
  return out;
}

}  // namespace tcode
