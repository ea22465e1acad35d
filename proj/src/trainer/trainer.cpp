#include "transformcode/trainer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"
#include "transformcode/util/rng.hpp"

namespace tcode {

namespace {

Vec to_double(const RowVec<float>& v) { return v.cast<double>(); }
RowVec<float> to_float(const Vec& v) { return v.cast<float>(); }

}  // namespace

std::string_view train_mode_name(TrainMode mode) noexcept {
  switch (mode) {
    case TrainMode::Unsupervised: return "unsupervised";
    case TrainMode::SupervisedClone: return "supervised-clone";
    case TrainMode::Classify: return "supervised-classify";
  }
  return "unsupervised";
}

std::optional<TrainMode> train_mode_from_name(std::string_view name) noexcept {
  for (auto m : {TrainMode::Unsupervised, TrainMode::SupervisedClone, TrainMode::Classify})
    if (train_mode_name(m) == name) return m;
  return std::nullopt;
}

double TrainConfig::resolved_alpha_init() const {
  if (alpha_init) return *alpha_init;
  return mode == TrainMode::Classify ? 0.1 : 0.2;
}

void TrainConfig::validate() const {
  if (!(temperature > 0)) fail(ErrorCode::NonPositiveTemperature, "temperature must be positive");
  if (batch_size < 2) fail(ErrorCode::BatchTooSmall, "batch_size must be at least 2");
  if (!(momentum >= 0 && momentum < 1)) fail(ErrorCode::InvalidConfig, "momentum must lie in [0, 1)");
  if (!(learning_rate > 0)) fail(ErrorCode::InvalidConfig, "learning_rate must be positive");
  double a = resolved_alpha_init();
  if (!(a > 0 && a < 1)) fail(ErrorCode::InvalidConfig, "alpha_init must lie in (0, 1)");
  if (anchor_coefficient < 0) fail(ErrorCode::InvalidConfig, "anchor_coefficient must be >= 0");
  if (mode == TrainMode::Classify && num_classes < 2)
    fail(ErrorCode::InvalidConfig, "classification needs num_classes >= 2");
}

nlohmann::json TrainConfig::to_json() const {
  nlohmann::json j = {{"mode", train_mode_name(mode)},
                      {"temperature", temperature},
                      {"batch_size", batch_size},
                      {"epochs", epochs},
                      {"learning_rate", learning_rate},
                      {"momentum", momentum},
                      {"queue_capacity", queue_capacity},
                      {"anchor_coefficient", anchor_coefficient},
                      {"num_classes", num_classes},
                      {"seed", seed},
                      {"collapse_floor", collapse_floor},
                      {"checkpoint_every", checkpoint_every}};
  j["alpha_init"] = alpha_init ? nlohmann::json(*alpha_init) : nlohmann::json(nullptr);
  return j;
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  try {
    if (j.contains("mode")) {
      auto m = train_mode_from_name(j.at("mode").get<std::string>());
      if (!m) fail(ErrorCode::InvalidConfig, "unknown training mode " + j.at("mode").dump());
      c.mode = *m;
    }
    c.temperature = j.value("temperature", c.temperature);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.epochs = j.value("epochs", c.epochs);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.momentum = j.value("momentum", c.momentum);
    c.queue_capacity = j.value("queue_capacity", c.queue_capacity);
    c.anchor_coefficient = j.value("anchor_coefficient", c.anchor_coefficient);
    c.num_classes = j.value("num_classes", c.num_classes);
    c.seed = j.value("seed", c.seed);
    c.collapse_floor = j.value("collapse_floor", c.collapse_floor);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    if (j.contains("alpha_init") && !j.at("alpha_init").is_null())
      c.alpha_init = j.at("alpha_init").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("train config: ") + e.what());
  }
  return c;
}

BuildPairsResult build_pairs(const std::vector<SourceSnippet>& batch, const AugmentConfig& cfg) {
  BuildPairsResult out;
  for (const auto& s : batch) {
    NormalizedSnippet n = normalize(s);
    AugmentConfig c = cfg;
    c.language = s.language;
    AnchorSnippet anchor = compose_anchor(n, c);
    if (anchor.is_identity()) {
      out.dropped.push_back(s.id);
      continue;
    }
    AnchorPair p;
    p.id = s.id;
    p.query = extract_path(parse(n.as_snippet()), s.id, true);
    p.key = extract_path(parse(normalize(SourceSnippet{s.id, s.language, anchor.text, s.label}).as_snippet()), s.id, true);
    if (p.query.tokens == p.key.tokens) {
      out.dropped.push_back(s.id);
      continue;
    }
    out.pairs.push_back(std::move(p));
  }
  return out;
}

nlohmann::json StepStats::to_json() const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["epoch"] = epoch;
  j["loss_total"] = loss.total;
  j["loss_contrastive"] = loss.contrastive;
  if (loss.supervised) j["loss_supervised"] = *loss.supervised;
  if (loss.anchor) j["loss_anchor"] = *loss.anchor;
  j["alpha"] = loss.alpha_value;
  j["queue_len"] = queue_len;
  j["embedding_variance"] = embedding_variance;
  j["min_dimension_variance"] = min_dimension_variance;
  if (collapse) j["warning"] = "collapse";
  return j;
}

ContrastiveTrainer::ContrastiveTrainer(const EncoderConfig& encoder, const TrainConfig& cfg)
    : pair_(encoder, derive_seed(cfg.seed, "encoder"), cfg.momentum),
      queue_(cfg.queue_capacity),
      cfg_(cfg),
      adam_(Adam::Config{cfg.learning_rate}) {
  cfg_.validate();
  const int d = pair_.query.config().embedding_dim();
  int classes = 0, in = 0;
  if (cfg_.mode == TrainMode::Classify) {
    classes = static_cast<int>(cfg_.num_classes);
    in = d;
  } else if (cfg_.mode == TrainMode::SupervisedClone) {
    classes = 2;
    in = 2 * d;
  }
  cls_w_ = Mat<float>::Zero(classes, in);
  cls_b_ = Mat<float>::Zero(1, classes);
  Rng rng(derive_seed(cfg_.seed, "classifier"));
  const double bound = in > 0 ? 1.0 / std::sqrt(static_cast<double>(in)) : 0.0;
  for (Eigen::Index i = 0; i < cls_w_.size(); ++i)
    cls_w_.data()[i] = static_cast<float>(rng.uniform(-bound, bound));
  alpha_logit_ = Mat<float>::Constant(1, 1, static_cast<float>(logit(cfg_.resolved_alpha_init())));
}

Vec ContrastiveTrainer::classify(const Vec& e) const {
  if (cfg_.mode != TrainMode::Classify) fail(ErrorCode::InvalidConfig, "trainer has no class head");
  if (e.size() != cls_w_.cols()) fail(ErrorCode::DimensionMismatch, "embedding size differs from head");
  Vec logits = e * cls_w_.cast<double>().transpose() + cls_b_.cast<double>();
  return softmax(logits);
}

namespace {

Vec clone_features(const Vec& a, const Vec& b) {
  Vec f(2 * a.size());
  f << a.cwiseProduct(b), (a - b).cwiseAbs();
  return f;
}

}  // namespace

double ContrastiveTrainer::clone_probability(const Vec& a, const Vec& b) const {
  if (cfg_.mode != TrainMode::SupervisedClone) fail(ErrorCode::InvalidConfig, "trainer has no pair head");
  if (2 * a.size() != cls_w_.cols() || a.size() != b.size())
    fail(ErrorCode::DimensionMismatch, "embedding size differs from head");
  Vec logits = clone_features(a, b) * cls_w_.cast<double>().transpose() + cls_b_.cast<double>();
  return softmax(logits)(1);
}

StepStats ContrastiveTrainer::train_step(const TrainBatch& batch) {
  const std::size_t n = batch.samples.size();
  if (n < 2) fail(ErrorCode::BatchTooSmall, "a batch needs at least 2 samples");
  const double tau = cfg_.temperature;
  const auto& query = pair_.query;
  const auto& key = pair_.key;

  std::vector<Vec> keys;
  keys.reserve(n);
  for (const auto& s : batch.samples) keys.push_back(to_double(key.embed(s.key_ids)));
  std::vector<Vec> queued;
  queued.reserve(queue_.size());
  for (const auto& e : queue_.entries()) queued.push_back(to_double(e));
  const auto& owners = queue_.owners();

  std::vector<ForwardCache<float>> caches;
  std::vector<Vec> q;
  for (const auto& s : batch.samples) {
    caches.push_back(query.forward(s.query_ids));
    q.push_back(to_double(caches.back().embedding));
  }

  // Contrastive term: other in-batch keys, then the queue.
  double contrastive = 0;
  std::vector<Vec> d_contrastive(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> negatives;
    negatives.reserve(n - 1 + queued.size());
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) negatives.push_back(keys[j]);
    // Older keys of the same sample are not negatives.
    const auto& id = batch.samples[i].id;
    for (std::size_t j = 0; j < queued.size(); ++j)
      if (id.empty() || owners[j] != id) negatives.push_back(queued[j]);
    auto g = info_nce_grad(q[i], keys[i], negatives, tau);
    contrastive += g.loss;
    d_contrastive[i] = g.d_q / static_cast<double>(n);
  }
  contrastive /= static_cast<double>(n);

  StepStats stats;
  stats.loss.contrastive = contrastive;
  std::vector<Vec> d_q(n);
  std::vector<ForwardCache<float>> anchor_caches;
  std::vector<Vec> d_anchor;
  Mat<double> d_w = Mat<double>::Zero(cls_w_.rows(), cls_w_.cols());
  Mat<double> d_b = Mat<double>::Zero(1, cls_b_.cols());
  double d_logit = 0;
  const Mat<double> w = cls_w_.cast<double>();
  const Vec b = cls_b_.cast<double>();

  if (cfg_.mode == TrainMode::Unsupervised) {
    d_q = d_contrastive;
    stats.loss.total = contrastive;
    stats.loss.alpha_value = 1.0;
  } else if (cfg_.mode == TrainMode::Classify) {
    double category = 0, anchor = 0;
    std::vector<Vec> d_logits_q(n), d_logits_a(n);
    std::vector<Vec> a(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int label = batch.samples[i].label;
      if (label < 0 || label >= static_cast<int>(cfg_.num_classes))
        fail(ErrorCode::MalformedRecord, "sample " + batch.samples[i].id + " has no valid label");
      category += cross_entropy(q[i] * w.transpose() + b, label, &d_logits_q[i]);
      anchor_caches.push_back(query.forward(batch.samples[i].key_ids));
      a[i] = to_double(anchor_caches.back().embedding);
      anchor += cross_entropy(a[i] * w.transpose() + b, label, &d_logits_a[i]);
    }
    const double inv = 1.0 / static_cast<double>(n);
    category *= inv;
    anchor *= inv;
    auto g = classification_grad(contrastive, category, anchor,
                                 static_cast<double>(alpha_logit_(0, 0)), cfg_.anchor_coefficient);
    d_anchor.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec dlq = d_logits_q[i] * (g.d_supervised * inv);
      Vec dla = d_logits_a[i] * (g.d_anchor * inv);
      d_q[i] = g.d_contrastive * d_contrastive[i] + dlq * w;
      d_anchor[i] = dla * w;
      d_w += dlq.transpose() * q[i] + dla.transpose() * a[i];
      d_b += dlq + dla;
    }
    d_logit = g.d_logit;
    stats.loss.supervised = category;
    stats.loss.anchor = anchor;
    stats.loss.total = g.total;
    stats.loss.alpha_value = sigmoid(static_cast<double>(alpha_logit_(0, 0)));
  } else {
    if (batch.pairs.empty()) fail(ErrorCode::MalformedRecord, "supervised clone batch has no pairs");
    double supervised = 0;
    const double inv = 1.0 / static_cast<double>(batch.pairs.size());
    std::vector<std::pair<const LabeledPair*, Vec>> pair_grads;
    for (const auto& p : batch.pairs) {
      if (p.a >= n || p.b >= n) fail(ErrorCode::DanglingPairId, "pair refers outside the batch");
      Vec f = clone_features(q[p.a], q[p.b]);
      Vec dl;
      supervised += cross_entropy(f * w.transpose() + b, p.clone ? 1 : 0, &dl);
      pair_grads.emplace_back(&p, dl);
      d_w += dl.transpose() * f * inv;
      d_b += dl * inv;
    }
    supervised *= inv;
    auto g = combined_supervised_grad(contrastive, supervised, static_cast<double>(alpha_logit_(0, 0)));
    for (std::size_t i = 0; i < n; ++i) d_q[i] = g.d_contrastive * d_contrastive[i];
    const Eigen::Index d = q[0].size();
    for (auto& [p, dl] : pair_grads) {
      Vec df = dl * w * (g.d_supervised * inv);
      Vec sign = (q[p->a] - q[p->b]).array().sign().matrix();
      Vec d_prod = df.head(d), d_abs = df.tail(d).cwiseProduct(sign);
      d_q[p->a] += d_prod.cwiseProduct(q[p->b]) + d_abs;
      d_q[p->b] += d_prod.cwiseProduct(q[p->a]) - d_abs;
    }
    d_w *= g.d_supervised;
    d_b *= g.d_supervised;
    d_logit = g.d_logit;
    stats.loss.supervised = supervised;
    stats.loss.total = g.total;
    stats.loss.alpha_value = sigmoid(static_cast<double>(alpha_logit_(0, 0)));
  }

  auto grads = EncoderParams<float>::zeros(query.config());
  for (std::size_t i = 0; i < n; ++i) query.backward(caches[i], to_float(d_q[i]), grads);
  for (std::size_t i = 0; i < anchor_caches.size(); ++i)
    query.backward(anchor_caches[i], to_float(d_anchor[i]), grads);

  std::vector<Mat<float>*> params;
  std::vector<const Mat<float>*> grad_ptrs;
  for (auto& [_, t] : pair_.query.params().tensors()) params.push_back(t);
  auto grad_list = grads.tensors();
  for (auto& [_, t] : grad_list) grad_ptrs.push_back(t);
  Mat<float> gw = d_w.cast<float>(), gb = d_b.cast<float>();
  Mat<float> ga = Mat<float>::Constant(1, 1, static_cast<float>(d_logit));
  if (cfg_.mode != TrainMode::Unsupervised) {
    params.push_back(&cls_w_);
    params.push_back(&cls_b_);
    params.push_back(&alpha_logit_);
    grad_ptrs.push_back(&gw);
    grad_ptrs.push_back(&gb);
    grad_ptrs.push_back(&ga);
  }
  adam_.step(params, grad_ptrs);
  pair_.update();

  std::vector<RowVec<float>> new_keys;
  std::vector<std::string> new_ids;
  for (std::size_t i = 0; i < n; ++i) {
    new_keys.push_back(to_float(keys[i]));
    new_ids.push_back(batch.samples[i].id);
  }
  queue_.enqueue(new_keys, new_ids);

  // Spread of the batch's query embeddings.
  Vec mean = Vec::Zero(q[0].size());
  for (const auto& v : q) mean += v;
  mean /= static_cast<double>(n);
  Vec var = Vec::Zero(q[0].size());
  for (const auto& v : q) var += (v - mean).array().square().matrix();
  var /= static_cast<double>(n);
  stats.embedding_variance = var.mean();
  stats.min_dimension_variance = var.minCoeff();
  stats.collapse = stats.embedding_variance < cfg_.collapse_floor;

  stats.step = ++steps_;
  stats.queue_len = queue_.size();
  return stats;
}

Checkpoint ContrastiveTrainer::checkpoint() const {
  Checkpoint c;
  c.meta["encoder"] = pair_.query.config().to_json();
  c.meta["train"] = cfg_.to_json();
  c.meta["steps"] = steps_;
  export_params(pair_.query.params(), "encoder/", c);
  export_params(pair_.key.params(), "key/", c);
  put_matrix<float>(c, "classifier.w", cls_w_);
  put_matrix<float>(c, "classifier.b", cls_b_);
  put_matrix<float>(c, "alpha_logit", alpha_logit_);
  return c;
}

ContrastiveTrainer ContrastiveTrainer::from_checkpoint(const Checkpoint& ckpt) {
  if (!ckpt.meta.contains("train")) fail(ErrorCode::MalformedRecord, "checkpoint has no training state");
  auto enc_cfg = EncoderConfig::from_json(ckpt.meta.at("encoder")).resolved();
  ContrastiveTrainer t(enc_cfg, TrainConfig::from_json(ckpt.meta.at("train")));
  t.pair_.query = Encoder<float>(enc_cfg, import_params<float>(enc_cfg, "encoder/", ckpt));
  t.pair_.key = Encoder<float>(enc_cfg, import_params<float>(enc_cfg, "key/", ckpt));
  t.cls_w_ = get_matrix<float>(ckpt, "classifier.w");
  t.cls_b_ = get_matrix<float>(ckpt, "classifier.b");
  t.alpha_logit_ = get_matrix<float>(ckpt, "alpha_logit");
  t.steps_ = ckpt.meta.value("steps", std::size_t{0});
  return t;
}

namespace {

TrainSample view_for_epoch(const TrainSample& s, std::size_t epoch) {
  TrainSample out{s.id, s.query_ids, s.key_ids, {}, s.label};
  std::size_t v = (epoch - 1) % (1 + s.extra_key_ids.size());
  if (v > 0) out.key_ids = s.extra_key_ids[v - 1];
  return out;
}

}  // namespace

TrainSummary train(ContrastiveTrainer& trainer, const std::vector<TrainSample>& samples,
                   const std::vector<LabeledPair>& pairs,
                   const std::function<void(const StepStats&)>& on_step,
                   const std::function<void(std::size_t)>& on_epoch_end) {
  const auto& cfg = trainer.config();
  const bool by_pairs = cfg.mode == TrainMode::SupervisedClone;
  const std::size_t units = by_pairs ? pairs.size() : samples.size();
  if (by_pairs ? pairs.empty() : samples.size() < 2)
    fail(ErrorCode::BatchTooSmall, "not enough training data for one batch");
  const std::size_t per_batch = by_pairs ? std::max<std::size_t>(1, cfg.batch_size / 2) : cfg.batch_size;

  TrainSummary summary;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<std::size_t> order(units);
    for (std::size_t i = 0; i < units; ++i) order[i] = i;
    Rng rng(derive_seed(cfg.seed, "epoch" + std::to_string(epoch)));
    rng.shuffle(order.begin(), order.end());

    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t s = 0; s < units; s += per_batch) ranges.emplace_back(s, std::min(units, s + per_batch));
    // A trailing batch too small to have negatives joins the previous one.
    if (!by_pairs && ranges.size() > 1 && ranges.back().second - ranges.back().first < 2) {
      ranges[ranges.size() - 2].second = ranges.back().second;
      ranges.pop_back();
    }

    for (auto [lo, hi] : ranges) {
      TrainBatch batch;
      if (by_pairs) {
        std::map<std::size_t, std::size_t> local;
        auto slot = [&](std::size_t idx) {
          if (idx >= samples.size()) fail(ErrorCode::DanglingPairId, "pair refers to a missing sample");
          auto [it, fresh] = local.emplace(idx, batch.samples.size());
          if (fresh) batch.samples.push_back(view_for_epoch(samples[idx], epoch));
          return it->second;
        };
        for (std::size_t k = lo; k < hi; ++k) {
          const auto& p = pairs[order[k]];
          std::size_t a = slot(p.a), b = slot(p.b);
          batch.pairs.push_back({a, b, p.clone});
        }
        if (batch.samples.size() < 2) continue;
      } else {
        for (std::size_t k = lo; k < hi; ++k) batch.samples.push_back(view_for_epoch(samples[order[k]], epoch));
      }
      StepStats st = trainer.train_step(batch);
      st.epoch = epoch;
      if (st.collapse && epoch > 1) ++summary.collapse_events;
      summary.final_loss = st.loss.total;
      ++summary.steps;
      if (on_step) on_step(st);
    }
    summary.epochs = epoch;
    if (on_epoch_end) on_epoch_end(epoch);
  }
  return summary;
}

}  // namespace tcode
