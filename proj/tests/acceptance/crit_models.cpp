#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <list>
#include <random>
#include <regex>
#include <sstream>

#include "acceptance.hpp"
#include "exec_oracle.hpp"
#include "gradcheck.hpp"
#include "synthetic.hpp"
#include "test_support.hpp"
#include "transformcode/error.hpp"
#include "transformcode/eval/metrics.hpp"
#include "transformcode/io/cli.hpp"
#include "transformcode/io/pipeline.hpp"
#include "transformcode/trainer/losses.hpp"
#include "transformcode/trainer/moco.hpp"
#include "transformcode/trainer/trainer.hpp"

namespace tcode::acceptance {
namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Vec random_unit(std::mt19937_64& g, int dim) {
  std::normal_distribution<double> n;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = n(g);
  return v / v.norm();
}

// InfoNCE

constexpr int kInfoNceInstances = 1000;
constexpr double kInfoNceRelTol = 1e-6;
constexpr double kLn2Tol = 1e-9;

long double brute_force_info_nce(const Vec& q, const Vec& pos, const std::vector<Vec>& neg, double tau) {
  auto dot = [&](const Vec& k) {
    long double s = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i) s += static_cast<long double>(q(i)) * k(i);
    return s / tau;
  };
  long double num = std::exp(dot(pos));
  long double den = num;
  for (const auto& k : neg) den += std::exp(dot(k));
  return -std::log(num / den);
}

Verdict info_nce_oracle() {
  std::mt19937_64 g(3);
  const double taus[] = {0.05, 0.07, 1.0};
  double worst = 0;
  int zero_mismatch = 0;
  for (int t = 0; t < kInfoNceInstances; ++t) {
    int dim = 4 + static_cast<int>(g() % 61);
    int negs = static_cast<int>(g() % 65);
    double tau = taus[t % 3];
    Vec q = random_unit(g, dim), pos = random_unit(g, dim);
    std::vector<Vec> neg;
    for (int i = 0; i < negs; ++i) neg.push_back(random_unit(g, dim));
    double got = info_nce(q, pos, neg, tau);
    long double want = brute_force_info_nce(q, pos, neg, tau);
    if (negs == 0) {
      if (got != 0.0) ++zero_mismatch;
      continue;
    }
    worst = std::max(worst, static_cast<double>(std::fabs(got - want) / std::fabs(want)));
  }
  Vec e = Vec::Zero(2);
  e(0) = 1;
  double sym = info_nce(e, e, {e}, 0.07);
  double ln2_err = std::fabs(sym - std::log(2.0));
  bool pass = worst <= kInfoNceRelTol && zero_mismatch == 0 && ln2_err <= kLn2Tol;
  return {pass, fmt("%d instances, max relative error %.3g (tol %.0e); two-way case |L - ln 2| = %.3g (tol %.0e)",
                    kInfoNceInstances, worst, kInfoNceRelTol, ln2_err, kLn2Tol)};
}

Register r3(3, "InfoNCE against a brute-force softmax oracle", info_nce_oracle);

// Gradient check

constexpr double kGradRelTol = 1e-3;

test::EmbeddingLoss info_nce_loss(int dim) {
  std::mt19937_64 g(11);
  test::EmbeddingLoss loss;
  loss.inputs = {{1, 4, 2, 7, 3, 9, 0, 5}, {6, 2, 2, 8, 1}};
  auto pos = std::make_shared<std::vector<Vec>>();
  auto neg = std::make_shared<std::vector<std::vector<Vec>>>();
  for (std::size_t s = 0; s < loss.inputs.size(); ++s) {
    pos->push_back(random_unit(g, dim));
    std::vector<Vec> n;
    for (int i = 0; i < 5; ++i) n.push_back(random_unit(g, dim));
    neg->push_back(n);
  }
  loss.fn = [pos, neg](const test::Embeddings& e, test::Embeddings* grad) {
    double total = 0;
    if (grad) grad->clear();
    for (std::size_t s = 0; s < e.size(); ++s) {
      auto r = info_nce_grad(e[s], (*pos)[s], (*neg)[s], 0.07);
      total += r.loss / static_cast<double>(e.size());
      if (grad) grad->push_back(r.d_q / static_cast<double>(e.size()));
    }
    return total;
  };
  return loss;
}

Verdict gradient_check() {
  EncoderConfig cfg;
  cfg.n_layers = 1;
  cfg.d_model = 8;
  cfg.n_heads = 1;
  cfg.max_relative_distance = 4;
  cfg.mlp_dims = {8, 6};
  cfg.vocab_size = 10;
  cfg.max_sequence_length = 16;
  auto report = test::check_encoder_gradients(cfg, 5, info_nce_loss(6));
  std::string worst_name;
  for (const auto& [name, err] : report.errors)
    if (err == report.max_error) worst_name = name;
  return {report.max_error <= kGradRelTol,
          fmt("%zu tensors, max relative error %.3g at %s (tol %.0e)", report.errors.size(), report.max_error,
              worst_name.c_str(), kGradRelTol)};
}

Register r4(4, "encoder gradients against central differences", gradient_check);

// Momentum and queue

constexpr double kMomentumTol = 1e-7;
constexpr int kQueueSequences = 1000;

template <class S>
double momentum_error(double m) {
  EncoderConfig cfg;
  cfg.n_layers = 2;
  cfg.d_model = 16;
  cfg.n_heads = 2;
  cfg.vocab_size = 30;
  Encoder<S> q(cfg, 1), k(cfg, 2);
  auto before = k.params();
  momentum_update(k.params(), q.params(), m);
  double worst = 0;
  auto kt = k.params().tensors();
  auto qt = q.params().tensors();
  auto bt = before.tensors();
  for (std::size_t t = 0; t < kt.size(); ++t)
    for (Eigen::Index i = 0; i < kt[t].second->size(); ++i) {
      long double want = static_cast<long double>(m) * bt[t].second->data()[i] +
                         (1.0L - m) * static_cast<long double>(qt[t].second->data()[i]);
      worst = std::max(worst, static_cast<double>(std::fabs(kt[t].second->data()[i] - want)));
    }
  return worst;
}

Verdict momentum_and_queue() {
  double worst = 0;
  for (double m : {0.0, 0.5, 0.9, 0.999, 1.0}) {
    worst = std::max(worst, momentum_error<float>(m));
    worst = std::max(worst, momentum_error<double>(m));
  }

  std::mt19937_64 g(17);
  int bad = 0;
  std::size_t ops = 0;
  float next = 0;
  for (int s = 0; s < kQueueSequences; ++s) {
    std::size_t cap = 1 + g() % 12;
    NegativeQueue q(cap);
    std::list<std::pair<float, std::string>> model;
    int n_ops = 1 + static_cast<int>(g() % 20);
    for (int o = 0; o < n_ops && !bad; ++o, ++ops) {
      if (g() % 10 == 0) {
        q.clear();
        model.clear();
      } else {
        std::size_t batch = g() % (cap + 4);
        std::vector<RowVec<float>> keys;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < batch; ++i) {
          keys.push_back(RowVec<float>::Constant(3, next));
          ids.push_back("s" + std::to_string(static_cast<int>(next)));
          model.emplace_back(next, ids.back());
          next += 1;
        }
        q.enqueue(keys, ids);
        while (model.size() > cap) model.pop_front();
      }
      bool same = q.size() == model.size() && q.size() <= cap && q.capacity() == cap;
      auto it = model.begin();
      for (std::size_t i = 0; same && i < q.size(); ++i, ++it)
        same = q.entries()[i](0) == it->first && q.owners()[i] == it->second;
      if (!same) ++bad;
    }
  }
  bool pass = worst <= kMomentumTol && bad == 0;
  return {pass, fmt("momentum max abs error %.3g (tol %.0e); queue: %d sequences, %zu operations, %d divergences "
                    "from the list model",
                    worst, kMomentumTol, kQueueSequences, ops, bad)};
}

Register r5(5, "momentum update and negative queue", momentum_and_queue);

// Tokenizer

constexpr std::size_t kMaxVocab = 20000;
constexpr std::size_t kCorpusSeeds = 20;

std::vector<SourceSnippet> executable_corpus() {
  std::vector<SourceSnippet> out;
  for (auto [dir, lang] : {std::pair{"equivalence/java", Language::Java}, std::pair{"equivalence/c", Language::C}})
    for (const auto& p : test::load_programs(test::data_path(dir), lang))
      out.push_back({p.name, lang, p.source, std::nullopt});
  return out;
}

bool looks_special(const std::string& piece) {
  static const std::regex bracketed(R"(^(\[[A-Za-z_]+\]|<[/A-Za-z_]+>)$)");
  return std::regex_match(piece, bracketed);
}

Verdict tokenizer_properties() {
  auto corpus = executable_corpus();
  AugmentConfig aug;
  auto pre = preprocess(corpus, aug, 1, kCorpusSeeds);
  Vocabulary vocab = train_tokenizer(pre.samples, VocabConfig{});
  std::size_t special = 0;
  for (const auto& p : vocab.pieces())
    if (looks_special(p) || p.empty() || p == vocab.continuation_marker()) ++special;
  std::size_t tokens = 0, ok = 0;
  auto check = [&](const std::vector<std::string>& seq) {
    for (const auto& t : seq) {
      ++tokens;
      auto back = decode(encode_token(t, vocab), vocab);
      if (back.size() == 1 && back[0] == t) ++ok;
    }
  };
  for (const auto& s : pre.samples) {
    check(s.tokens_normalized);
    check(s.tokens_anchor);
    for (const auto& a : s.extra_anchors) check(a);
  }
  bool pass = vocab.size() < kMaxVocab && special == 0 && tokens > 0 && ok == tokens;
  return {pass, fmt("%zu programs x %zu seeds (%zu failed), vocab %zu (< %zu), special tokens %zu, "
                    "round trip %zu/%zu tokens",
                    corpus.size(), kCorpusSeeds, pre.failures.size(), vocab.size(), kMaxVocab, special, ok,
                    tokens)};
}

Register r6(6, "subword vocabulary on the executable corpus", tokenizer_properties);

// Metrics

constexpr double kMetricTol = 1e-12;
constexpr int kMaxCount = 5;

Verdict metrics_sweep() {
  double worst = 0;
  std::size_t tables = 0, identity_bad = 0, empty_ok = 0;
  for (int tp = 0; tp <= kMaxCount; ++tp)
    for (int tn = 0; tn <= kMaxCount; ++tn)
      for (int fp = 0; fp <= kMaxCount; ++fp)
        for (int fn = 0; fn <= kMaxCount; ++fn) {
          ConfusionCounts c{static_cast<std::uint64_t>(tp), static_cast<std::uint64_t>(tn),
                            static_cast<std::uint64_t>(fp), static_cast<std::uint64_t>(fn)};
          if (c.total() == 0) {
            try {
              compute_metrics(c);
            } catch (const Error& e) {
              if (e.code() == ErrorCode::EmptyCounts) ++empty_ok;
            }
            continue;
          }
          ++tables;
          auto r = compute_metrics(c);
          double acc = double(tp + tn) / double(tp + tn + fp + fn);
          double p = tp + fp ? double(tp) / double(tp + fp) : 0.0;
          double rc = tp + fn ? double(tp) / double(tp + fn) : 0.0;
          double f1 = p + rc > 0 ? 2 * p * rc / (p + rc) : 0.0;
          for (double d : {r.accuracy - acc, r.precision - p, r.recall - rc, r.f1 - f1})
            worst = std::max(worst, std::fabs(d));
          if (r.precision + r.recall > 0 &&
              std::fabs(r.f1 - 2 * r.precision * r.recall / (r.precision + r.recall)) > kMetricTol)
            ++identity_bad;
        }
  struct Example {
    const char* pred;
    const char* truth;
    double f1;
  };
  const Example examples[] = {{"compute_max", "computeMax", 1.0},
                              {"getMax", "computeMax", 2.0 / 3.0},
                              {"getMaxResult", "getMax", 4.0 / 5.0}};
  std::string got;
  bool examples_ok = true;
  for (const auto& e : examples) {
    double f = subword_f1(e.pred, e.truth).f1;
    examples_ok = examples_ok && std::fabs(f - e.f1) <= kMetricTol;
    got += fmt(" %s/%s=%.12g", e.pred, e.truth, f);
  }
  bool pass = worst <= kMetricTol && identity_bad == 0 && empty_ok == 1 && examples_ok;
  return {pass, fmt("%zu tables, max error %.3g (tol %.0e), F1 identity violations %zu; subword F1:%s", tables,
                    worst, kMetricTol, identity_bad, got.c_str())};
}

Register r7(7, "clone metrics and subword F1", metrics_sweep);

// Supervised losses

constexpr int kLossInstances = 1000;
constexpr double kLossTol = 1e-7;

std::vector<TrainSample> random_samples(std::size_t n, int vocab, std::mt19937_64& g) {
  std::vector<TrainSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    TrainSample s;
    s.id = "s" + std::to_string(i);
    for (int t = 0; t < 6; ++t) s.query_ids.push_back(static_cast<std::uint32_t>(g() % vocab));
    s.key_ids = s.query_ids;
    std::swap(s.key_ids[0], s.key_ids[3]);
    s.label = static_cast<int>(i % 2);
    out.push_back(s);
  }
  return out;
}

Verdict supervised_losses() {
  std::mt19937_64 g(23);
  std::uniform_real_distribution<double> loss_u(0.0, 8.0), logit_u(-8.0, 8.0);
  double worst = 0, worst_grad = 0;
  std::size_t alpha_out = 0, zero_grad = 0;
  for (int i = 0; i < kLossInstances; ++i) {
    double c = loss_u(g), s = loss_u(g), cat = loss_u(g), anc = loss_u(g), lg = logit_u(g);
    double coeff = std::uniform_real_distribution<double>(0.0, 1.0)(g);
    double a = sigmoid(lg);
    if (!(a > 0 && a < 1)) ++alpha_out;
    long double al = 1.0L / (1.0L + std::exp(-static_cast<long double>(lg)));
    long double want1 = al * c + (1 - al) * s;
    long double want2 = al * c + (1 - al) * cat + static_cast<long double>(coeff) * anc;
    worst = std::max(worst, static_cast<double>(std::fabs(combined_supervised_loss(c, s, a) - want1)));
    worst = std::max(worst, static_cast<double>(std::fabs(classification_loss(c, cat, anc, a, coeff) - want2)));
    auto g1 = combined_supervised_grad(c, s, lg);
    auto g2 = classification_grad(c, cat, anc, lg, coeff);
    worst = std::max(worst, std::fabs(g1.total - static_cast<double>(want1)));
    worst = std::max(worst, std::fabs(g2.total - static_cast<double>(want2)));
    long double da = al * (1 - al);
    worst_grad = std::max(worst_grad, static_cast<double>(std::fabs(g1.d_logit - da * (c - s))));
    worst_grad = std::max(worst_grad, static_cast<double>(std::fabs(g2.d_logit - da * (c - cat))));
    if (c != s && g1.d_logit == 0) ++zero_grad;
    if (c != cat && g2.d_logit == 0) ++zero_grad;
  }

  EncoderConfig enc;
  enc.n_layers = 1;
  enc.d_model = 8;
  enc.n_heads = 2;
  enc.vocab_size = 12;
  enc.mlp_dims = {8, 8};
  bool trainer_moves = true;
  double moved_clone = 0, moved_cls = 0;
  {
    TrainConfig cfg;
    cfg.mode = TrainMode::SupervisedClone;
    cfg.batch_size = 4;
    cfg.learning_rate = 1e-2;
    ContrastiveTrainer t(enc, cfg);
    double before = t.alpha();
    t.train_step({random_samples(4, 12, g), {{0, 2, true}, {1, 3, false}}});
    moved_clone = t.alpha() - before;
  }
  {
    TrainConfig cfg;
    cfg.mode = TrainMode::Classify;
    cfg.num_classes = 2;
    cfg.batch_size = 4;
    cfg.learning_rate = 1e-2;
    ContrastiveTrainer t(enc, cfg);
    double before = t.alpha();
    t.train_step({random_samples(4, 12, g), {}});
    moved_cls = t.alpha() - before;
  }
  trainer_moves = moved_clone != 0 && moved_cls != 0;
  bool pass = worst <= kLossTol && worst_grad <= kLossTol && alpha_out == 0 && zero_grad == 0 && trainer_moves;
  return {pass, fmt("%d instances, max loss error %.3g, max d(loss)/d(logit) error %.3g (tol %.0e), alpha outside "
                    "(0,1): %zu, zero alpha gradients with C != S: %zu; alpha step in training: clone %.3g, "
                    "classify %.3g",
                    kLossInstances, worst, worst_grad, kLossTol, alpha_out, zero_grad, moved_clone, moved_cls)};
}

Register r9(9, "supervised and classification losses", supervised_losses);

// Reproducibility

int run(const std::vector<std::string>& args, std::string* err) {
  std::vector<std::string> full{"transformcode"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, e;
  int status = run_command(full, out, e);
  if (status != 0) *err += e.str();
  return status;
}

Verdict reproducibility() {
  test::TempDir dir;
  auto corpus = test::make_variant_corpus(test::data_path("synthetic"), 8, 2);
  std::vector<SourceSnippet> all;
  for (const auto& c : corpus.variants) all.insert(all.end(), c.begin(), c.end());
  write_file(dir.path() / "store.jsonl", test::snippet_store_text(all));
  nlohmann::json cfg = {{"seed", 42},
                        {"anchor_views", 2},
                        {"encoder", {{"n_layers", 1}, {"d_model", 16}, {"n_heads", 2}, {"mlp_dims", {16, 16}}}},
                        {"train", {{"batch_size", 8}, {"queue_capacity", 32}, {"epochs", 3}}}};
  write_file(dir.path() / "config.json", cfg.dump());
  auto p = [&](const std::string& n) { return (dir.path() / n).string(); };

  std::string err;
  for (const char* r : {"a", "b"}) {
    std::string R = r;
    if (run({"preprocess", "--config", p("config.json"), "--snippets", p("store.jsonl"), "--out",
             p(R + "-samples.jsonl")},
            &err) ||
        run({"train-tokenizer", "--config", p("config.json"), "--samples", p(R + "-samples.jsonl"), "--out",
             p(R + "-vocab.txt")},
            &err) ||
        run({"train", "--config", p("config.json"), "--samples", p(R + "-samples.jsonl"), "--vocab",
             p(R + "-vocab.txt"), "--out", p(R + "-run")},
            &err))
      return {false, "command failed: " + err};
  }
  bool samples = read_file(p("a-samples.jsonl")) == read_file(p("b-samples.jsonl"));
  bool vocab = read_file(p("a-vocab.txt")) == read_file(p("b-vocab.txt"));
  auto ckpt_a = read_file(dir.path() / "a-run" / "model.tckp");
  bool ckpt = ckpt_a == read_file(dir.path() / "b-run" / "model.tckp");
  return {samples && vocab && ckpt,
          fmt("preprocessed file %s, vocabulary %s, final checkpoint %s (%zu bytes)",
              samples ? "identical" : "DIFFERS", vocab ? "identical" : "DIFFERS", ckpt ? "identical" : "DIFFERS",
              ckpt_a.size())};
}

Register r10(10, "byte-identical reruns of preprocess, train-tokenizer and train", reproducibility);

}  // namespace
}  // namespace tcode::acceptance
