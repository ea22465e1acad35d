#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "exec_oracle.hpp"
#include "synthetic.hpp"
#include "test_support.hpp"
#include "transformcode/error.hpp"
#include "transformcode/io/cli.hpp"
#include "transformcode/io/pipeline.hpp"

using namespace tcode;
using namespace tcode::test;
namespace fs = std::filesystem;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Usage;
}

SourceSnippet java(const std::string& id, const std::string& code) {
  return {id, Language::Java, code, std::nullopt};
}

const char* kMax = "int getMax(int a, int b){ if (a > b) return a; else return b; }";
const char* kSum = "int sum(int n){ int s = 0; for (int i = 0; i < n; i++) s += i; return s; }";
const char* kMin = "int getMin(int a, int b){ int m = a; if (b < a) m = b; return m; }";
const char* kAbs = "int abs(int x){ int y = x; if (y < 0) y = -y; return y; }";

struct Cli {
  int status = -1;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "transformcode");
  std::ostringstream out, err;
  Cli c;
  c.status = run_command(args, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

std::string slurp(const fs::path& p) { return read_file(p); }

}  // namespace

TEST(ReadSnippets, ParsesFieldsAndDefaults) {
  std::istringstream in(R"({"id":"a","code":"int x;"}
{"id":"b","language":"c","code":"int y;","label":3}

{"id":"c","language":"java","code":"int z;","label":"sort","format_version":1}
)");
  auto s = read_snippets(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].language, Language::Java);
  EXPECT_FALSE(s[0].label);
  EXPECT_EQ(s[1].language, Language::C);
  EXPECT_EQ(*s[1].label, "3");
  EXPECT_EQ(*s[2].label, "sort");
}

TEST(ReadSnippets, MalformedLineNamed) {
  std::istringstream in("{\"id\":\"a\",\"code\":\"x\"}\n{\"id\": oops\n");
  try {
    read_snippets(in, "store.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRecord);
    EXPECT_NE(std::string(e.what()).find("store.jsonl:2"), std::string::npos) << e.what();
  }
}

TEST(ReadSnippets, RejectsUnknownVersionAndDuplicates) {
  std::istringstream v("{\"id\":\"a\",\"code\":\"x\",\"format_version\":2}\n");
  EXPECT_EQ(code_of([&] { read_snippets(v); }), ErrorCode::UnsupportedVersion);
  std::istringstream d("{\"id\":\"a\",\"code\":\"x\"}\n{\"id\":\"a\",\"code\":\"y\"}\n");
  EXPECT_EQ(code_of([&] { read_snippets(d); }), ErrorCode::MalformedRecord);
}

TEST(ReadPairs, LabelSpellings) {
  std::istringstream in("id1,id2,label\na,b,clone\nb,c,non-clone\na,c,1\nc,d,0\na,d,true\r\nb,d,false\n");
  auto p = read_pairs(in);
  ASSERT_EQ(p.size(), 6u);
  std::vector<bool> want{true, false, true, false, true, false};
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i].clone, want[i]) << i;
  std::istringstream bad("id1,id2,label\na,b,maybe\n");
  EXPECT_EQ(code_of([&] { read_pairs(bad); }), ErrorCode::MalformedRecord);
  std::istringstream nohead("a,b,clone\n");
  EXPECT_EQ(code_of([&] { read_pairs(nohead); }), ErrorCode::MalformedRecord);
}

TEST(Ingest, ThreePairsOverFourSnippets) {
  std::vector<SourceSnippet> store{java("a", kMax), java("b", kSum), java("c", kMin), java("d", kAbs),
                                   java("e", kMax)};
  std::vector<PairRecord> pairs{{"a", "b", true}, {"b", "c", false}, {"d", "a", false}};
  auto d = ingest(store, pairs, true);
  ASSERT_EQ(d.snippets.size(), 4u);
  EXPECT_EQ(d.store_size, 5u);
  std::vector<std::string> ids;
  for (const auto& s : d.snippets) ids.push_back(s.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(d.find("e"), -1);
  EXPECT_GE(d.find("c"), 0);
}

TEST(Ingest, WithoutPairsKeepsStore) {
  auto d = ingest({java("a", kMax), java("b", kSum)}, {}, false);
  EXPECT_EQ(d.snippets.size(), 2u);
}

TEST(Ingest, DanglingPairId) {
  EXPECT_EQ(code_of([] { ingest({java("a", kMax)}, {{"a", "zz", true}}, true); }), ErrorCode::DanglingPairId);
}

TEST(Ingest, FromFiles) {
  TempDir dir;
  write_file(dir.path() / "s.jsonl", snippet_store_text({java("a", kMax), java("b", kSum), java("c", kMin)}));
  write_file(dir.path() / "p.csv", pair_csv_text({{"a", "b", false}, {"b", "a", false}}));
  auto d = ingest(dir.path() / "s.jsonl", dir.path() / "p.csv");
  EXPECT_EQ(d.snippets.size(), 2u);
  EXPECT_EQ(d.store_size, 3u);
  EXPECT_EQ(code_of([&] { ingest(dir.path() / "missing.jsonl"); }), ErrorCode::Io);
}

TEST(Preprocess, AccountsForFailures) {
  std::vector<SourceSnippet> in{java("a", kMax), java("flat", "int f(){ return 1; }"), java("b", kSum),
                                java("c", kMin)};
  auto r = preprocess(in, AugmentConfig{});
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].id, "flat");
  EXPECT_EQ(r.failures[0].error, "IdentityAnchor");
  ASSERT_EQ(r.samples.size(), in.size() - r.failures.size());
  EXPECT_EQ(r.samples[0].id, "a");
  EXPECT_EQ(r.samples[1].id, "b");
  for (const auto& s : r.samples) {
    EXPECT_FALSE(s.tokens_normalized.empty());
    EXPECT_FALSE(s.tokens_anchor.empty());
  }
}

TEST(Preprocess, WorkerCountDoesNotChangeOutput) {
  auto corpus = make_variant_corpus(data_path("synthetic"), 6, 3);
  std::vector<SourceSnippet> all;
  for (const auto& c : corpus.variants) all.insert(all.end(), c.begin(), c.end());
  AugmentConfig cfg;
  cfg.rng_seed = 9;
  auto one = serialize_samples(preprocess(all, cfg, 1, 3).samples);
  auto again = serialize_samples(preprocess(all, cfg, 1, 3).samples);
  auto four = serialize_samples(preprocess(all, cfg, 4, 3).samples);
  EXPECT_EQ(one, again);
  EXPECT_EQ(one, four);
  cfg.rng_seed = 10;
  EXPECT_NE(one, serialize_samples(preprocess(all, cfg, 1, 3).samples));
}

TEST(Preprocess, ViewsAddExtraAnchors) {
  auto s = preprocess_one(java("a", kSum), AugmentConfig{}, 4);
  EXPECT_EQ(s.extra_anchors.size(), 3u);
  EXPECT_EQ(preprocess_one(java("a", kSum), AugmentConfig{}, 1).extra_anchors.size(), 0u);
}

TEST(SamplesFile, RoundTrip) {
  PreprocessedSample a{"a", Language::Java, {"int", "var1"}, {"var1", "int"}, {{"x"}}, std::string("cls")};
  PreprocessedSample b{"b", Language::C, {"return"}, {"return", "0"}, {}, std::nullopt};
  std::vector<PreprocessedSample> v{a, b};
  auto bytes = serialize_samples(v);
  EXPECT_EQ(bytes.substr(0, bytes.find('\n')),
            R"({"format":"transformcode-samples","format_version":1,"count":2})");
  EXPECT_EQ(parse_samples(bytes), v);
  TempDir dir;
  save_samples(dir.path() / "s.jsonl", v);
  EXPECT_EQ(load_samples(dir.path() / "s.jsonl"), v);
}

TEST(SamplesFile, RejectsBadHeaders) {
  EXPECT_EQ(code_of([] { parse_samples("{\"format\":\"transformcode-samples\",\"format_version\":2,\"count\":0}\n"); }),
            ErrorCode::UnsupportedVersion);
  EXPECT_EQ(code_of([] { parse_samples("{\"format\":\"other\",\"format_version\":1,\"count\":0}\n"); }),
            ErrorCode::MalformedRecord);
  EXPECT_EQ(code_of([] { parse_samples("{\"format\":\"transformcode-samples\",\"format_version\":1,\"count\":1}\n"); }),
            ErrorCode::MalformedRecord);
}

TEST(RunConfigJson, RoundTripAndSeed) {
  RunConfig c;
  c.snippets = "s.jsonl";
  c.pairs = "p.csv";
  c.workers = 3;
  c.anchor_views = 2;
  c.augment.max_rounds = 4;
  c.tokenizer.max_size = 500;
  c.encoder.d_model = 16;
  c.encoder.n_heads = 2;
  c.train.mode = TrainMode::SupervisedClone;
  c.train.epochs = 7;
  c.eval.threshold = 0.6;
  c.set_seed(77);
  auto back = RunConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.augment.rng_seed, 77u);
  EXPECT_EQ(back.train.seed, 77u);

  auto seeded = RunConfig::from_json({{"seed", 5}});
  EXPECT_EQ(seeded.augment.rng_seed, 5u);
  EXPECT_EQ(seeded.train.seed, 5u);
  EXPECT_EQ(code_of([] { RunConfig::from_json({{"workers", "many"}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { RunConfig::from_json({{"eval", {{"threshold", 2.0}}}}); }), ErrorCode::InvalidConfig);
}

TEST(ModelIds, Truncates) {
  VocabConfig vc;
  PreprocessedSample s{"a", Language::Java, {"int", "var1", "return"}, {"return"}, {}, std::nullopt};
  auto vocab = train_tokenizer({s}, vc);
  EXPECT_EQ(model_ids({"int", "var1", "return"}, vocab, 2).size(), 2u);
  EXPECT_EQ(model_ids({"int"}, vocab, 100), encode(TokenSequence{{"int"}}, vocab));
}

class CliFlow : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir;
    auto corpus = make_variant_corpus(data_path("synthetic"), 4, 5);
    for (const auto& c : corpus.variants) all_.insert(all_.end(), c.begin(), c.end());
    write_file(p("store.jsonl"), snippet_store_text(all_));
    write_file(p("pairs.csv"), pair_csv_text(all_pairs(all_)));
    nlohmann::json cfg = {{"seed", 3},
                          {"encoder", {{"n_layers", 1}, {"d_model", 16}, {"n_heads", 2}, {"mlp_dims", {16, 8}}}},
                          {"train", {{"batch_size", 8}, {"queue_capacity", 16}, {"epochs", 5}}}};
    write_file(p("config.json"), cfg.dump());
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string p(const std::string& name) { return (dir_->path() / name).string(); }

  static inline TempDir* dir_ = nullptr;
  static inline std::vector<SourceSnippet> all_;
};

TEST_F(CliFlow, UsageErrors) {
  auto none = cli({});
  EXPECT_EQ(none.status, 2);
  EXPECT_NE(none.err.find("\"error\":\"UsageError\""), std::string::npos);
  auto bad = cli({"embed", "--out", p("x")});
  EXPECT_EQ(bad.status, 2);
  auto unknown = cli({"frobnicate"});
  EXPECT_EQ(unknown.status, 2);
  auto help = cli({"--help"});
  EXPECT_EQ(help.status, 0);
  EXPECT_NE(help.out.find("eval-clone"), std::string::npos);
}

TEST_F(CliFlow, LibraryErrorsAreJson) {
  auto r = cli({"train-tokenizer", "--samples", p("nope.jsonl"), "--out", p("v.txt")});
  EXPECT_EQ(r.status, 1);
  auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("error"), "Io");
  EXPECT_TRUE(j.contains("message"));
}

TEST_F(CliFlow, TrainEmbedEvaluate) {
  auto pre = cli({"preprocess", "--config", p("config.json"), "--snippets", p("store.jsonl"), "--out",
                  p("samples.jsonl"), "--workers", "2", "--views", "2"});
  ASSERT_EQ(pre.status, 0) << pre.err;
  auto pre_j = nlohmann::json::parse(pre.out);
  EXPECT_EQ(pre_j.at("unique").get<std::size_t>(), all_.size());
  EXPECT_EQ(pre_j.at("samples").get<std::size_t>() + pre_j.at("failures").size(), all_.size());

  auto tok = cli({"train-tokenizer", "--samples", p("samples.jsonl"), "--out", p("vocab.txt")});
  ASSERT_EQ(tok.status, 0) << tok.err;

  auto run_dir = p("run");
  auto tr = cli({"train", "--config", p("config.json"), "--samples", p("samples.jsonl"), "--vocab",
                 p("vocab.txt"), "--epochs", "2", "--out", run_dir});
  ASSERT_EQ(tr.status, 0) << tr.err;
  auto tr_j = nlohmann::json::parse(tr.out);
  EXPECT_EQ(tr_j.at("epochs").get<std::size_t>(), 2u);
  EXPECT_TRUE(fs::exists(fs::path(run_dir) / "model.tckp"));
  std::istringstream log(slurp(fs::path(run_dir) / "train_log.jsonl"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(log, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("loss_total"));
    ++lines;
  }
  EXPECT_EQ(lines, tr_j.at("steps").get<std::size_t>());
  auto saved = RunConfig::load(fs::path(run_dir) / "config.json");
  EXPECT_EQ(saved.train.epochs, 2u);
  EXPECT_EQ(saved.train.batch_size, 8u);
  EXPECT_EQ(saved.train.seed, 3u);

  auto emb = cli({"embed", "--model", (fs::path(run_dir) / "model.tckp").string(), "--snippets",
                  p("store.jsonl"), "--out", p("emb.jsonl")});
  ASSERT_EQ(emb.status, 0) << emb.err;
  std::istringstream el(slurp(p("emb.jsonl")));
  std::size_t rows = 0;
  while (std::getline(el, line)) {
    auto j = nlohmann::json::parse(line);
    auto v = j.at("embedding").get<std::vector<double>>();
    EXPECT_EQ(v.size(), 8u);
    double norm = 0;
    for (double x : v) norm += x * x;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-5) << j.at("id");
    ++rows;
  }
  EXPECT_EQ(rows, all_.size());

  auto ev = cli({"eval-clone", "--model", (fs::path(run_dir) / "model.tckp").string(), "--snippets",
                 p("store.jsonl"), "--pairs", p("pairs.csv"), "--threshold", "0.5", "--decisions",
                 p("dec.csv")});
  ASSERT_EQ(ev.status, 0) << ev.err;
  auto m = nlohmann::json::parse(ev.out);
  for (const char* k : {"accuracy", "precision", "recall", "f1", "counts", "threshold"})
    EXPECT_TRUE(m.contains(k)) << k;
  EXPECT_DOUBLE_EQ(m.at("threshold").get<double>(), 0.5);
  auto dec = slurp(p("dec.csv"));
  EXPECT_EQ(dec.substr(0, dec.find('\n')), "id1,id2,sim,decision,label");

  auto rep = cli({"report", "--log", (fs::path(run_dir) / "train_log.jsonl").string()});
  EXPECT_EQ(rep.status, 0) << rep.err;
}

TEST_F(CliFlow, CheckpointRoundTripEmbedsBitwise) {
  auto pre = preprocess(all_, AugmentConfig{});
  RunConfig cfg = RunConfig::load(p("config.json"));
  cfg.train.epochs = 1;
  auto vocab = train_tokenizer(pre.samples, cfg.tokenizer);
  auto run = run_training(pre.samples, {}, vocab, cfg);
  run.model.save(p("rt.tckp"));
  Model loaded = Model::load(p("rt.tckp"));
  auto a = embed_snippets(run.model, all_);
  auto b = embed_snippets(loaded, all_, 3);
  ASSERT_EQ(a.ids, b.ids);
  for (std::size_t i = 0; i < a.embeddings.size(); ++i)
    for (Eigen::Index k = 0; k < a.embeddings[i].size(); ++k)
      ASSERT_EQ(a.embeddings[i](k), b.embeddings[i](k));
  loaded.save(p("rt2.tckp"));
  EXPECT_EQ(slurp(p("rt.tckp")), slurp(p("rt2.tckp")));
}

TEST_F(CliFlow, ScoreNames) {
  write_file(p("names.csv"), "predicted,truth\ngetMax,getMax\ncomputeMax,getMax\n");
  auto r = cli({"score-names", "--predictions", p("names.csv")});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("f1").get<double>(), (1.0 + 2.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(j.at("count"), 2);
}

TEST(PreprocessThroughput, MoreWorkersFinishSooner) {
  if (std::thread::hardware_concurrency() < 4) GTEST_SKIP() << "needs at least 4 hardware threads";
  auto corpus = make_variant_corpus(data_path("synthetic"), 250, 11);
  std::vector<SourceSnippet> all;
  for (const auto& c : corpus.variants) all.insert(all.end(), c.begin(), c.end());
  ASSERT_EQ(all.size(), 1000u);
  auto time = [&](std::size_t workers) {
    auto t0 = std::chrono::steady_clock::now();
    preprocess(all, AugmentConfig{}, workers);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  double one = time(1), four = time(4);
  EXPECT_LT(four, one) << "1 worker " << one << " s, 4 workers " << four << " s";
}

TEST(RunConfigJson, ShippedDeskConfigLoads) {
  auto c = RunConfig::load(data_path("../../configs/desk.json"));
  EXPECT_EQ(c.train.seed, 1u);
  EXPECT_EQ(c.anchor_views, 50u);
  EXPECT_EQ(c.augment.max_rounds, 16u);
  EXPECT_EQ(c.encoder.d_model, 64);
  EXPECT_EQ(c.train.queue_capacity, 512u);
  EXPECT_DOUBLE_EQ(c.eval.threshold, 0.75);
}
