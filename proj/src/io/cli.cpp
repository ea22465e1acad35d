#include "transformcode/io/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <sstream>

#include "transformcode/error.hpp"
#include "transformcode/io/pipeline.hpp"

namespace tcode {

namespace {

using nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c, bool out_required) {
  c.seed_opt = cmd->add_option("--seed", c.seed, "Global random seed");
  cmd->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o = cmd->add_option("--out", c.out, "Output path");
  if (out_required) o->required();
}

RunConfig base_config(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : RunConfig::load(c.config);
  if (c.seed_opt->count()) cfg.set_seed(c.seed);
  if (!c.out.empty()) cfg.out = c.out;
  return cfg;
}

template <class T>
void override_if(CLI::Option* opt, T& target, const T& value) {
  if (opt && opt->count()) target = value;
}

std::vector<SourceSnippet> load_store(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_snippets(in, path);
}

std::vector<PairRecord> load_pair_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_pairs(in, path);
}

ordered_json failures_json(const std::vector<SampleFailure>& failures) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : failures) arr.push_back({{"id", f.id}, {"error", f.error}, {"message", f.message}});
  return arr;
}

void write_json(const std::string& path, const ordered_json& j, std::ostream& out) {
  if (path.empty() || path == "-") out << j.dump(2) << "\n";
  else write_file(path, j.dump(2) + "\n");
}

std::string embedding_lines(const EmbeddingResult& r) {
  std::string s;
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    ordered_json j;
    j["id"] = r.ids[i];
    std::vector<double> v(r.embeddings[i].data(), r.embeddings[i].data() + r.embeddings[i].size());
    j["embedding"] = v;
    s += j.dump() + "\n";
  }
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contrastive code representation pipeline", "transformcode"};
  app.require_subcommand(1);

  // preprocess
  Common pre;
  std::string pre_snippets, pre_pairs;
  std::size_t pre_workers = 1;
  auto* cmd_pre = app.add_subcommand("preprocess", "Normalize, augment and extract a snippet store");
  add_common(cmd_pre, pre, true);
  auto* pre_snip_opt = cmd_pre->add_option("--snippets", pre_snippets, "Snippet store (JSON lines)");
  cmd_pre->add_option("--pairs", pre_pairs, "Pair CSV; keeps only snippets named by a pair");
  auto* pre_workers_opt = cmd_pre->add_option("--workers", pre_workers, "Worker threads");
  std::size_t pre_views = 1, pre_rounds = 1;
  auto* pre_views_opt = cmd_pre->add_option("--views", pre_views, "Anchors per sample");
  auto* pre_rounds_opt = cmd_pre->add_option("--max-rounds", pre_rounds, "Most augmentation passes per anchor");

  // train-tokenizer
  Common tok;
  std::string tok_samples;
  std::size_t tok_max = 20000, tok_min = 2;
  auto* cmd_tok = app.add_subcommand("train-tokenizer", "Train a subword vocabulary");
  add_common(cmd_tok, tok, true);
  cmd_tok->add_option("--samples", tok_samples, "Preprocessed samples")->required();
  auto* tok_max_opt = cmd_tok->add_option("--max-size", tok_max, "Vocabulary size cap");
  auto* tok_min_opt = cmd_tok->add_option("--min-frequency", tok_min, "Minimum pair count for a merge");

  // train / train-classify
  struct TrainFlags {
    Common common;
    std::string samples, vocab, pairs, mode;
    std::size_t epochs = 0, batch = 0;
    double lr = 0;
    CLI::Option *epochs_opt = nullptr, *batch_opt = nullptr, *lr_opt = nullptr, *mode_opt = nullptr;
  };
  auto add_train = [&](CLI::App* cmd, TrainFlags& f, bool with_mode) {
    add_common(cmd, f.common, true);
    cmd->add_option("--samples", f.samples, "Preprocessed samples")->required();
    cmd->add_option("--vocab", f.vocab, "Vocabulary file")->required();
    cmd->add_option("--pairs", f.pairs, "Labeled pair CSV (supervised-clone)");
    if (with_mode)
      f.mode_opt = cmd->add_option("--mode", f.mode, "unsupervised | supervised-clone | supervised-classify");
    f.epochs_opt = cmd->add_option("--epochs", f.epochs, "Training epochs");
    f.batch_opt = cmd->add_option("--batch-size", f.batch, "Batch size");
    f.lr_opt = cmd->add_option("--learning-rate", f.lr, "Optimizer step size");
  };
  TrainFlags tr, tc;
  auto* cmd_train = app.add_subcommand("train", "Contrastive training");
  add_train(cmd_train, tr, true);
  auto* cmd_tc = app.add_subcommand("train-classify", "Contrastive training with a category head");
  add_train(cmd_tc, tc, false);

  // embed
  Common emb;
  std::string emb_model, emb_snippets;
  std::size_t emb_workers = 1;
  auto* cmd_emb = app.add_subcommand("embed", "Embed snippets with a trained model");
  add_common(cmd_emb, emb, true);
  cmd_emb->add_option("--model", emb_model, "Model checkpoint")->required();
  cmd_emb->add_option("--snippets", emb_snippets, "Snippet store")->required();
  auto* emb_workers_opt = cmd_emb->add_option("--workers", emb_workers, "Worker threads");

  // eval-clone
  Common ev;
  std::string ev_model, ev_snippets, ev_pairs, ev_decisions;
  double ev_threshold = 0.75;
  auto* cmd_ev = app.add_subcommand("eval-clone", "Clone detection metrics over labeled pairs");
  add_common(cmd_ev, ev, false);
  cmd_ev->add_option("--model", ev_model, "Model checkpoint")->required();
  cmd_ev->add_option("--snippets", ev_snippets, "Snippet store")->required();
  cmd_ev->add_option("--pairs", ev_pairs, "Labeled pair CSV")->required();
  auto* ev_threshold_opt = cmd_ev->add_option("--threshold", ev_threshold, "Cosine threshold");
  cmd_ev->add_option("--decisions", ev_decisions, "Per-pair decision CSV");

  // score-names
  Common sn;
  std::string sn_file;
  auto* cmd_sn = app.add_subcommand("score-names", "Subword F1 of predicted method names");
  add_common(cmd_sn, sn, false);
  cmd_sn->add_option("--predictions", sn_file, "CSV with header predicted,truth")->required();

  // report
  Common rep;
  std::string rep_log, rep_metrics;
  auto* cmd_rep = app.add_subcommand("report", "Summarize a training log and metrics");
  add_common(cmd_rep, rep, false);
  cmd_rep->add_option("--log", rep_log, "Training log (JSON lines)");
  cmd_rep->add_option("--metrics", rep_metrics, "Metrics JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << ordered_json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n" << app.help();
    return 2;
  }

  try {
    if (*cmd_pre) {
      RunConfig cfg = base_config(pre);
      if (pre_snip_opt->count()) cfg.snippets = pre_snippets;
      if (!pre_pairs.empty()) cfg.pairs = pre_pairs;
      override_if(pre_workers_opt, cfg.workers, pre_workers);
      override_if(pre_views_opt, cfg.anchor_views, pre_views);
      override_if(pre_rounds_opt, cfg.augment.max_rounds, pre_rounds);
      if (cfg.snippets.empty()) fail(ErrorCode::Usage, "preprocess needs --snippets");
      Dataset d = ingest(cfg.snippets, cfg.pairs);
      auto r = preprocess(d.snippets, cfg.augment, cfg.workers, cfg.anchor_views);
      save_samples(cfg.out, r.samples);
      ordered_json j;
      j["store"] = d.store_size;
      j["unique"] = d.snippets.size();
      j["samples"] = r.samples.size();
      j["failures"] = failures_json(r.failures);
      out << j.dump() << "\n";
      return 0;
    }
    if (*cmd_tok) {
      RunConfig cfg = base_config(tok);
      override_if(tok_max_opt, cfg.tokenizer.max_size, tok_max);
      override_if(tok_min_opt, cfg.tokenizer.min_frequency, tok_min);
      auto samples = load_samples(tok_samples);
      Vocabulary v = train_tokenizer(samples, cfg.tokenizer);
      std::ostringstream s;
      v.write(s);
      write_file(cfg.out, s.str());
      out << ordered_json{{"vocab_size", v.size()}, {"samples", samples.size()}}.dump() << "\n";
      return 0;
    }
    if (*cmd_train || *cmd_tc) {
      TrainFlags& f = *cmd_train ? tr : tc;
      RunConfig cfg = base_config(f.common);
      if (*cmd_tc) {
        cfg.train.mode = TrainMode::Classify;
      } else if (f.mode_opt->count()) {
        auto m = train_mode_from_name(f.mode);
        if (!m) fail(ErrorCode::Usage, "unknown mode " + f.mode);
        cfg.train.mode = *m;
      }
      override_if(f.epochs_opt, cfg.train.epochs, f.epochs);
      override_if(f.batch_opt, cfg.train.batch_size, f.batch);
      override_if(f.lr_opt, cfg.train.learning_rate, f.lr);
      if (!f.pairs.empty()) cfg.pairs = f.pairs;
      if (cfg.train.mode == TrainMode::SupervisedClone && !cfg.pairs)
        fail(ErrorCode::Usage, "supervised-clone training needs --pairs");

      auto samples = load_samples(f.samples);
      Vocabulary vocab = Vocabulary::load(f.vocab);
      std::vector<PairRecord> pairs;
      if (cfg.train.mode == TrainMode::SupervisedClone) pairs = load_pair_file(cfg.pairs->string());

      std::filesystem::create_directories(cfg.out);
      std::ofstream log(cfg.out / "train_log.jsonl", std::ios::trunc);
      if (!log) fail(ErrorCode::Io, "cannot write the training log");
      const std::size_t every = cfg.train.checkpoint_every;
      auto run = run_training(
          samples, pairs, vocab, cfg, [&](const StepStats& st) { log << st.to_json().dump() << "\n"; },
          [&](std::size_t epoch, const Model& m) {
            if (every && epoch % every == 0)
              m.save(cfg.out / ("model-epoch" + std::to_string(epoch) + ".tckp"));
          });
      run.model.save(cfg.out / "model.tckp");
      write_file(cfg.out / "config.json", cfg.to_json().dump(2) + "\n");
      ordered_json j;
      j["steps"] = run.summary.steps;
      j["epochs"] = run.summary.epochs;
      j["final_loss"] = run.summary.final_loss;
      j["collapse_events"] = run.summary.collapse_events;
      j["checkpoint"] = (cfg.out / "model.tckp").string();
      out << j.dump() << "\n";
      return 0;
    }
    if (*cmd_emb) {
      RunConfig cfg = base_config(emb);
      override_if(emb_workers_opt, cfg.workers, emb_workers);
      Model model = Model::load(emb_model);
      auto r = embed_snippets(model, load_store(emb_snippets), cfg.workers);
      write_file(cfg.out, embedding_lines(r));
      out << ordered_json{{"embedded", r.ids.size()}, {"failures", failures_json(r.failures)}}.dump() << "\n";
      return 0;
    }
    if (*cmd_ev) {
      RunConfig cfg = base_config(ev);
      override_if(ev_threshold_opt, cfg.eval.threshold, ev_threshold);
      Model model = Model::load(ev_model);
      auto pairs = load_pair_file(ev_pairs);
      Dataset d = ingest(load_store(ev_snippets), pairs, true);
      auto embedded = embed_snippets(model, d.snippets, cfg.workers);
      auto result = evaluate_clones(embedded, pairs, cfg.eval);
      if (!ev_decisions.empty()) {
        std::ostringstream csv;
        write_decisions_csv(csv, result.decisions);
        write_file(ev_decisions, csv.str());
      }
      ordered_json j = result.report.to_json(cfg.eval.threshold);
      if (result.skipped_pairs) j["skipped_pairs"] = result.skipped_pairs;
      write_json(cfg.out.string(), j, out);
      return 0;
    }
    if (*cmd_sn) {
      RunConfig cfg = base_config(sn);
      std::istringstream in(read_file(sn_file));
      std::string line;
      std::size_t n = 0, rows = 0;
      double p = 0, r = 0, f1 = 0;
      bool header = false;
      while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
          fail(ErrorCode::MalformedRecord, sn_file + ":" + std::to_string(n) + ": expected 2 fields");
        std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (!header) {
          if (a != "predicted" || b != "truth")
            fail(ErrorCode::MalformedRecord, sn_file + ":1: expected header predicted,truth");
          header = true;
          continue;
        }
        if (a.empty() || b.empty()) fail(ErrorCode::MalformedRecord, sn_file + ":" + std::to_string(n) + ": empty name");
        auto s = subword_f1(a, b);
        p += s.precision;
        r += s.recall;
        f1 += s.f1;
        ++rows;
      }
      if (rows == 0) fail(ErrorCode::EmptyCounts, "no predictions to score");
      ordered_json j;
      j["count"] = rows;
      j["precision"] = p / static_cast<double>(rows);
      j["recall"] = r / static_cast<double>(rows);
      j["f1"] = f1 / static_cast<double>(rows);
      write_json(cfg.out.string(), j, out);
      return 0;
    }
    if (*cmd_rep) {
      RunConfig cfg = base_config(rep);
      if (rep_log.empty() && rep_metrics.empty()) fail(ErrorCode::Usage, "report needs --log or --metrics");
      ordered_json j;
      if (!rep_log.empty()) {
        std::istringstream in(read_file(rep_log));
        std::string line;
        std::size_t steps = 0, collapse = 0;
        ordered_json first, last;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          auto e = ordered_json::parse(line, nullptr, false);
          if (e.is_discarded()) fail(ErrorCode::MalformedRecord, rep_log + ": invalid JSON line");
          if (steps++ == 0) first = e;
          last = e;
          if (e.contains("warning")) ++collapse;
        }
        j["steps"] = steps;
        j["epochs"] = steps ? last.value("epoch", 0) : 0;
        if (steps) {
          j["first_loss"] = first["loss_total"];
          j["final_loss"] = last["loss_total"];
          j["final_alpha"] = last["alpha"];
          j["final_queue_len"] = last["queue_len"];
        }
        j["collapse_warnings"] = collapse;
      }
      if (!rep_metrics.empty()) {
        auto m = ordered_json::parse(read_file(rep_metrics), nullptr, false);
        if (m.is_discarded()) fail(ErrorCode::MalformedRecord, rep_metrics + ": invalid JSON");
        j["metrics"] = m;
      }
      write_json(cfg.out.string(), j, out);
      return 0;
    }
  } catch (const Error& e) {
    err << ordered_json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return e.code() == ErrorCode::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << ordered_json{{"error", "Io"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tcode
