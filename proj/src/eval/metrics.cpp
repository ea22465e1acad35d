#include "transformcode/eval/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "transformcode/error.hpp"
#include "transformcode/trainer/losses.hpp"

namespace tcode {

void ConfusionCounts::add(bool predicted, bool actual) {
  if (predicted && actual) ++tp;
  else if (predicted) ++fp;
  else if (actual) ++fn;
  else ++tn;
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

void CloneEvalConfig::validate() const {
  if (!(threshold >= -1.0 && threshold <= 1.0))
    fail(ErrorCode::InvalidConfig, "threshold must lie in [-1, 1]");
}

nlohmann::json MetricsReport::to_json(double threshold) const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["counts"] = {{"tp", counts.tp}, {"tn", counts.tn}, {"fp", counts.fp}, {"fn", counts.fn}};
  j["threshold"] = threshold;
  if (degenerate) j["degenerate"] = true;
  return j;
}

double cosine_similarity(const EvalVec& a, const EvalVec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "embeddings differ in dimension");
  double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) fail(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  if (a == b) return 1.0;
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

bool classify_pair(const EvalVec& a, const EvalVec& b, const CloneEvalConfig& cfg) {
  return cosine_similarity(a, b) >= cfg.threshold;
}

MetricsReport compute_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) fail(ErrorCode::EmptyCounts, "confusion table is empty");
  MetricsReport r;
  r.counts = c;
  auto ratio = [&](double num, double den) {
    if (den == 0) {
      r.degenerate = true;
      return 0.0;
    }
    return num / den;
  };
  r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  r.precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  r.recall = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  r.f1 = ratio(2 * r.precision * r.recall, r.precision + r.recall);
  return r;
}

ConfusionCounts tally(const std::vector<PairDecision>& decisions) {
  ConfusionCounts c;
  for (const auto& d : decisions) c.add(d.decision, d.label);
  return c;
}

void write_decisions_csv(std::ostream& out, const std::vector<PairDecision>& decisions) {
  out << "id1,id2,sim,decision,label\n";
  char buf[32];
  for (const auto& d : decisions) {
    std::snprintf(buf, sizeof buf, "%.9f", d.similarity);
    out << d.id1 << ',' << d.id2 << ',' << buf << ',' << (d.decision ? "clone" : "non-clone") << ','
        << (d.label ? "clone" : "non-clone") << '\n';
  }
}

std::vector<std::string> subword_split(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  auto up = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
  auto low = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '_' || c == '-') {
      flush();
      continue;
    }
    if (up(c) && i > 0) {
      char p = name[i - 1];
      bool next_low = i + 1 < name.size() && low(name[i + 1]);
      // fooBar | HTTPServer -> HTTP Server
      if (!up(p) || next_low) {
        if (p != '_' && p != '-') flush();
      }
    }
    cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return out;
}

SubwordScore subword_f1(const std::string& predicted, const std::string& truth) {
  auto p = subword_split(predicted), t = subword_split(truth);
  std::map<std::string, long> pc, tc;
  for (auto& s : p) ++pc[s];
  for (auto& s : t) ++tc[s];
  long m = 0;
  for (auto& [s, n] : pc) {
    auto it = tc.find(s);
    if (it != tc.end()) m += std::min(n, it->second);
  }
  SubwordScore r;
  if (m == 0 || t.empty()) return r;
  long extra = std::max<long>(0, static_cast<long>(p.size()) - static_cast<long>(t.size()));
  r.precision = static_cast<double>(m) / static_cast<double>(m + extra);
  r.recall = static_cast<double>(m) / static_cast<double>(t.size());
  r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

EvalVec classify_snippet(const EvalVec& embedding, const Mat<double>& weight, const EvalVec& bias) {
  if (weight.cols() != embedding.size() || weight.rows() != bias.size())
    fail(ErrorCode::DimensionMismatch, "classifier head does not fit the embedding");
  return softmax(embedding * weight.transpose() + bias);
}

}  // namespace tcode
