#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "transformcode/encoder/encoder.hpp"

namespace tcode {

using EvalVec = RowVec<double>;

struct ConfusionCounts {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  void add(bool predicted, bool actual);
  ConfusionCounts& operator+=(const ConfusionCounts& o);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct CloneEvalConfig {
  double threshold = 0.75;

  /// Throws Error(InvalidConfig) outside [-1, 1].
  void validate() const;
};

struct MetricsReport {
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
  ConfusionCounts counts;
  /// Set when a ratio had a zero denominator and was reported as 0.
  bool degenerate = false;

  nlohmann::json to_json(double threshold) const;
};

/// Throws ZeroVector or DimensionMismatch.
double cosine_similarity(const EvalVec& a, const EvalVec& b);

/// Clone iff similarity >= threshold.
bool classify_pair(const EvalVec& a, const EvalVec& b, const CloneEvalConfig& cfg = {});

/// Throws EmptyCounts on an all-zero table.
MetricsReport compute_metrics(const ConfusionCounts& c);

struct PairDecision {
  std::string id1, id2;
  double similarity = 0;
  bool decision = false;
  bool label = false;
};

ConfusionCounts tally(const std::vector<PairDecision>& decisions);

/// id1,id2,sim,decision,label with a header row.
void write_decisions_csv(std::ostream& out, const std::vector<PairDecision>& decisions);

/// Splits on case boundaries, '_' and '-', lowercasing each piece.
std::vector<std::string> subword_split(const std::string& name);

struct SubwordScore {
  double precision = 0, recall = 0, f1 = 0;
};

/// Multiset overlap of subwords. Predicted subwords count against precision
/// only where the prediction is longer than the truth.
SubwordScore subword_f1(const std::string& predicted, const std::string& truth);

/// softmax(W e + b) with W of shape classes x dim and b of length classes.
EvalVec classify_snippet(const EvalVec& embedding, const Mat<double>& weight, const EvalVec& bias);

}  // namespace tcode
