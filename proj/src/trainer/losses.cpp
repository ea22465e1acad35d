#include "transformcode/trainer/losses.hpp"

#include <algorithm>
#include <cmath>

#include "transformcode/error.hpp"

namespace tcode {

namespace {

void check_inputs(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives, double tau) {
  if (!(tau > 0)) fail(ErrorCode::NonPositiveTemperature, "temperature must be positive");
  if (k_pos.size() != q.size()) fail(ErrorCode::DimensionMismatch, "positive key dimension differs from query");
  for (const auto& n : negatives)
    if (n.size() != q.size()) fail(ErrorCode::DimensionMismatch, "negative key dimension differs from query");
}

// Logits with the positive at index 0, and their log-sum-exp.
std::vector<double> logits_of(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives,
                              double tau, double& lse) {
  std::vector<double> l;
  l.reserve(negatives.size() + 1);
  l.push_back(q.dot(k_pos) / tau);
  for (const auto& n : negatives) l.push_back(q.dot(n) / tau);
  double mx = *std::max_element(l.begin(), l.end());
  double s = 0;
  for (double v : l) s += std::exp(v - mx);
  lse = mx + std::log(s);
  return l;
}

}  // namespace

double info_nce(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives, double tau) {
  check_inputs(q, k_pos, negatives, tau);
  if (negatives.empty()) return 0.0;
  double lse = 0;
  auto l = logits_of(q, k_pos, negatives, tau, lse);
  return lse - l[0];
}

InfoNceGrad info_nce_grad(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives,
                          double tau) {
  check_inputs(q, k_pos, negatives, tau);
  InfoNceGrad g;
  g.d_q = Vec::Zero(q.size());
  g.d_k_pos = Vec::Zero(q.size());
  g.d_negatives.assign(negatives.size(), Vec::Zero(q.size()));
  if (negatives.empty()) return g;
  double lse = 0;
  auto l = logits_of(q, k_pos, negatives, tau, lse);
  g.loss = lse - l[0];
  double p0 = std::exp(l[0] - lse);
  g.d_q = (p0 - 1.0) / tau * k_pos;
  g.d_k_pos = (p0 - 1.0) / tau * q;
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    double p = std::exp(l[i + 1] - lse);
    g.d_q += p / tau * negatives[i];
    g.d_negatives[i] = p / tau * q;
  }
  return g;
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) {
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
  return std::log(p / (1.0 - p));
}

double combined_supervised_loss(double contrastive, double supervised, double alpha) {
  return alpha * contrastive + (1.0 - alpha) * supervised;
}

double classification_loss(double contrastive, double category, double anchor_category,
                           double alpha, double coeff) {
  return alpha * contrastive + (1.0 - alpha) * category + coeff * anchor_category;
}

WeightedLossGrad combined_supervised_grad(double contrastive, double supervised, double alpha_logit) {
  WeightedLossGrad g;
  double a = sigmoid(alpha_logit);
  g.total = combined_supervised_loss(contrastive, supervised, a);
  g.d_contrastive = a;
  g.d_supervised = 1.0 - a;
  g.d_alpha = contrastive - supervised;
  g.d_logit = g.d_alpha * a * (1.0 - a);
  return g;
}

WeightedLossGrad classification_grad(double contrastive, double category, double anchor_category,
                                     double alpha_logit, double coeff) {
  if (coeff < 0) fail(ErrorCode::InvalidConfig, "anchor coefficient must be non-negative");
  WeightedLossGrad g;
  double a = sigmoid(alpha_logit);
  g.total = classification_loss(contrastive, category, anchor_category, a, coeff);
  g.d_contrastive = a;
  g.d_supervised = 1.0 - a;
  g.d_anchor = coeff;
  g.d_alpha = contrastive - category;
  g.d_logit = g.d_alpha * a * (1.0 - a);
  return g;
}

Vec softmax(const Vec& logits) {
  if (logits.size() == 0) fail(ErrorCode::DimensionMismatch, "softmax of an empty vector");
  Vec p = (logits.array() - logits.maxCoeff()).exp().matrix();
  return p / p.sum();
}

double cross_entropy(const Vec& logits, int label, Vec* d_logits) {
  if (label < 0 || label >= logits.size())
    fail(ErrorCode::DimensionMismatch, "label outside the classifier's range");
  double mx = logits.maxCoeff();
  double lse = mx + std::log((logits.array() - mx).exp().sum());
  if (d_logits) {
    *d_logits = (logits.array() - lse).exp().matrix();
    (*d_logits)(label) -= 1.0;
  }
  return lse - logits(label);
}

}  // namespace tcode
