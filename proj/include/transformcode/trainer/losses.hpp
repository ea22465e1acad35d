#pragma once

#include <optional>
#include <vector>

#include "transformcode/encoder/encoder.hpp"

namespace tcode {

using Vec = RowVec<double>;

/// -log(exp(q.k+/tau) / (exp(q.k+/tau) + sum exp(q.k-/tau))). Zero negatives
/// give 0.
double info_nce(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives, double tau);

struct InfoNceGrad {
  double loss = 0;
  Vec d_q;
  Vec d_k_pos;
  std::vector<Vec> d_negatives;
};

InfoNceGrad info_nce_grad(const Vec& q, const Vec& k_pos, const std::vector<Vec>& negatives,
                          double tau);

/// alpha = sigmoid(logit), so alpha stays in (0, 1) while logit is free.
double sigmoid(double x);
double logit(double p);

/// alpha * contrastive + (1 - alpha) * supervised.
double combined_supervised_loss(double contrastive, double supervised, double alpha);

/// alpha * contrastive + (1 - alpha) * category + coeff * anchor.
double classification_loss(double contrastive, double category, double anchor_category,
                           double alpha, double coeff = 0.5);

/// Partial derivatives of the weighted losses. d_logit is taken through the
/// sigmoid.
struct WeightedLossGrad {
  double total = 0;
  double d_contrastive = 0;
  double d_supervised = 0;
  double d_anchor = 0;
  double d_alpha = 0;
  double d_logit = 0;
};

WeightedLossGrad combined_supervised_grad(double contrastive, double supervised, double alpha_logit);
WeightedLossGrad classification_grad(double contrastive, double category, double anchor_category,
                                     double alpha_logit, double coeff = 0.5);

/// Softmax probabilities of `logits`.
Vec softmax(const Vec& logits);

/// -log softmax(logits)[label] and its gradient w.r.t. the logits.
double cross_entropy(const Vec& logits, int label, Vec* d_logits = nullptr);

struct LossBreakdown {
  double contrastive = 0;
  std::optional<double> supervised;
  std::optional<double> anchor;
  double total = 0;
  double alpha_value = 0;
};

}  // namespace tcode
