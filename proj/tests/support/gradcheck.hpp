#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "transformcode/encoder/encoder.hpp"

namespace tcode::test {

using Embeddings = std::vector<RowVec<double>>;

/// Scalar loss over a set of embeddings. When `grad` is non-null it receives
/// d(loss)/d(embedding) for every input.
struct EmbeddingLoss {
  std::vector<std::vector<std::uint32_t>> inputs;
  std::function<double(const Embeddings&, Embeddings* grad)> fn;
};

struct GradReport {
  std::map<std::string, double> errors;
  double max_error = 0;
};

inline double loss_at(const Encoder<double>& enc, const EmbeddingLoss& loss) {
  Embeddings e;
  for (const auto& ids : loss.inputs) e.push_back(enc.embed(ids));
  return loss.fn(e, nullptr);
}

/// Compares backprop against central differences for every tensor.
/// Error per tensor is |analytic - numeric|_2 / max(|analytic|_2, |numeric|_2).
inline GradReport check_encoder_gradients(const EncoderConfig& cfg, std::uint64_t seed,
                                          const EmbeddingLoss& loss, double h = 1e-6) {
  Encoder<double> enc(cfg, seed);
  std::vector<ForwardCache<double>> caches;
  Embeddings e;
  for (const auto& ids : loss.inputs) {
    caches.push_back(enc.forward(ids));
    e.push_back(caches.back().embedding);
  }
  Embeddings de;
  loss.fn(e, &de);
  auto grads = EncoderParams<double>::zeros(enc.config());
  for (std::size_t i = 0; i < caches.size(); ++i) enc.backward(caches[i], de[i], grads);

  GradReport report;
  auto g = grads.tensors();
  auto p = enc.params().tensors();
  for (std::size_t t = 0; t < p.size(); ++t) {
    Mat<double>& w = *p[t].second;
    Mat<double> numeric(w.rows(), w.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      double orig = w.data()[i];
      w.data()[i] = orig + h;
      double up = loss_at(enc, loss);
      w.data()[i] = orig - h;
      double down = loss_at(enc, loss);
      w.data()[i] = orig;
      numeric.data()[i] = (up - down) / (2 * h);
    }
    double diff = (numeric - *g[t].second).norm();
    double scale = std::max(numeric.norm(), g[t].second->norm());
    double err = scale < 1e-10 ? diff : diff / scale;
    report.errors[p[t].first] = err;
    report.max_error = std::max(report.max_error, err);
  }
  return report;
}

/// Linear probe loss sum_s c_s . e_s over `n_inputs` random sequences.
inline EmbeddingLoss dot_loss(int dim, int n_inputs, int vocab = 10, int length = 7,
                              unsigned seed = 5) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  EmbeddingLoss loss;
  auto coeffs = std::make_shared<Embeddings>();
  for (int s = 0; s < n_inputs; ++s) {
    std::vector<std::uint32_t> ids;
    for (int t = 0; t < length; ++t) ids.push_back(rng() % vocab);
    loss.inputs.push_back(ids);
    RowVec<double> c(dim);
    for (int i = 0; i < dim; ++i) c(i) = nd(rng);
    coeffs->push_back(c);
  }
  loss.fn = [coeffs](const Embeddings& e, Embeddings* grad) {
    double total = 0;
    for (std::size_t s = 0; s < e.size(); ++s) total += (*coeffs)[s].dot(e[s]);
    if (grad) *grad = *coeffs;
    return total;
  };
  return loss;
}

}  // namespace tcode::test
