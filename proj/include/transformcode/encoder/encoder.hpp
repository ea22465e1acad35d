#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace tcode {

struct EncoderConfig {
  int n_layers = 2;
  int d_model = 64;
  int n_heads = 4;
  /// 0 means 4 * d_model.
  int ffn_dim = 0;
  int max_relative_distance = 32;
  int vocab_size = 0;
  /// Output dims of the projection head; empty means {d_model, 256}.
  std::vector<int> mlp_dims;
  int max_sequence_length = 512;
  bool relative_values = true;
  double layer_norm_eps = 1e-5;

  int d_head() const { return d_model / n_heads; }
  /// Copy with defaults filled in; throws InvalidConfig on inconsistent fields.
  EncoderConfig resolved() const;
  int embedding_dim() const { return resolved().mlp_dims.back(); }

  nlohmann::json to_json() const;
  static EncoderConfig from_json(const nlohmann::json& j);

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

template <class S>
struct LayerParams {
  // Projections act on row vectors: x * W.
  Mat<S> wq, wk, wv, wo;
  /// (2k+1) x d_head, shared by all heads.
  Mat<S> rel_k, rel_v;
  Mat<S> ffn_w1, ffn_b1, ffn_w2, ffn_b2;
  Mat<S> ln1_gain, ln1_bias, ln2_gain, ln2_bias;
};

template <class S>
struct EncoderParams {
  Mat<S> token_embedding;
  std::vector<LayerParams<S>> layers;
  /// head_w[i] is out x in and acts as W * h.
  std::vector<Mat<S>> head_w, head_b;

  /// Zero tensors with the shapes implied by `cfg`.
  static EncoderParams zeros(const EncoderConfig& cfg);

  /// Every tensor with a stable name, in a fixed order.
  std::vector<std::pair<std::string, Mat<S>*>> tensors();
  std::vector<std::pair<std::string, const Mat<S>*>> tensors() const;

  void set_zero();
  std::size_t parameter_count() const;

  template <class T>
  EncoderParams<T> cast() const;
};

/// Fan-in scaled uniform initialization driven by `seed`.
template <class S>
void init_params(EncoderParams<S>& params, const EncoderConfig& cfg, std::uint64_t seed);

/// Index into a relative table for query i and key j.
inline int rel_index(int i, int j, int k) {
  int d = j - i;
  if (d < -k) d = -k;
  if (d > k) d = k;
  return d + k;
}

/// Activations kept by a forward pass for the backward pass.
template <class S>
struct ForwardCache {
  struct Layer {
    Mat<S> x, q, k, v;
    std::vector<Mat<S>> probs;
    Mat<S> z, xhat1, y1, ffn_pre, ffn_act, xhat2, out;
    RowVec<S> inv_std1, inv_std2;
  };
  std::vector<std::uint32_t> ids;
  std::vector<Layer> layers;
  RowVec<S> pooled;
  std::vector<RowVec<S>> head_pre;  // pre-activation of each head layer
  std::vector<RowVec<S>> head_in;   // input of each head layer
  RowVec<S> z;
  S z_norm = 0;
  RowVec<S> embedding;
};

template <class S>
class Encoder {
 public:
  Encoder() = default;
  Encoder(const EncoderConfig& cfg, std::uint64_t seed);
  Encoder(const EncoderConfig& cfg, EncoderParams<S> params);

  const EncoderConfig& config() const { return cfg_; }
  EncoderParams<S>& params() { return params_; }
  const EncoderParams<S>& params() const { return params_; }

  /// Attention logits of one head: (q_i k_j + q_i a_{ij}) / sqrt(d_head).
  Mat<S> attention_logits(const Mat<S>& x, int layer, int head) const;

  /// Final hidden states, L x d_model.
  Mat<S> hidden(const std::vector<std::uint32_t>& ids) const;
  /// Projection head on a pooled vector.
  RowVec<S> project(const RowVec<S>& pooled) const;
  /// Mean-pooled, projected, unit-norm embedding.
  RowVec<S> embed(const std::vector<std::uint32_t>& ids) const;

  ForwardCache<S> forward(const std::vector<std::uint32_t>& ids) const;
  /// Accumulates d(loss)/d(params) into `grads` given d(loss)/d(embedding).
  void backward(const ForwardCache<S>& cache, const RowVec<S>& d_embedding,
                EncoderParams<S>& grads) const;

 private:
  void check_ids(const std::vector<std::uint32_t>& ids) const;

  EncoderConfig cfg_;
  EncoderParams<S> params_;
};

template <class S>
template <class T>
EncoderParams<T> EncoderParams<S>::cast() const {
  EncoderParams<T> out;
  out.layers.resize(layers.size());
  out.head_w.resize(head_w.size());
  out.head_b.resize(head_b.size());
  auto src = tensors();
  auto dst = out.tensors();
  for (std::size_t i = 0; i < src.size(); ++i) *dst[i].second = src[i].second->template cast<T>();
  return out;
}

extern template struct EncoderParams<float>;
extern template struct EncoderParams<double>;
extern template class Encoder<float>;
extern template class Encoder<double>;

}  // namespace tcode
