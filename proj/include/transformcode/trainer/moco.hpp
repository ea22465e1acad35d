#pragma once

#include <deque>
#include <string>
#include <vector>

#include "transformcode/encoder/encoder.hpp"

namespace tcode {

/// Bounded FIFO of key embeddings; the oldest entry leaves first.
class NegativeQueue {
 public:
  explicit NegativeQueue(std::size_t capacity = 4096) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::deque<RowVec<float>>& entries() const { return entries_; }
  /// Sample id of each entry; empty when enqueued without ids.
  const std::deque<std::string>& owners() const { return owners_; }

  /// Appends in batch order, then evicts from the front down to capacity.
  void enqueue(const std::vector<RowVec<float>>& keys);
  void enqueue(const std::vector<RowVec<float>>& keys, const std::vector<std::string>& ids);
  void clear() {
    entries_.clear();
    owners_.clear();
  }

 private:
  std::size_t capacity_;
  std::deque<RowVec<float>> entries_;
  std::deque<std::string> owners_;
};

/// key <- m * key + (1 - m) * query, elementwise over every tensor.
template <class S>
void momentum_update(EncoderParams<S>& key, const EncoderParams<S>& query, double m);

/// Query encoder trained by gradient; key encoder follows by moving average.
struct MomentumPair {
  Encoder<float> query;
  Encoder<float> key;
  double momentum = 0.999;

  MomentumPair() = default;
  /// Key starts as an exact copy of the query.
  MomentumPair(const EncoderConfig& cfg, std::uint64_t seed, double momentum);

  void update() { momentum_update(key.params(), query.params(), momentum); }
};

/// Adaptive-moment optimizer over a fixed list of tensors.
class Adam {
 public:
  struct Config {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
  };

  Adam() = default;
  explicit Adam(Config cfg) : cfg_(cfg) {}

  /// `params` and `grads` must list the same tensors in the same order on
  /// every call.
  void step(const std::vector<Mat<float>*>& params, const std::vector<const Mat<float>*>& grads);
  std::size_t steps() const { return t_; }
  const Config& config() const { return cfg_; }

 private:
  Config cfg_;
  std::size_t t_ = 0;
  std::vector<Mat<double>> m_, v_;
};

}  // namespace tcode
