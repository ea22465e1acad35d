#include "transformcode/trainer/moco.hpp"

#include <cmath>

#include "transformcode/error.hpp"

namespace tcode {

void NegativeQueue::enqueue(const std::vector<RowVec<float>>& keys) {
  enqueue(keys, std::vector<std::string>(keys.size()));
}

void NegativeQueue::enqueue(const std::vector<RowVec<float>>& keys, const std::vector<std::string>& ids) {
  if (ids.size() != keys.size()) fail(ErrorCode::ShapeMismatch, "one id per key is required");
  for (std::size_t i = 0; i < keys.size(); ++i) {
    entries_.push_back(keys[i]);
    owners_.push_back(ids[i]);
  }
  while (entries_.size() > capacity_) {
    entries_.pop_front();
    owners_.pop_front();
  }
}

template <class S>
void momentum_update(EncoderParams<S>& key, const EncoderParams<S>& query, double m) {
  if (!(m >= 0 && m <= 1)) fail(ErrorCode::InvalidConfig, "momentum must lie in [0, 1]");
  auto k = key.tensors();
  auto q = query.tensors();
  if (k.size() != q.size()) fail(ErrorCode::ShapeMismatch, "encoders differ in tensor count");
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i].second->rows() != q[i].second->rows() || k[i].second->cols() != q[i].second->cols())
      fail(ErrorCode::ShapeMismatch, "tensor " + k[i].first + " differs in shape");
  for (std::size_t i = 0; i < k.size(); ++i) {
    S* kd = k[i].second->data();
    const S* qd = q[i].second->data();
    for (Eigen::Index j = 0; j < k[i].second->size(); ++j)
      kd[j] = static_cast<S>(m * static_cast<double>(kd[j]) + (1.0 - m) * static_cast<double>(qd[j]));
  }
}

template void momentum_update<float>(EncoderParams<float>&, const EncoderParams<float>&, double);
template void momentum_update<double>(EncoderParams<double>&, const EncoderParams<double>&, double);

MomentumPair::MomentumPair(const EncoderConfig& cfg, std::uint64_t seed, double m)
    : query(cfg, seed), key(query), momentum(m) {
  if (!(m >= 0 && m < 1)) fail(ErrorCode::InvalidConfig, "momentum must lie in [0, 1)");
}

void Adam::step(const std::vector<Mat<float>*>& params, const std::vector<const Mat<float>*>& grads) {
  if (params.size() != grads.size()) fail(ErrorCode::ShapeMismatch, "parameter and gradient lists differ");
  if (m_.empty()) {
    for (auto* p : params) {
      m_.push_back(Mat<double>::Zero(p->rows(), p->cols()));
      v_.push_back(Mat<double>::Zero(p->rows(), p->cols()));
    }
  }
  if (m_.size() != params.size()) fail(ErrorCode::ShapeMismatch, "optimizer tensor list changed");
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    float* p = params[i]->data();
    const float* g = grads[i]->data();
    double* m = m_[i].data();
    double* v = v_[i].data();
    for (Eigen::Index j = 0; j < params[i]->size(); ++j) {
      double gj = g[j];
      m[j] = cfg_.beta1 * m[j] + (1 - cfg_.beta1) * gj;
      v[j] = cfg_.beta2 * v[j] + (1 - cfg_.beta2) * gj * gj;
      double update = cfg_.learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + cfg_.epsilon);
      p[j] = static_cast<float>(p[j] - update);
    }
  }
}

}  // namespace tcode
