#include "transformcode/encoder/encoder.hpp"

#include <cmath>

#include "transformcode/error.hpp"
#include "transformcode/util/rng.hpp"

namespace tcode {

EncoderConfig EncoderConfig::resolved() const {
  EncoderConfig c = *this;
  if (c.ffn_dim == 0) c.ffn_dim = 4 * c.d_model;
  if (c.mlp_dims.empty()) c.mlp_dims = {c.d_model, 256};
  if (c.n_layers < 1) fail(ErrorCode::InvalidConfig, "n_layers must be >= 1");
  if (c.d_model < 1 || c.n_heads < 1 || c.d_model % c.n_heads != 0)
    fail(ErrorCode::InvalidConfig, "d_model must be a positive multiple of n_heads");
  if (c.max_relative_distance < 1) fail(ErrorCode::InvalidConfig, "max_relative_distance must be >= 1");
  if (c.vocab_size < 1) fail(ErrorCode::InvalidConfig, "vocab_size must be >= 1");
  if (c.ffn_dim < 1) fail(ErrorCode::InvalidConfig, "ffn_dim must be >= 1");
  if (c.max_sequence_length < 1) fail(ErrorCode::InvalidConfig, "max_sequence_length must be >= 1");
  for (int d : c.mlp_dims)
    if (d < 1) fail(ErrorCode::InvalidConfig, "mlp_dims entries must be >= 1");
  if (!(c.layer_norm_eps > 0)) fail(ErrorCode::InvalidConfig, "layer_norm_eps must be > 0");
  return c;
}

nlohmann::json EncoderConfig::to_json() const {
  return {{"n_layers", n_layers},
          {"d_model", d_model},
          {"n_heads", n_heads},
          {"ffn_dim", ffn_dim},
          {"max_relative_distance", max_relative_distance},
          {"vocab_size", vocab_size},
          {"mlp_dims", mlp_dims},
          {"max_sequence_length", max_sequence_length},
          {"relative_values", relative_values},
          {"layer_norm_eps", layer_norm_eps}};
}

EncoderConfig EncoderConfig::from_json(const nlohmann::json& j) {
  EncoderConfig c;
  try {
    c.n_layers = j.value("n_layers", c.n_layers);
    c.d_model = j.value("d_model", c.d_model);
    c.n_heads = j.value("n_heads", c.n_heads);
    c.ffn_dim = j.value("ffn_dim", c.ffn_dim);
    c.max_relative_distance = j.value("max_relative_distance", c.max_relative_distance);
    c.vocab_size = j.value("vocab_size", c.vocab_size);
    c.mlp_dims = j.value("mlp_dims", c.mlp_dims);
    c.max_sequence_length = j.value("max_sequence_length", c.max_sequence_length);
    c.relative_values = j.value("relative_values", c.relative_values);
    c.layer_norm_eps = j.value("layer_norm_eps", c.layer_norm_eps);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("encoder config: ") + e.what());
  }
  return c;
}

template <class S>
EncoderParams<S> EncoderParams<S>::zeros(const EncoderConfig& raw) {
  const EncoderConfig cfg = raw.resolved();
  const int d = cfg.d_model, dh = cfg.d_head(), f = cfg.ffn_dim;
  const int rel = 2 * cfg.max_relative_distance + 1;
  EncoderParams p;
  p.token_embedding = Mat<S>::Zero(cfg.vocab_size, d);
  for (int l = 0; l < cfg.n_layers; ++l) {
    LayerParams<S> L;
    L.wq = L.wk = L.wv = L.wo = Mat<S>::Zero(d, d);
    L.rel_k = Mat<S>::Zero(rel, dh);
    L.rel_v = cfg.relative_values ? Mat<S>::Zero(rel, dh) : Mat<S>();
    L.ffn_w1 = Mat<S>::Zero(d, f);
    L.ffn_b1 = Mat<S>::Zero(1, f);
    L.ffn_w2 = Mat<S>::Zero(f, d);
    L.ffn_b2 = Mat<S>::Zero(1, d);
    L.ln1_gain = L.ln1_bias = L.ln2_gain = L.ln2_bias = Mat<S>::Zero(1, d);
    p.layers.push_back(std::move(L));
  }
  int in = d;
  for (int out : cfg.mlp_dims) {
    p.head_w.push_back(Mat<S>::Zero(out, in));
    p.head_b.push_back(Mat<S>::Zero(1, out));
    in = out;
  }
  return p;
}

template <class S>
std::vector<std::pair<std::string, Mat<S>*>> EncoderParams<S>::tensors() {
  std::vector<std::pair<std::string, Mat<S>*>> out;
  out.emplace_back("embedding", &token_embedding);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto& L = layers[l];
    const std::string p = "layer" + std::to_string(l) + ".";
    for (auto [name, t] : std::initializer_list<std::pair<const char*, Mat<S>*>>{
             {"wq", &L.wq},           {"wk", &L.wk},           {"wv", &L.wv},
             {"wo", &L.wo},           {"rel_k", &L.rel_k},     {"rel_v", &L.rel_v},
             {"ffn_w1", &L.ffn_w1},   {"ffn_b1", &L.ffn_b1},   {"ffn_w2", &L.ffn_w2},
             {"ffn_b2", &L.ffn_b2},   {"ln1_gain", &L.ln1_gain}, {"ln1_bias", &L.ln1_bias},
             {"ln2_gain", &L.ln2_gain}, {"ln2_bias", &L.ln2_bias}})
      out.emplace_back(p + name, t);
  }
  for (std::size_t i = 0; i < head_w.size(); ++i) {
    out.emplace_back("head" + std::to_string(i) + ".w", &head_w[i]);
    out.emplace_back("head" + std::to_string(i) + ".b", &head_b[i]);
  }
  return out;
}

template <class S>
std::vector<std::pair<std::string, const Mat<S>*>> EncoderParams<S>::tensors() const {
  auto mut = const_cast<EncoderParams*>(this)->tensors();
  return {mut.begin(), mut.end()};
}

template <class S>
void EncoderParams<S>::set_zero() {
  for (auto& [_, t] : tensors()) t->setZero();
}

template <class S>
std::size_t EncoderParams<S>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tensors()) n += static_cast<std::size_t>(t->size());
  return n;
}

template <class S>
void init_params(EncoderParams<S>& params, const EncoderConfig& raw, std::uint64_t seed) {
  const EncoderConfig cfg = raw.resolved();
  params = EncoderParams<S>::zeros(cfg);
  Rng rng(seed);
  auto fill = [&](Mat<S>& m, double bound) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<S>(rng.uniform(-bound, bound));
  };
  const double d = cfg.d_model;
  fill(params.token_embedding, 1.0);
  for (auto& L : params.layers) {
    for (Mat<S>* w : {&L.wq, &L.wk, &L.wv, &L.wo}) fill(*w, 1.0 / std::sqrt(d));
    fill(L.rel_k, 1.0 / std::sqrt(static_cast<double>(cfg.d_head())));
    fill(L.rel_v, 1.0 / std::sqrt(static_cast<double>(cfg.d_head())));
    fill(L.ffn_w1, 1.0 / std::sqrt(d));
    fill(L.ffn_w2, 1.0 / std::sqrt(static_cast<double>(cfg.ffn_dim)));
    L.ln1_gain.setOnes();
    L.ln2_gain.setOnes();
  }
  for (auto& w : params.head_w) fill(w, 1.0 / std::sqrt(static_cast<double>(w.cols())));
}

namespace {

// Row-wise layer norm; returns xhat and fills inv_std.
template <class S>
Mat<S> normalize_rows(const Mat<S>& x, S eps, RowVec<S>& inv_std) {
  const Eigen::Index n = x.cols();
  Mat<S> xhat(x.rows(), n);
  inv_std.resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    S mean = x.row(r).sum() / static_cast<S>(n);
    RowVec<S> c = x.row(r).array() - mean;
    S var = c.squaredNorm() / static_cast<S>(n);
    S inv = S(1) / std::sqrt(var + eps);
    inv_std(r) = inv;
    xhat.row(r) = c * inv;
  }
  return xhat;
}

template <class S>
Mat<S> apply_gain(const Mat<S>& xhat, const Mat<S>& gain, const Mat<S>& bias) {
  Mat<S> y = xhat;
  for (Eigen::Index r = 0; r < y.rows(); ++r)
    y.row(r) = y.row(r).cwiseProduct(gain.row(0)) + bias.row(0);
  return y;
}

template <class S>
Mat<S> layer_norm_backward(const Mat<S>& dy, const Mat<S>& xhat, const RowVec<S>& inv_std,
                           const Mat<S>& gain, Mat<S>& d_gain, Mat<S>& d_bias) {
  const S n = static_cast<S>(xhat.cols());
  d_gain.row(0) += dy.cwiseProduct(xhat).colwise().sum();
  d_bias.row(0) += dy.colwise().sum();
  Mat<S> dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    RowVec<S> dxhat = dy.row(r).cwiseProduct(gain.row(0));
    S m1 = dxhat.sum() / n;
    S m2 = dxhat.dot(xhat.row(r)) / n;
    dx.row(r) = inv_std(r) * (dxhat.array() - m1 - xhat.row(r).array() * m2).matrix();
  }
  return dx;
}

template <class S>
void softmax_rows(Mat<S>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    S mx = m.row(r).maxCoeff();
    m.row(r) = (m.row(r).array() - mx).exp();
    m.row(r) /= m.row(r).sum();
  }
}

}  // namespace

template <class S>
Encoder<S>::Encoder(const EncoderConfig& cfg, std::uint64_t seed) : cfg_(cfg.resolved()) {
  init_params(params_, cfg_, seed);
}

template <class S>
Encoder<S>::Encoder(const EncoderConfig& cfg, EncoderParams<S> params)
    : cfg_(cfg.resolved()), params_(std::move(params)) {
  auto reference = EncoderParams<S>::zeros(cfg_);
  auto expect = reference.tensors();
  auto got = params_.tensors();
  if (expect.size() != got.size()) fail(ErrorCode::ShapeMismatch, "parameter count mismatch");
  for (std::size_t i = 0; i < got.size(); ++i)
    if (expect[i].second->rows() != got[i].second->rows() ||
        expect[i].second->cols() != got[i].second->cols())
      fail(ErrorCode::ShapeMismatch, "shape mismatch for " + got[i].first);
}

template <class S>
void Encoder<S>::check_ids(const std::vector<std::uint32_t>& ids) const {
  if (ids.empty()) fail(ErrorCode::EmptySequence, "empty id sequence");
  if (static_cast<int>(ids.size()) > cfg_.max_sequence_length)
    fail(ErrorCode::SequenceTooLong, "sequence of " + std::to_string(ids.size()) +
                                         " exceeds max_sequence_length " +
                                         std::to_string(cfg_.max_sequence_length));
  for (auto id : ids)
    if (static_cast<int>(id) >= cfg_.vocab_size)
      fail(ErrorCode::IdOutOfRange, "token id " + std::to_string(id) + " outside vocabulary");
}

template <class S>
Mat<S> Encoder<S>::attention_logits(const Mat<S>& x, int layer, int head) const {
  if (x.rows() > cfg_.max_sequence_length)
    fail(ErrorCode::SequenceTooLong, "sequence exceeds max_sequence_length");
  const auto& L = params_.layers.at(layer);
  const int dh = cfg_.d_head(), k = cfg_.max_relative_distance;
  Mat<S> q = (x * L.wq).middleCols(head * dh, dh);
  Mat<S> kk = (x * L.wk).middleCols(head * dh, dh);
  Mat<S> s = q * kk.transpose();
  Mat<S> r = q * L.rel_k.transpose();
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j) s(i, j) += r(i, rel_index(i, j, k));
  return s / std::sqrt(static_cast<S>(dh));
}

template <class S>
ForwardCache<S> Encoder<S>::forward(const std::vector<std::uint32_t>& ids) const {
  check_ids(ids);
  const int n = static_cast<int>(ids.size());
  const int dh = cfg_.d_head(), k = cfg_.max_relative_distance;
  const S scale = S(1) / std::sqrt(static_cast<S>(dh));
  const S eps = static_cast<S>(cfg_.layer_norm_eps);

  ForwardCache<S> c;
  c.ids = ids;
  Mat<S> x(n, cfg_.d_model);
  for (int t = 0; t < n; ++t) x.row(t) = params_.token_embedding.row(ids[t]);

  for (const auto& L : params_.layers) {
    typename ForwardCache<S>::Layer fc;
    fc.x = x;
    fc.q = x * L.wq;
    fc.k = x * L.wk;
    fc.v = x * L.wv;
    fc.z.resize(n, cfg_.d_model);
    for (int h = 0; h < cfg_.n_heads; ++h) {
      auto qh = fc.q.middleCols(h * dh, dh);
      auto kh = fc.k.middleCols(h * dh, dh);
      auto vh = fc.v.middleCols(h * dh, dh);
      Mat<S> s = qh * kh.transpose();
      Mat<S> r = qh * L.rel_k.transpose();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) += r(i, rel_index(i, j, k));
      s *= scale;
      softmax_rows(s);
      Mat<S> zh = s * vh;
      if (cfg_.relative_values) {
        Mat<S> b = Mat<S>::Zero(n, 2 * k + 1);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) b(i, rel_index(i, j, k)) += s(i, j);
        zh += b * L.rel_v;
      }
      fc.z.middleCols(h * dh, dh) = zh;
      fc.probs.push_back(std::move(s));
    }
    Mat<S> res1 = x + fc.z * L.wo;
    fc.xhat1 = normalize_rows(res1, eps, fc.inv_std1);
    fc.y1 = apply_gain(fc.xhat1, L.ln1_gain, L.ln1_bias);
    fc.ffn_pre = fc.y1 * L.ffn_w1;
    fc.ffn_pre.rowwise() += L.ffn_b1.row(0);
    fc.ffn_act = fc.ffn_pre.cwiseMax(S(0));
    Mat<S> ffn = fc.ffn_act * L.ffn_w2;
    ffn.rowwise() += L.ffn_b2.row(0);
    Mat<S> res2 = fc.y1 + ffn;
    fc.xhat2 = normalize_rows(res2, eps, fc.inv_std2);
    fc.out = apply_gain(fc.xhat2, L.ln2_gain, L.ln2_bias);
    x = fc.out;
    c.layers.push_back(std::move(fc));
  }

  c.pooled = x.colwise().sum() / static_cast<S>(n);
  RowVec<S> h = c.pooled;
  const std::size_t m = params_.head_w.size();
  for (std::size_t i = 0; i < m; ++i) {
    c.head_in.push_back(h);
    RowVec<S> a = h * params_.head_w[i].transpose() + params_.head_b[i].row(0);
    c.head_pre.push_back(a);
    h = i + 1 < m ? RowVec<S>(a.cwiseMax(S(0))) : a;
  }
  c.z = h;
  c.z_norm = h.norm();
  if (!(c.z_norm > 0)) fail(ErrorCode::ZeroVector, "projection output has zero norm");
  c.embedding = h / c.z_norm;
  return c;
}

template <class S>
Mat<S> Encoder<S>::hidden(const std::vector<std::uint32_t>& ids) const {
  auto c = forward(ids);
  return c.layers.back().out;
}

template <class S>
RowVec<S> Encoder<S>::project(const RowVec<S>& pooled) const {
  if (pooled.size() != cfg_.d_model)
    fail(ErrorCode::DimensionMismatch, "pooled vector must have d_model entries");
  RowVec<S> h = pooled;
  const std::size_t m = params_.head_w.size();
  for (std::size_t i = 0; i < m; ++i) {
    RowVec<S> a = h * params_.head_w[i].transpose() + params_.head_b[i].row(0);
    h = i + 1 < m ? RowVec<S>(a.cwiseMax(S(0))) : a;
  }
  return h;
}

template <class S>
RowVec<S> Encoder<S>::embed(const std::vector<std::uint32_t>& ids) const {
  return forward(ids).embedding;
}

template <class S>
void Encoder<S>::backward(const ForwardCache<S>& c, const RowVec<S>& d_embedding,
                          EncoderParams<S>& g) const {
  if (d_embedding.size() != c.embedding.size())
    fail(ErrorCode::DimensionMismatch, "embedding gradient has wrong size");
  const int n = static_cast<int>(c.ids.size());
  const int dh = cfg_.d_head(), k = cfg_.max_relative_distance;
  const S scale = S(1) / std::sqrt(static_cast<S>(dh));

  // Unit normalization.
  RowVec<S> dh_vec =
      (d_embedding - c.embedding * c.embedding.dot(d_embedding)) / c.z_norm;

  // Projection head.
  for (std::size_t i = params_.head_w.size(); i-- > 0;) {
    RowVec<S> da = dh_vec;
    if (i + 1 < params_.head_w.size())
      da = da.cwiseProduct((c.head_pre[i].array() > S(0)).template cast<S>().matrix());
    g.head_w[i] += da.transpose() * c.head_in[i];
    g.head_b[i].row(0) += da;
    dh_vec = da * params_.head_w[i];
  }

  // Mean pooling.
  Mat<S> dx = dh_vec.replicate(n, 1) / static_cast<S>(n);

  for (std::size_t l = params_.layers.size(); l-- > 0;) {
    const auto& L = params_.layers[l];
    const auto& fc = c.layers[l];
    auto& G = g.layers[l];

    Mat<S> dres2 = layer_norm_backward(dx, fc.xhat2, fc.inv_std2, L.ln2_gain, G.ln2_gain, G.ln2_bias);
    Mat<S> dy1 = dres2;
    G.ffn_w2 += fc.ffn_act.transpose() * dres2;
    G.ffn_b2.row(0) += dres2.colwise().sum();
    Mat<S> dpre = (dres2 * L.ffn_w2.transpose())
                      .cwiseProduct((fc.ffn_pre.array() > S(0)).template cast<S>().matrix());
    G.ffn_w1 += fc.y1.transpose() * dpre;
    G.ffn_b1.row(0) += dpre.colwise().sum();
    dy1 += dpre * L.ffn_w1.transpose();

    Mat<S> dres1 = layer_norm_backward(dy1, fc.xhat1, fc.inv_std1, L.ln1_gain, G.ln1_gain, G.ln1_bias);
    Mat<S> dx_prev = dres1;
    G.wo += fc.z.transpose() * dres1;
    Mat<S> dz = dres1 * L.wo.transpose();

    Mat<S> dq(n, cfg_.d_model), dk(n, cfg_.d_model), dv(n, cfg_.d_model);
    for (int h = 0; h < cfg_.n_heads; ++h) {
      const Mat<S>& p = fc.probs[h];
      Mat<S> dzh = dz.middleCols(h * dh, dh);
      auto qh = fc.q.middleCols(h * dh, dh);
      auto kh = fc.k.middleCols(h * dh, dh);
      auto vh = fc.v.middleCols(h * dh, dh);

      Mat<S> dp = dzh * vh.transpose();
      if (cfg_.relative_values) {
        Mat<S> gv = dzh * L.rel_v.transpose();
        Mat<S> b = Mat<S>::Zero(n, 2 * k + 1);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            int r = rel_index(i, j, k);
            dp(i, j) += gv(i, r);
            b(i, r) += p(i, j);
          }
        G.rel_v += b.transpose() * dzh;
      }
      dv.middleCols(h * dh, dh) = p.transpose() * dzh;

      Mat<S> ds = p.cwiseProduct(dp);
      for (int i = 0; i < n; ++i) {
        S row = ds.row(i).sum();
        ds.row(i) -= p.row(i) * row;
      }
      ds *= scale;
      Mat<S> dr = Mat<S>::Zero(n, 2 * k + 1);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dr(i, rel_index(i, j, k)) += ds(i, j);
      dq.middleCols(h * dh, dh) = ds * kh + dr * L.rel_k;
      dk.middleCols(h * dh, dh) = ds.transpose() * qh;
      G.rel_k += dr.transpose() * qh;
    }
    G.wq += fc.x.transpose() * dq;
    G.wk += fc.x.transpose() * dk;
    G.wv += fc.x.transpose() * dv;
    dx_prev += dq * L.wq.transpose() + dk * L.wk.transpose() + dv * L.wv.transpose();
    dx = std::move(dx_prev);
  }

  for (int t = 0; t < n; ++t) g.token_embedding.row(c.ids[t]) += dx.row(t);
}

template struct EncoderParams<float>;
template struct EncoderParams<double>;
template class Encoder<float>;
template class Encoder<double>;
template void init_params<float>(EncoderParams<float>&, const EncoderConfig&, std::uint64_t);
template void init_params<double>(EncoderParams<double>&, const EncoderConfig&, std::uint64_t);

}  // namespace tcode
