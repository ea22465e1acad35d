#include "transformcode/encoder/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "transformcode/error.hpp"

namespace tcode {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'K', 'P'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::string take(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) fail(ErrorCode::MalformedRecord, "truncated checkpoint");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const NamedTensor& Checkpoint::get(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  fail(ErrorCode::MalformedRecord, "checkpoint has no tensor '" + name + "'");
}

bool Checkpoint::has(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return true;
  return false;
}

std::string Checkpoint::serialize() const {
  std::string out(kMagic, 4);
  put_u32(out, kVersion);
  std::string m = meta.dump();
  put_u32(out, static_cast<std::uint32_t>(m.size()));
  out += m;
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    if (t.data.size() != static_cast<std::size_t>(t.rows) * t.cols)
      fail(ErrorCode::ShapeMismatch, "tensor '" + t.name + "' data does not match its shape");
    put_u32(out, static_cast<std::uint32_t>(t.name.size()));
    out += t.name;
    put_u32(out, t.rows);
    put_u32(out, t.cols);
    for (float f : t.data) put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

Checkpoint Checkpoint::deserialize(const std::string& bytes) {
  Reader r(bytes);
  if (r.take(4) != std::string(kMagic, 4)) fail(ErrorCode::MalformedRecord, "not a checkpoint file");
  std::uint32_t version = r.u32();
  if (version != kVersion)
    fail(ErrorCode::UnsupportedVersion, "checkpoint version " + std::to_string(version));
  Checkpoint c;
  std::string m = r.take(r.u32());
  try {
    c.meta = nlohmann::json::parse(m);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedRecord, std::string("checkpoint metadata: ") + e.what());
  }
  std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.take(r.u32());
    t.rows = r.u32();
    t.cols = r.u32();
    t.data.resize(static_cast<std::size_t>(t.rows) * t.cols);
    for (auto& f : t.data) f = std::bit_cast<float>(r.u32());
    c.tensors.push_back(std::move(t));
  }
  if (!r.done()) fail(ErrorCode::MalformedRecord, "trailing bytes in checkpoint");
  return c;
}

void Checkpoint::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

template <class S>
void put_matrix(Checkpoint& ckpt, const std::string& name, const Mat<S>& m) {
  NamedTensor t;
  t.name = name;
  t.rows = static_cast<std::uint32_t>(m.rows());
  t.cols = static_cast<std::uint32_t>(m.cols());
  t.data.resize(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) t.data[i] = static_cast<float>(m.data()[i]);
  ckpt.tensors.push_back(std::move(t));
}

template <class S>
Mat<S> get_matrix(const Checkpoint& ckpt, const std::string& name) {
  const auto& t = ckpt.get(name);
  Mat<S> m(t.rows, t.cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<S>(t.data[i]);
  return m;
}

template <class S>
void export_params(const EncoderParams<S>& params, const std::string& prefix, Checkpoint& ckpt) {
  for (const auto& [name, t] : params.tensors()) put_matrix<S>(ckpt, prefix + name, *t);
}

template <class S>
EncoderParams<S> import_params(const EncoderConfig& cfg, const std::string& prefix,
                               const Checkpoint& ckpt) {
  auto params = EncoderParams<S>::zeros(cfg);
  for (auto& [name, t] : params.tensors()) {
    Mat<S> m = get_matrix<S>(ckpt, prefix + name);
    if (m.rows() != t->rows() || m.cols() != t->cols())
      fail(ErrorCode::ShapeMismatch, "checkpoint tensor '" + prefix + name + "' has shape " +
                                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    *t = std::move(m);
  }
  return params;
}

void save_encoder(const Encoder<float>& enc, const std::filesystem::path& path,
                  const nlohmann::json& extra_meta) {
  Checkpoint c;
  c.meta = extra_meta;
  c.meta["encoder"] = enc.config().to_json();
  export_params(enc.params(), "encoder/", c);
  c.save(path);
}

Encoder<float> encoder_from_checkpoint(const Checkpoint& ckpt) {
  if (!ckpt.meta.contains("encoder")) fail(ErrorCode::MalformedRecord, "checkpoint has no encoder config");
  auto cfg = EncoderConfig::from_json(ckpt.meta["encoder"]).resolved();
  return Encoder<float>(cfg, import_params<float>(cfg, "encoder/", ckpt));
}

Encoder<float> load_encoder(const std::filesystem::path& path) {
  return encoder_from_checkpoint(Checkpoint::load(path));
}

template void put_matrix<float>(Checkpoint&, const std::string&, const Mat<float>&);
template void put_matrix<double>(Checkpoint&, const std::string&, const Mat<double>&);
template Mat<float> get_matrix<float>(const Checkpoint&, const std::string&);
template Mat<double> get_matrix<double>(const Checkpoint&, const std::string&);
template void export_params<float>(const EncoderParams<float>&, const std::string&, Checkpoint&);
template void export_params<double>(const EncoderParams<double>&, const std::string&, Checkpoint&);
template EncoderParams<float> import_params<float>(const EncoderConfig&, const std::string&,
                                                   const Checkpoint&);
template EncoderParams<double> import_params<double>(const EncoderConfig&, const std::string&,
                                                     const Checkpoint&);

}  // namespace tcode
