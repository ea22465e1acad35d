#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "transformcode/encoder/encoder.hpp"

namespace tcode {

struct NamedTensor {
  std::string name;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> data;
};

/// Binary container: "TCKP", version, JSON metadata, then named row-major
/// float32 tensors, all little-endian.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  nlohmann::json meta = nlohmann::json::object();
  std::vector<NamedTensor> tensors;

  const NamedTensor& get(const std::string& name) const;
  bool has(const std::string& name) const;

  std::string serialize() const;
  static Checkpoint deserialize(const std::string& bytes);
  void save(const std::filesystem::path& path) const;
  static Checkpoint load(const std::filesystem::path& path);
};

template <class S>
void export_params(const EncoderParams<S>& params, const std::string& prefix, Checkpoint& ckpt);

/// Reads tensors named prefix + tensor name; shapes must match `cfg`.
template <class S>
EncoderParams<S> import_params(const EncoderConfig& cfg, const std::string& prefix,
                               const Checkpoint& ckpt);

template <class S>
void put_matrix(Checkpoint& ckpt, const std::string& name, const Mat<S>& m);
template <class S>
Mat<S> get_matrix(const Checkpoint& ckpt, const std::string& name);

/// Config under meta["encoder"], parameters under "encoder/".
void save_encoder(const Encoder<float>& enc, const std::filesystem::path& path,
                  const nlohmann::json& extra_meta = nlohmann::json::object());
Encoder<float> load_encoder(const std::filesystem::path& path);
Encoder<float> encoder_from_checkpoint(const Checkpoint& ckpt);

}  // namespace tcode
