#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "transformcode/extract/extract.hpp"

namespace tcode {

struct VocabConfig {
  std::size_t max_size = 20000;
  std::size_t min_frequency = 2;
  std::string continuation_marker = "##";
};

/// Subword inventory. Ids are dense and follow insertion order.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::size_t max_size, std::string continuation_marker);

  std::size_t size() const { return pieces_.size(); }
  std::size_t max_size() const { return max_size_; }
  const std::string& continuation_marker() const { return marker_; }

  /// Appends a piece; returns the existing id if already present.
  std::uint32_t add(const std::string& piece);
  bool contains(const std::string& piece) const { return ids_.count(piece) != 0; }
  /// Returns -1 when absent.
  std::int64_t find(const std::string& piece) const;
  const std::string& piece(std::uint32_t id) const;
  const std::vector<std::string>& pieces() const { return pieces_; }

  bool is_continuation(const std::string& piece) const;

  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.max_size_ == b.max_size_ && a.marker_ == b.marker_ && a.pieces_ == b.pieces_;
  }

 private:
  std::size_t max_size_ = 20000;
  std::string marker_ = "##";
  std::vector<std::string> pieces_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Splits UTF-8 text into code points; malformed bytes stand alone.
std::vector<std::string> utf8_chars(const std::string& text);

/// Likelihood-driven merge training. Pair score is
/// count(ab) / (count(a) * count(b)); ties go to the lexicographically
/// smallest (a, b). Every observed character enters in both initial and
/// continuation form. Stops one short of max_size.
Vocabulary train_vocab(const std::vector<TokenSequence>& corpus, const VocabConfig& cfg = {});

/// Greedy longest-match segmentation of every token, concatenated.
std::vector<std::uint32_t> encode(const TokenSequence& tokens, const Vocabulary& v);
std::vector<std::uint32_t> encode_token(const std::string& token, const Vocabulary& v);

/// Inverse of encode: a non-continuation piece starts a new token.
std::vector<std::string> decode(const std::vector<std::uint32_t>& ids, const Vocabulary& v);

}  // namespace tcode
