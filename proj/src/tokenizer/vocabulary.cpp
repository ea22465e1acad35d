#include "transformcode/tokenizer/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "transformcode/error.hpp"

namespace tcode {

namespace {

constexpr const char* kMagic = "tcvocab";
constexpr int kVersion = 1;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) fail(ErrorCode::MalformedRecord, "dangling escape in vocabulary");
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: fail(ErrorCode::MalformedRecord, "unknown escape in vocabulary");
    }
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == '\t') out.emplace_back();
    else out.back() += c;
  }
  return out;
}

void check_token(const std::string& token, const std::string& marker) {
  if (token.empty()) fail(ErrorCode::EmptySequence, "empty token");
  if (!marker.empty() && token.compare(0, marker.size(), marker) == 0)
    fail(ErrorCode::InvalidConfig,
         "token '" + token + "' begins with the continuation marker '" + marker + "'");
}

using u128 = unsigned __int128;

}  // namespace

Vocabulary::Vocabulary(std::size_t max_size, std::string continuation_marker)
    : max_size_(max_size), marker_(std::move(continuation_marker)) {
  if (marker_.empty()) fail(ErrorCode::InvalidConfig, "continuation marker must be non-empty");
}

std::uint32_t Vocabulary::add(const std::string& piece) {
  auto it = ids_.find(piece);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(pieces_.size());
  pieces_.push_back(piece);
  ids_.emplace(piece, id);
  return id;
}

std::int64_t Vocabulary::find(const std::string& piece) const {
  auto it = ids_.find(piece);
  return it == ids_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

const std::string& Vocabulary::piece(std::uint32_t id) const {
  if (id >= pieces_.size())
    fail(ErrorCode::IdOutOfRange,
         "id " + std::to_string(id) + " outside vocabulary of " + std::to_string(pieces_.size()));
  return pieces_[id];
}

bool Vocabulary::is_continuation(const std::string& piece) const {
  return piece.size() > marker_.size() && piece.compare(0, marker_.size(), marker_) == 0;
}

void Vocabulary::write(std::ostream& out) const {
  out << kMagic << '\t' << kVersion << '\t' << max_size_ << '\t' << escape(marker_) << '\n';
  for (std::size_t i = 0; i < pieces_.size(); ++i) out << escape(pieces_[i]) << '\t' << i << '\n';
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::MalformedRecord, "empty vocabulary file");
  auto head = split_tabs(line);
  if (head.size() != 4 || head[0] != kMagic)
    fail(ErrorCode::MalformedRecord, "not a vocabulary file");
  if (head[1] != std::to_string(kVersion))
    fail(ErrorCode::UnsupportedVersion, "vocabulary version " + head[1]);
  Vocabulary v(std::stoul(head[2]), unescape(head[3]));
  while (std::getline(in, line)) {
    auto parts = split_tabs(line);
    if (parts.size() != 2) fail(ErrorCode::MalformedRecord, "bad vocabulary line: " + line);
    if (parts[1] != std::to_string(v.size()))
      fail(ErrorCode::MalformedRecord, "vocabulary ids must be dense and sorted");
    std::string piece = unescape(parts[0]);
    if (v.contains(piece)) fail(ErrorCode::MalformedRecord, "duplicate piece: " + parts[0]);
    v.add(piece);
  }
  return v;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write(out);
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot read " + path.string());
  return read(in);
}

std::vector<std::string> utf8_chars(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3 : (c >> 3) == 0x1e ? 4 : 1;
    if (i + len > text.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(text[i + k]) & 0xc0) != 0x80) len = 1;
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Vocabulary train_vocab(const std::vector<TokenSequence>& corpus, const VocabConfig& cfg) {
  if (cfg.min_frequency == 0) fail(ErrorCode::InvalidConfig, "min_frequency must be positive");
  Vocabulary vocab(cfg.max_size, cfg.continuation_marker);
  const std::string& marker = vocab.continuation_marker();

  std::map<std::string, std::uint64_t> word_counts;
  for (const auto& seq : corpus)
    for (const auto& tok : seq.tokens) {
      check_token(tok, marker);
      ++word_counts[tok];
    }
  if (word_counts.empty()) fail(ErrorCode::EmptyCorpus, "no tokens to train on");

  std::set<std::string> chars;
  for (const auto& [w, _] : word_counts)
    for (auto& ch : utf8_chars(w)) chars.insert(ch);
  if (2 * chars.size() >= cfg.max_size)
    fail(ErrorCode::InvalidConfig, "max_size " + std::to_string(cfg.max_size) +
                                       " cannot hold the character alphabet");
  for (const auto& ch : chars) vocab.add(ch);
  for (const auto& ch : chars) vocab.add(marker + ch);

  struct Word {
    std::vector<std::uint32_t> units;
    std::uint64_t count;
  };
  std::vector<Word> words;
  for (const auto& [w, count] : word_counts) {
    Word word{{}, count};
    auto cs = utf8_chars(w);
    for (std::size_t i = 0; i < cs.size(); ++i)
      word.units.push_back(static_cast<std::uint32_t>(vocab.find(i == 0 ? cs[i] : marker + cs[i])));
    words.push_back(std::move(word));
  }

  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  std::vector<std::uint64_t> unit_freq(vocab.size(), 0);
  std::map<Pair, std::uint64_t> pair_freq;
  std::map<Pair, std::set<std::size_t>> where;

  auto account = [&](std::size_t wi, int sign) {
    const Word& w = words[wi];
    for (std::size_t i = 0; i < w.units.size(); ++i) {
      if (w.units[i] >= unit_freq.size()) unit_freq.resize(w.units[i] + 1, 0);
      unit_freq[w.units[i]] += sign > 0 ? w.count : -w.count;
      if (i + 1 == w.units.size()) continue;
      Pair p{w.units[i], w.units[i + 1]};
      if (sign > 0) {
        pair_freq[p] += w.count;
        where[p].insert(wi);
      } else {
        auto it = pair_freq.find(p);
        it->second -= w.count;
        if (it->second == 0) pair_freq.erase(it);
        auto wt = where.find(p);
        if (wt != where.end()) {
          wt->second.erase(wi);
          if (wt->second.empty()) where.erase(wt);
        }
      }
    }
  };
  for (std::size_t wi = 0; wi < words.size(); ++wi) account(wi, +1);

  auto merged_piece = [&](const Pair& p) {
    const std::string& b = vocab.piece(p.second);
    return vocab.piece(p.first) + b.substr(marker.size());
  };

  while (vocab.size() + 1 < cfg.max_size) {
    const Pair* best = nullptr;
    std::uint64_t best_f = 0, best_den_a = 0, best_den_b = 0;
    for (const auto& [p, f] : pair_freq) {
      if (f < cfg.min_frequency) continue;
      std::uint64_t fa = unit_freq[p.first], fb = unit_freq[p.second];
      if (best) {
        u128 lhs = static_cast<u128>(f) * best_den_a * best_den_b;
        u128 rhs = static_cast<u128>(best_f) * fa * fb;
        if (lhs < rhs) continue;
        if (lhs == rhs) {
          const auto& a = vocab.piece(p.first);
          const auto& ba = vocab.piece(best->first);
          if (a > ba || (a == ba && vocab.piece(p.second) >= vocab.piece(best->second))) continue;
        }
      }
      best = &p;
      best_f = f;
      best_den_a = fa;
      best_den_b = fb;
    }
    if (!best) break;

    const Pair chosen = *best;
    const std::uint32_t merged = vocab.add(merged_piece(chosen));
    const std::vector<std::size_t> affected(where[chosen].begin(), where[chosen].end());
    for (std::size_t wi : affected) {
      account(wi, -1);
      auto& units = words[wi].units;
      std::vector<std::uint32_t> next;
      for (std::size_t i = 0; i < units.size(); ++i) {
        if (i + 1 < units.size() && units[i] == chosen.first && units[i + 1] == chosen.second) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(units[i]);
        }
      }
      units = std::move(next);
      account(wi, +1);
    }
  }
  return vocab;
}

std::vector<std::uint32_t> encode_token(const std::string& token, const Vocabulary& v) {
  check_token(token, v.continuation_marker());
  auto cs = utf8_chars(token);
  std::vector<std::uint32_t> ids;
  std::size_t pos = 0;
  while (pos < cs.size()) {
    std::string prefix = pos == 0 ? "" : v.continuation_marker();
    std::string candidate = prefix;
    for (std::size_t k = pos; k < cs.size(); ++k) candidate += cs[k];
    std::size_t end = cs.size();
    std::int64_t id = -1;
    while (end > pos) {
      id = v.find(candidate);
      if (id >= 0) break;
      --end;
      candidate.resize(candidate.size() - cs[end].size());
    }
    if (id < 0)
      fail(ErrorCode::UnknownCharacter,
           "character '" + cs[pos] + "' in token '" + token + "' was not seen in training");
    ids.push_back(static_cast<std::uint32_t>(id));
    pos = end;
  }
  return ids;
}

std::vector<std::uint32_t> encode(const TokenSequence& tokens, const Vocabulary& v) {
  std::vector<std::uint32_t> ids;
  for (const auto& t : tokens.tokens) {
    auto part = encode_token(t, v);
    ids.insert(ids.end(), part.begin(), part.end());
  }
  return ids;
}

std::vector<std::string> decode(const std::vector<std::uint32_t>& ids, const Vocabulary& v) {
  std::vector<std::string> tokens;
  for (auto id : ids) {
    const std::string& p = v.piece(id);
    if (v.is_continuation(p) && !tokens.empty()) tokens.back() += p.substr(v.continuation_marker().size());
    else tokens.push_back(p);
  }
  return tokens;
}

}  // namespace tcode
