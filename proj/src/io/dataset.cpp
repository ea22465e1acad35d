#include "transformcode/io/dataset.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "transformcode/error.hpp"

namespace tcode {

namespace {

[[noreturn]] void bad_line(const std::string& origin, std::size_t line, const std::string& why) {
  fail(ErrorCode::MalformedRecord, origin + ":" + std::to_string(line) + ": " + why);
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    auto b = f.find_first_not_of(" \t");
    auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

std::vector<SourceSnippet> read_snippets(std::istream& in, const std::string& origin) {
  std::vector<SourceSnippet> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      bad_line(origin, n, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) bad_line(origin, n, "expected a JSON object");
    if (j.contains("format_version")) {
      if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != 1)
        fail(ErrorCode::UnsupportedVersion, origin + ":" + std::to_string(n) + ": unsupported format_version");
    }
    if (!j.contains("id") || !j["id"].is_string()) bad_line(origin, n, "missing string field \"id\"");
    if (!j.contains("code") || !j["code"].is_string()) bad_line(origin, n, "missing string field \"code\"");
    SourceSnippet s;
    s.id = j["id"].get<std::string>();
    if (s.id.empty()) bad_line(origin, n, "empty id");
    s.text = j["code"].get<std::string>();
    std::string lang = j.value("language", std::string("java"));
    auto l = language_from_name(lang);
    if (!l) fail(ErrorCode::UnsupportedLanguage, origin + ":" + std::to_string(n) + ": language " + lang);
    s.language = *l;
    if (j.contains("label") && !j["label"].is_null()) {
      if (j["label"].is_string()) s.label = j["label"].get<std::string>();
      else if (j["label"].is_number_integer()) s.label = std::to_string(j["label"].get<long>());
      else bad_line(origin, n, "label must be a string or integer");
    }
    if (!seen.insert(s.id).second) bad_line(origin, n, "duplicate id " + s.id);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PairRecord> read_pairs(std::istream& in, const std::string& origin) {
  std::vector<PairRecord> out;
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto f = split_csv(line);
    if (!header) {
      if (f != std::vector<std::string>{"id1", "id2", "label"}) bad_line(origin, n, "expected header id1,id2,label");
      header = true;
      continue;
    }
    if (f.size() != 3) bad_line(origin, n, "expected 3 fields");
    if (f[0].empty() || f[1].empty()) bad_line(origin, n, "empty id");
    PairRecord p{f[0], f[1], false};
    if (f[2] == "clone" || f[2] == "1" || f[2] == "true") p.clone = true;
    else if (f[2] == "non-clone" || f[2] == "0" || f[2] == "false") p.clone = false;
    else bad_line(origin, n, "unknown label " + f[2]);
    out.push_back(std::move(p));
  }
  if (!header) fail(ErrorCode::MalformedRecord, origin + ": missing header id1,id2,label");
  return out;
}

long Dataset::find(const std::string& id) const {
  for (std::size_t i = 0; i < snippets.size(); ++i)
    if (snippets[i].id == id) return static_cast<long>(i);
  return -1;
}

Dataset ingest(std::vector<SourceSnippet> store, std::vector<PairRecord> pairs, bool use_pairs) {
  Dataset d;
  d.store_size = store.size();
  if (!use_pairs) {
    d.snippets = std::move(store);
    return d;
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < store.size(); ++i) index.emplace(store[i].id, i);
  std::unordered_set<std::string> taken;
  for (const auto& p : pairs) {
    for (const auto* id : {&p.id1, &p.id2}) {
      auto it = index.find(*id);
      if (it == index.end()) fail(ErrorCode::DanglingPairId, "pair refers to unknown id " + *id);
      if (taken.insert(*id).second) d.snippets.push_back(store[it->second]);
    }
  }
  d.pairs = std::move(pairs);
  return d;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

Dataset ingest(const std::filesystem::path& snippet_file,
               const std::optional<std::filesystem::path>& pair_file) {
  std::istringstream s(read_file(snippet_file));
  auto store = read_snippets(s, snippet_file.string());
  std::vector<PairRecord> pairs;
  if (pair_file) {
    std::istringstream p(read_file(*pair_file));
    pairs = read_pairs(p, pair_file->string());
  }
  return ingest(std::move(store), std::move(pairs), pair_file.has_value());
}

}  // namespace tcode
