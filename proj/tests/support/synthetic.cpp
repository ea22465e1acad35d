#include "synthetic.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

#include "transformcode/ast/normalize.hpp"
#include "transformcode/augment/augment.hpp"
#include "transformcode/error.hpp"
#include "transformcode/util/rng.hpp"

namespace tcode::test {

VariantCorpus make_variant_corpus(const std::filesystem::path& dir, std::size_t per_class,
                                  std::uint64_t seed) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".java") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  VariantCorpus corpus;
  for (const auto& f : files) {
    std::string name = f.stem().string();
    SourceSnippet base{name, Language::Java, read_file(f), name};
    std::set<std::string> seen;
    std::vector<SourceSnippet> out;
    for (std::uint64_t attempt = 0; out.size() < per_class; ++attempt) {
      if (attempt > 50 * per_class) fail(ErrorCode::InvalidConfig, "cannot find enough variants of " + name);
      std::string id = name + "_" + std::to_string(attempt);
      SourceSnippet cur = base;
      cur.id = id;
      std::size_t rounds = 1 + attempt % 3;
      for (std::size_t r = 0; r < rounds; ++r) {
        AugmentConfig cfg;
        cfg.rng_seed = derive_seed(seed, id + "/" + std::to_string(r));
        auto anchor = generate_anchor(normalize(cur), cfg);
        cur.text = anchor.text;
      }
      if (!seen.insert(cur.text).second) continue;
      cur.id = name + "_v" + std::to_string(out.size());
      out.push_back(cur);
    }
    corpus.classes.push_back(name);
    corpus.variants.push_back(std::move(out));
  }
  return corpus;
}

std::vector<PairRecord> all_pairs(const std::vector<SourceSnippet>& snippets) {
  std::vector<PairRecord> pairs;
  for (std::size_t i = 0; i < snippets.size(); ++i)
    for (std::size_t j = i + 1; j < snippets.size(); ++j)
      pairs.push_back({snippets[i].id, snippets[j].id, snippets[i].label == snippets[j].label});
  return pairs;
}

std::string snippet_store_text(const std::vector<SourceSnippet>& snippets) {
  std::string s;
  for (const auto& sn : snippets) {
    nlohmann::ordered_json j;
    j["id"] = sn.id;
    j["language"] = language_name(sn.language);
    j["code"] = sn.text;
    if (sn.label) j["label"] = *sn.label;
    s += j.dump() + "\n";
  }
  return s;
}

std::string pair_csv_text(const std::vector<PairRecord>& pairs) {
  std::string s = "id1,id2,label\n";
  for (const auto& p : pairs) s += p.id1 + "," + p.id2 + "," + (p.clone ? "clone" : "non-clone") + "\n";
  return s;
}

}  // namespace tcode::test
