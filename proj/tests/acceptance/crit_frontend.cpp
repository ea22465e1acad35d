#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <regex>
#include <sstream>

#include "acceptance.hpp"
#include "exec_oracle.hpp"
#include "test_support.hpp"
#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/extract/extract.hpp"

namespace tcode::acceptance {
namespace {

using Tokens = std::vector<std::string>;

Tokens sorted(Tokens t) {
  std::sort(t.begin(), t.end());
  return t;
}

const Tokens kReferenceTokens = {
    "n", "=", "arr.length", "temp", "=", "0", "for", "i", "<", "n", "i", "++", "i", "=", "0",
    "for", "j", "<", "j", "++", "j", "=", "1", "if", "n", "-", "i", "arr[j-1]", ">", "arr[j]",
    "temp", "=", "arr[j-1]", "arr[j-1]", "=", "arr[j]", "arr[j]", "=", "temp"};

const Tokens kReferenceNormalized = {
    "var2", "=", "var1.var5", "var3", "=", "0", "for", "var4", "<", "var2", "var4", "++",
    "var4", "=", "0", "for", "var6", "<", "var6", "++", "var6", "=", "1", "if", "var2", "-",
    "var4", "var1[var6-1]", ">", "var1[var6]", "var3", "=", "var1[var6-1]", "var1[var6-1]",
    "=", "var1[var6]", "var1[var6]", "=", "var3"};

const Tokens kGetMaxTokens = {"int", "var2", "int", "var3", "if", "return", "var2",
                              "else", "return", "var3", "var2", ">", "var3"};

Tokens relabel(const Tokens& tokens, const std::vector<int>& perm) {
  static const std::regex var("var([0-9]+)");
  Tokens out;
  for (const auto& t : tokens) {
    std::string r;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(t.begin(), t.end(), var); it != std::sregex_iterator();
         ++it) {
      r += t.substr(last, it->position() - last);
      int idx = std::stoi((*it)[1].str());
      r += "var" + std::to_string(idx <= static_cast<int>(perm.size()) ? perm[idx - 1] : idx);
      last = it->position() + it->length();
    }
    out.push_back(r + t.substr(last));
  }
  return out;
}

bool equal_up_to_bijection(const Tokens& a, const Tokens& b, int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  const Tokens target = sorted(b);
  do {
    if (sorted(relabel(a, perm)) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Verdict extraction_fidelity() {
  SourceSnippet bubble{"bubble", Language::Java, test::read_data("snippets/BubbleSortExample.java"),
                       {}};
  Tokens raw = extract_path(parse(bubble)).tokens;
  bool raw_ok = raw.size() == 39 && sorted(raw) == sorted(kReferenceTokens);

  auto n = normalize(bubble);
  Tokens norm = extract_path(parse(n.as_snippet()), n.source_id, true).tokens;
  bool norm_ok = n.rename_map.size() == 6 && equal_up_to_bijection(norm, kReferenceNormalized, 6);

  auto g = normalize({"getMax", Language::Java,
                      "public int getMax(int a, int b) { if (a>b) return a; else return b;}", {}});
  Tokens gm = extract_path(parse(g.as_snippet())).tokens;
  bool getmax_ok = sorted(gm) == sorted(kGetMaxTokens);

  std::ostringstream d;
  d << "raw multiset " << (raw_ok ? "equal" : "differs") << " (" << raw.size()
    << " tokens), normalized " << (norm_ok ? "bijective match" : "no bijection") << ", getMax "
    << (getmax_ok ? "equal" : "differs");
  return {raw_ok && norm_ok && getmax_ok, d.str()};
}

Verdict semantic_preservation() {
  constexpr std::size_t kMinPrograms = 20;
  constexpr std::size_t kSeeds = 20;
  constexpr double kMaxSeconds = 300.0;
  if (!test::java_oracle_available() || !test::c_oracle_available())
    return {false, "execution oracle unavailable"};

  std::vector<std::uint64_t> seeds(kSeeds);
  std::iota(seeds.begin(), seeds.end(), 1);
  auto start = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool ok = true;
  for (Language lang : {Language::Java, Language::C}) {
    const char* dir = lang == Language::Java ? "equivalence/java" : "equivalence/c";
    auto programs = test::load_programs(test::data_path(dir), lang);
    auto r = test::run_equivalence(programs, seeds, test::harness_inputs());
    ok = ok && programs.size() >= kMinPrograms && r.passed();
    d << (lang == Language::Java ? "java" : "c") << ": " << r.programs << " programs, "
      << r.anchors << " anchors (" << r.distinct_anchors << " distinct, " << r.identity_anchors
      << " identity), " << r.runs << " runs, " << r.mismatches << " mismatches; ";
    for (const auto& f : r.failures) std::fprintf(stderr, "%s\n", f.c_str());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs <= kMaxSeconds;
  d << "elapsed " << static_cast<int>(secs) << "s";
  return {ok, d.str()};
}

Register r1(1, "reference extraction fidelity", extraction_fidelity);
Register r2(2, "semantic preservation of anchors", semantic_preservation);

}  // namespace
}  // namespace tcode::acceptance
