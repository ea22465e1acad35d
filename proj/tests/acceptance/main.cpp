#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <exception>
#include <set>
#include <string>

#include "acceptance.hpp"

namespace tcode::acceptance {
std::vector<Criterion>& registry() {
  static std::vector<Criterion> r;
  return r;
}
}  // namespace tcode::acceptance

// Usage: acceptance_tests [criterion-id ...]
int main(int argc, char** argv) {
  using namespace tcode::acceptance;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  auto& all = registry();
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%.1fs) -- %s\n", v.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
