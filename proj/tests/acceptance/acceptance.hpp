#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tcode::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Verdict()> run;
};

std::vector<Criterion>& registry();

struct Register {
  Register(int id, std::string title, std::function<Verdict()> run) {
    registry().push_back({id, std::move(title), std::move(run)});
  }
};

}  // namespace tcode::acceptance
