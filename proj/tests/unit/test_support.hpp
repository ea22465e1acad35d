#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tcode::test {

inline std::string data_path(const std::string& rel) {
  return std::string(TC_TEST_DATA_DIR) + "/" + rel;
}

inline std::string read_data(const std::string& rel) {
  std::ifstream in(data_path(rel), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data: " + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tcode::test
