#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string read_data_file(const std::string& name) {
  std::string path = std::string(CHORC_TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing test data file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}
