#ifndef GHK_TEST_FIXTURES_HPP_
#define GHK_TEST_FIXTURES_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "ghk/json_io.hpp"

namespace fixtures {

inline std::string path(std::string const& name) {
  return std::string(GHK_FIXTURE_DIR) + "/" + name;
}

inline ghk::Json load(std::string const& name) {
  std::ifstream in(path(name));
  std::stringstream s;
  s << in.rdbuf();
  return ghk::Json::parse(s.str());
}

}  // namespace fixtures

#endif  // GHK_TEST_FIXTURES_HPP_
