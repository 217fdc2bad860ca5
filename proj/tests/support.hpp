#pragma once

#include <string>

#include "cac/frontend.hpp"

namespace cac::test {

inline std::string corpus_path(const std::string& name) {
  return std::string(CAC_CORPUS_DIR) + "/" + name;
}

inline LoadedFile corpus(const std::string& name) { return load_file(corpus_path(name)); }

}  // namespace cac::test
