#ifndef CCPSEM_TEST_SUPPORT_HPP
#define CCPSEM_TEST_SUPPORT_HPP

#include <string>

#include "ccpsem/homomorphism.hpp"

namespace testing {

inline std::string data(const std::string& rel) { return std::string(CCPSEM_TEST_DATA) + "/" + rel; }

inline const ccpsem::Lexicon& lexicon(const std::string& file) {
  static std::map<std::string, ccpsem::Lexicon> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, ccpsem::load_lexicon(data(file))).first;
  return it->second;
}

}  // namespace testing

#endif
