#include "ambc/rng.hpp"

#include <vector>

namespace ambc {

Rng make_stream(std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * key.size() + 1);
  words.push_back(static_cast<std::uint32_t>(key.size()));
  for (std::uint64_t k : key) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace ambc
