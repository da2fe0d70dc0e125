#include "ccount/tokenizer.hpp"

#include <array>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace ccount {

TokenizedInput tokenize_bytes(const std::string& raw) {
  if (raw.empty()) throw std::invalid_argument("empty input");
  TokenizedInput out;
  out.mode = AlphabetMode::bytes;
  std::array<int32_t, 256> id;
  id.fill(-1);
  out.text.symbols.reserve(raw.size());
  for (unsigned char byte : raw) {
    if (id[byte] < 0) {
      id[byte] = static_cast<int32_t>(out.dictionary.size());
      out.dictionary.push_back(std::string(1, static_cast<char>(byte)));
    }
    out.text.symbols.push_back(static_cast<uint32_t>(id[byte]));
  }
  out.text.sigma = static_cast<uint32_t>(out.dictionary.size());
  return out;
}

TokenizedInput tokenize_whitespace(const std::string& raw) {
  TokenizedInput out;
  out.mode = AlphabetMode::tokens;
  std::unordered_map<std::string, uint32_t> id;
  size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    size_t start = i;
    while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i == start) break;
    std::string tok = raw.substr(start, i - start);
    auto [it, fresh] = id.emplace(tok, static_cast<uint32_t>(out.dictionary.size()));
    if (fresh) out.dictionary.push_back(tok);
    out.text.symbols.push_back(it->second);
  }
  if (out.text.symbols.empty()) throw std::invalid_argument("empty input");
  out.text.sigma = static_cast<uint32_t>(out.dictionary.size());
  return out;
}

TokenizedInput tokenize(const std::string& raw, AlphabetMode mode) {
  return mode == AlphabetMode::bytes ? tokenize_bytes(raw) : tokenize_whitespace(raw);
}

}  // namespace ccount
