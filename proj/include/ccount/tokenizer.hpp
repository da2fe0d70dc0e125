#ifndef CCOUNT_TOKENIZER_HPP
#define CCOUNT_TOKENIZER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccount/prev_occ.hpp"

namespace ccount {

enum class AlphabetMode : uint8_t { bytes = 0, tokens = 1 };

// Observed symbols densely remapped to 0..sigma-1 in first-occurrence
// order, plus the dictionary needed to print them back.
struct TokenizedInput {
  ColorString text;
  AlphabetMode mode = AlphabetMode::bytes;
  std::vector<std::string> dictionary;  // dense id -> original token
};

// Bytes mode: every input byte is one symbol.
TokenizedInput tokenize_bytes(const std::string& raw);

// Token mode: whitespace-separated tokens are symbols.
TokenizedInput tokenize_whitespace(const std::string& raw);

TokenizedInput tokenize(const std::string& raw, AlphabetMode mode);

}  // namespace ccount

#endif  // CCOUNT_TOKENIZER_HPP
