#ifndef CCOUNT_IO_HPP
#define CCOUNT_IO_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ccount/dynamic_index.hpp"
#include "ccount/multisize_index.hpp"
#include "ccount/prev_occ.hpp"
#include "ccount/simple_index.hpp"
#include "ccount/space_report.hpp"
#include "ccount/tokenizer.hpp"

namespace ccount {

enum class Scheme : uint8_t {
  baseline = 0,
  simple = 1,
  multisize = 2,
  dynamic_snapshot = 3,
};

Scheme scheme_from_name(const std::string& name);
const char* scheme_name(Scheme scheme);

// One index plus the tokenization metadata it was built from. Serialized
// file layout (little-endian):
//   magic "CCS1" | u16 version | u8 scheme | u8 alphabet mode | u64 n
//   | u64 sigma | dictionary | scheme payload | u64 CRC-64/XZ of all
//   preceding bytes.
struct IndexFile {
  Scheme scheme = Scheme::baseline;
  uint64_t n = 0;
  uint64_t sigma = 0;
  AlphabetMode alphabet_mode = AlphabetMode::bytes;
  std::vector<std::string> dictionary;
  std::variant<BaselineIndex, SimpleBlockIndex, MultiSizeIndex, DynamicColorIndex>
      index{BaselineIndex{}};

  uint64_t count(uint64_t i, uint64_t j) const;
  SpaceReport space_report() const;
};

IndexFile make_index(const TokenizedInput& input, Scheme scheme,
                     std::optional<double> delta = {},
                     std::optional<uint64_t> block_len = {});

std::string serialize_index(const IndexFile& file);
IndexFile parse_index(const std::string& bytes);

void save_index(const IndexFile& file, const std::string& path);
IndexFile load_index(const std::string& path);

// Rebuilds an editable index from a loaded file. Multi-size indexes are
// promoted by decoding their previous-occurrence array: entries with no
// earlier occurrence open a fresh colour, every other entry chains to its
// predecessor, which reproduces the densely tokenized string exactly.
DynamicColorIndex to_dynamic(IndexFile&& file);

}  // namespace ccount

#endif  // CCOUNT_IO_HPP
