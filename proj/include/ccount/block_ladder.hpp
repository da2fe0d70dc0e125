#ifndef CCOUNT_BLOCK_LADDER_HPP
#define CCOUNT_BLOCK_LADDER_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccount/bytes.hpp"

namespace ccount {

// Geometric ladder of block sizes 1 < b_1 < b_2 < ... with
// log2(b_k) = ceil(max((1+delta)^k, k)), deduplicated and cut off at the
// first size covering the whole string. For every size b >= 2, blocks of
// that size start every b/2 positions (all sizes are powers of two), so
// consecutive blocks overlap by half and any interval of length at most
// b/2 + 1 fits inside one block.
class BlockLadder {
 public:
  BlockLadder() = default;

  BlockLadder(uint64_t n, double delta) : delta_(delta) {
    if (n == 0) throw std::invalid_argument("BlockLadder: empty string");
    if (!(delta > 0.0)) throw std::invalid_argument("BlockLadder: delta must be positive");
    sizes_ = {1};
    for (uint64_t k = 1; sizes_.back() < n; ++k) {
      double raw = std::max(std::pow(1.0 + delta, double(k)), double(k));
      // pow can land a hair off an exact integer; snap before the ceiling
      if (std::fabs(raw - std::round(raw)) < 1e-9) raw = std::round(raw);
      double e = std::ceil(raw);
      if (e >= 63) {
        sizes_.push_back(uint64_t(1) << 63);
        break;
      }
      uint64_t b = uint64_t(1) << uint64_t(e);
      if (b > sizes_.back()) sizes_.push_back(b);
    }
  }

  double delta() const { return delta_; }
  const std::vector<uint64_t>& sizes() const { return sizes_; }
  size_t num_classes() const { return sizes_.size(); }
  uint64_t top_size() const { return sizes_.back(); }

  // Default delta 1 / log2(log2 n); the formula only bites once
  // log2(log2 n) is safely positive, so small strings use 1.
  static double default_delta(uint64_t n) {
    if (n < 5) return 1.0;
    return 1.0 / std::log2(std::log2(double(n)));
  }

  // Start of the leftmost size-b block containing position q.
  static uint64_t leftmost_cover_start(uint64_t q, uint64_t b) {
    uint64_t h = b / 2;
    if (q <= b) return 1;
    uint64_t m = (q - b + h - 1) / h;
    return 1 + m * h;
  }

  // Start of the rightmost size-b block containing position i.
  static uint64_t rightmost_cover_start(uint64_t i, uint64_t b) {
    uint64_t h = b / 2;
    return 1 + ((i - 1) / h) * h;
  }

  // Smallest ladder class whose blocks can hold both p and q (p < q).
  // Returns the class index into sizes(); class 0 (size 1) is never used.
  size_t classify(uint64_t p, uint64_t q) const {
    for (size_t k = 1; k < sizes_.size(); ++k)
      if (leftmost_cover_start(q, sizes_[k]) <= p) return k;
    throw std::logic_error("BlockLadder::classify: ladder does not cover the pair");
  }

  // Doubles the top size until it covers strings of length n. Existing
  // top-class entries keep their class; only their offsets move.
  void grow_top_to(uint64_t n) {
    if (sizes_.size() < 2)
      throw std::logic_error("BlockLadder::grow_top_to: no growable class");
    while (sizes_.back() < n) sizes_.back() *= 2;
  }

  // Used by the dynamic index so appends always have a covering class.
  void ensure_growable() {
    if (sizes_.size() == 1) sizes_.push_back(2);
  }

  void save(ByteWriter& out) const {
    out.put_f64(delta_);
    out.put_u64(sizes_.size());
    for (uint64_t b : sizes_) out.put_u64(b);
  }

  static BlockLadder load(ByteReader& in) {
    BlockLadder lad;
    lad.delta_ = in.get_f64();
    uint64_t m = in.get_u64();
    if (m == 0 || m > 72) throw CorruptIndexError("implausible ladder size");
    lad.sizes_.resize(m);
    uint64_t prev = 0;
    for (auto& b : lad.sizes_) {
      b = in.get_u64();
      if (b <= prev) throw CorruptIndexError("ladder sizes not increasing");
      prev = b;
    }
    if (lad.sizes_[0] != 1) throw CorruptIndexError("ladder must start at size 1");
    return lad;
  }

 private:
  double delta_ = 1.0;
  std::vector<uint64_t> sizes_{1};
};

// Per-entry classification of a previous-occurrence array: label 0 for
// entries with no earlier occurrence, otherwise the ladder class of the
// smallest block size covering both occurrences, plus the entry's offset
// inside the leftmost covering block of that size.
struct ClassifiedEntries {
  std::vector<uint32_t> labels;                // one per position
  std::vector<std::vector<uint64_t>> offsets;  // per class, in position order
};

inline ClassifiedEntries classify_entries(std::span<const uint32_t> prev_occ,
                                          const BlockLadder& ladder) {
  ClassifiedEntries out;
  out.labels.resize(prev_occ.size());
  out.offsets.resize(ladder.num_classes());
  for (uint64_t q = 1; q <= prev_occ.size(); ++q) {
    uint64_t p = prev_occ[q - 1];
    if (p == 0) {
      out.labels[q - 1] = 0;
      continue;
    }
    size_t k = ladder.classify(p, q);
    out.labels[q - 1] = static_cast<uint32_t>(k);
    uint64_t start = BlockLadder::leftmost_cover_start(q, ladder.sizes()[k]);
    out.offsets[k].push_back(p - start);
  }
  return out;
}

}  // namespace ccount

#endif  // CCOUNT_BLOCK_LADDER_HPP
