#ifndef CCOUNT_BIT_VECTOR_HPP
#define CCOUNT_BIT_VECTOR_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ccount/bytes.hpp"

namespace ccount {

// Stride between sampled select hints, in set (or clear) bits.
inline constexpr uint64_t kSelectSampleRate = 4096;

// Position of the k-th (1-based) set bit of a word, 0-based. k <= popcount(x).
inline uint32_t word_select1(uint64_t x, uint64_t k) {
  for (uint64_t i = 1; i < k; ++i) x &= x - 1;
  return static_cast<uint32_t>(std::countr_zero(x));
}

// Static bit sequence with rank and select.
//
// Positions are 1-based and rank takes a prefix length: rank1(p) is the
// number of set bits among the first p bits. The rank directory samples
// cumulative popcounts every words_per_block_ machine words; the stride
// grows with the sequence length, so the directory shrinks relative to
// the payload as sequences get longer. select narrows to a directory
// window via sampled hint words and finishes with an in-block scan.
class BitVector {
 public:
  BitVector() { build_directories(); }

  explicit BitVector(const std::vector<bool>& bits) : n_bits_(bits.size()) {
    words_.assign((n_bits_ + 63) / 64, 0);
    for (uint64_t i = 0; i < n_bits_; ++i)
      if (bits[i]) words_[i >> 6] |= uint64_t(1) << (i & 63);
    build_directories();
  }

  BitVector(std::vector<uint64_t> words, uint64_t n_bits)
      : words_(std::move(words)), n_bits_(n_bits) {
    if (words_.size() != (n_bits_ + 63) / 64)
      throw std::invalid_argument("BitVector: word count does not match bit length");
    if (n_bits_ & 63) words_.back() &= (uint64_t(1) << (n_bits_ & 63)) - 1;
    build_directories();
  }

  uint64_t size() const { return n_bits_; }
  uint64_t ones() const { return total_ones_; }
  uint64_t zeros() const { return n_bits_ - total_ones_; }

  bool access(uint64_t pos) const {
    if (pos == 0 || pos > n_bits_)
      throw std::out_of_range("BitVector::access: position out of range");
    return (words_[(pos - 1) >> 6] >> ((pos - 1) & 63)) & 1;
  }

  uint64_t rank1(uint64_t prefix) const {
    if (prefix > n_bits_)
      throw std::out_of_range("BitVector::rank1: prefix exceeds length");
    uint64_t w = prefix >> 6;
    uint64_t cnt = block_ranks_[w / words_per_block_];
    for (uint64_t i = (w / words_per_block_) * words_per_block_; i < w; ++i)
      cnt += std::popcount(words_[i]);
    if (prefix & 63)
      cnt += std::popcount(words_[w] & ((uint64_t(1) << (prefix & 63)) - 1));
    return cnt;
  }

  uint64_t rank0(uint64_t prefix) const { return prefix - rank1(prefix); }

  // Position of the k-th set bit, 1-based on both sides.
  uint64_t select1(uint64_t k) const {
    if (k == 0 || k > total_ones_)
      throw std::out_of_range("BitVector::select1: rank out of range");
    auto [blk_lo, blk_hi] = hint_window(hints1_, k);
    // largest block whose prefix count stays below k
    while (blk_lo < blk_hi) {
      uint64_t mid = (blk_lo + blk_hi + 1) / 2;
      if (block_ranks_[mid] < k)
        blk_lo = mid;
      else
        blk_hi = mid - 1;
    }
    uint64_t cur = block_ranks_[blk_lo];
    for (uint64_t w = blk_lo * words_per_block_;; ++w) {
      uint64_t c = std::popcount(words_[w]);
      if (cur + c >= k) return (w << 6) + word_select1(words_[w], k - cur) + 1;
      cur += c;
    }
  }

  uint64_t select0(uint64_t k) const {
    if (k == 0 || k > zeros())
      throw std::out_of_range("BitVector::select0: rank out of range");
    auto zeros_before = [&](uint64_t blk) {
      uint64_t bits = std::min(blk * words_per_block_ * 64, n_bits_);
      return bits - block_ranks_[blk];
    };
    auto [blk_lo, blk_hi] = hint_window(hints0_, k);
    while (blk_lo < blk_hi) {
      uint64_t mid = (blk_lo + blk_hi + 1) / 2;
      if (zeros_before(mid) < k)
        blk_lo = mid;
      else
        blk_hi = mid - 1;
    }
    uint64_t cur = zeros_before(blk_lo);
    for (uint64_t w = blk_lo * words_per_block_;; ++w) {
      uint64_t valid = std::min<uint64_t>(64, n_bits_ - (w << 6));
      uint64_t z = valid - std::popcount(words_[w]);
      if (cur + z >= k) return (w << 6) + word_select1(~words_[w], k - cur) + 1;
      cur += z;
    }
  }

  uint64_t payload_bits() const { return n_bits_; }

  uint64_t directory_bits() const {
    return 64 * (block_ranks_.size() + hints1_.size() + hints0_.size());
  }

  const std::vector<uint64_t>& words() const { return words_; }

  // Canonical form: bit length followed by the packed word array.
  void save(ByteWriter& out) const {
    out.put_u64(n_bits_);
    for (uint64_t w : words_) out.put_u64(w);
  }

  static BitVector load(ByteReader& in) {
    uint64_t n = in.get_u64();
    if (in.remaining() < 8 * ((n + 63) / 64))
      throw CorruptIndexError("bit vector payload truncated");
    std::vector<uint64_t> words((n + 63) / 64);
    for (auto& w : words) w = in.get_u64();
    return BitVector(std::move(words), n);
  }

 private:
  std::pair<uint64_t, uint64_t> hint_window(const std::vector<uint64_t>& hints,
                                            uint64_t k) const {
    uint64_t num_blocks = block_ranks_.size() - 1;
    size_t h = (k - 1) / kSelectSampleRate;
    uint64_t lo = hints[h] / words_per_block_;
    uint64_t hi = h + 1 < hints.size()
                      ? std::min(hints[h + 1] / words_per_block_ + 1, num_blocks)
                      : num_blocks;
    return {lo, hi};
  }

  void build_directories() {
    words_per_block_ = std::max<uint64_t>(1, std::bit_width(n_bits_) / 2);
    uint64_t nw = words_.size();
    uint64_t nb = (nw + words_per_block_ - 1) / words_per_block_;
    block_ranks_.assign(nb + 1, 0);
    hints1_.clear();
    hints0_.clear();
    uint64_t ones = 0, zeros = 0;
    uint64_t next1 = 1, next0 = 1;
    for (uint64_t w = 0; w < nw; ++w) {
      if (w % words_per_block_ == 0) block_ranks_[w / words_per_block_] = ones;
      uint64_t c = std::popcount(words_[w]);
      uint64_t valid = std::min<uint64_t>(64, n_bits_ - (w << 6));
      uint64_t z = valid - c;
      while (next1 <= ones + c) {
        hints1_.push_back(w);
        next1 += kSelectSampleRate;
      }
      while (next0 <= zeros + z) {
        hints0_.push_back(w);
        next0 += kSelectSampleRate;
      }
      ones += c;
      zeros += z;
    }
    block_ranks_[nb] = ones;
    total_ones_ = ones;
  }

  std::vector<uint64_t> words_;
  uint64_t n_bits_ = 0;
  uint64_t total_ones_ = 0;
  uint64_t words_per_block_ = 1;
  std::vector<uint64_t> block_ranks_;  // set bits before each word block
  std::vector<uint64_t> hints1_;       // word holding every 4096th set bit
  std::vector<uint64_t> hints0_;
};

// Append-only builder used when a bit sequence is produced left to right.
class BitBuilder {
 public:
  void push_back(bool b) {
    if ((n_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= uint64_t(1) << (n_ & 63);
    ++n_;
  }

  uint64_t size() const { return n_; }

  BitVector build() && { return BitVector(std::move(words_), n_); }

 private:
  std::vector<uint64_t> words_;
  uint64_t n_ = 0;
};

}  // namespace ccount

#endif  // CCOUNT_BIT_VECTOR_HPP
