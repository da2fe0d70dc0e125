#ifndef CCOUNT_WAVELET_TREE_HPP
#define CCOUNT_WAVELET_TREE_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccount/bit_vector.hpp"

namespace ccount {

// Static wavelet tree over an integer sequence with values in [0, universe).
//
// Level-wise layout: level l holds one concatenated bitvector of the l-th
// code bits with elements ordered by their top-l bit prefix (stable). Node
// spans are recomputed on the fly from rank queries, so there is no pointer
// overhead and the payload is exactly size * ceil(log2 universe) bits.
//
// Positions are 1-based; rank takes a prefix length; ranges are inclusive.
class WaveletTree {
 public:
  WaveletTree() = default;

  WaveletTree(std::span<const uint64_t> seq, uint64_t universe)
      : universe_(universe), size_(seq.size()) {
    if (universe == 0)
      throw std::invalid_argument("WaveletTree: universe must be positive");
    for (uint64_t v : seq)
      if (v >= universe)
        throw std::invalid_argument("WaveletTree: symbol outside universe");
    uint32_t depth = universe <= 1 ? 0 : std::bit_width(universe - 1);
    std::vector<uint64_t> cur(seq.begin(), seq.end());
    std::vector<uint64_t> next(seq.size());
    levels_.reserve(depth);
    for (uint32_t lev = 0; lev < depth; ++lev) {
      uint32_t shift = depth - 1 - lev;
      BitBuilder bits;
      size_t out = 0;
      size_t i = 0;
      while (i < cur.size()) {
        // one node = maximal run of equal prefixes above the current bit
        size_t run_end = i;
        uint64_t prefix = node_prefix(cur[i], shift);
        while (run_end < cur.size() && node_prefix(cur[run_end], shift) == prefix)
          ++run_end;
        for (size_t t = i; t < run_end; ++t) bits.push_back((cur[t] >> shift) & 1);
        for (size_t t = i; t < run_end; ++t)
          if (!((cur[t] >> shift) & 1)) next[out++] = cur[t];
        for (size_t t = i; t < run_end; ++t)
          if ((cur[t] >> shift) & 1) next[out++] = cur[t];
        i = run_end;
      }
      levels_.push_back(std::move(bits).build());
      cur.swap(next);
    }
  }

  uint64_t size() const { return size_; }
  uint64_t universe() const { return universe_; }
  uint64_t depth() const { return levels_.size(); }

  uint64_t access(uint64_t pos) const {
    if (pos == 0 || pos > size_)
      throw std::out_of_range("WaveletTree::access: position out of range");
    uint64_t lo = 0, hi = size_, g = pos - 1, sym = 0;
    for (const BitVector& bv : levels_) {
      uint64_t lo0 = bv.rank0(lo);
      uint64_t z = bv.rank0(hi) - lo0;
      if (bv.access(g + 1)) {
        sym = (sym << 1) | 1;
        uint64_t idx = bv.rank1(g) - bv.rank1(lo);
        lo += z;
        g = lo + idx;
      } else {
        sym <<= 1;
        uint64_t idx = bv.rank0(g) - lo0;
        hi = lo + z;
        g = lo + idx;
      }
    }
    return sym;
  }

  // Occurrences of sym among the first prefix entries.
  uint64_t rank(uint64_t sym, uint64_t prefix) const {
    if (sym >= universe_)
      throw std::invalid_argument("WaveletTree::rank: symbol outside universe");
    if (prefix > size_)
      throw std::out_of_range("WaveletTree::rank: prefix exceeds length");
    uint64_t lo = 0, hi = size_, p = prefix;
    uint32_t depth = levels_.size();
    for (uint32_t lev = 0; lev < depth; ++lev) {
      if (p == 0) return 0;
      const BitVector& bv = levels_[lev];
      uint64_t lo0 = bv.rank0(lo);
      uint64_t z = bv.rank0(hi) - lo0;
      if ((sym >> (depth - 1 - lev)) & 1) {
        p = bv.rank1(lo + p) - bv.rank1(lo);
        lo += z;
      } else {
        p = bv.rank0(lo + p) - lo0;
        hi = lo + z;
      }
    }
    return p;
  }

  // Position of the k-th occurrence of sym (both 1-based).
  uint64_t select(uint64_t sym, uint64_t k) const {
    if (sym >= universe_)
      throw std::invalid_argument("WaveletTree::select: symbol outside universe");
    if (k == 0) throw std::out_of_range("WaveletTree::select: rank must be >= 1");
    uint32_t depth = levels_.size();
    struct Step {
      uint64_t lo, z;
      bool bit;
    };
    std::vector<Step> path(depth);
    uint64_t lo = 0, hi = size_;
    for (uint32_t lev = 0; lev < depth; ++lev) {
      const BitVector& bv = levels_[lev];
      uint64_t lo0 = bv.rank0(lo);
      uint64_t z = bv.rank0(hi) - lo0;
      bool bit = (sym >> (depth - 1 - lev)) & 1;
      path[lev] = {lo, z, bit};
      if (bit)
        lo += z;
      else
        hi = lo + z;
    }
    if (k > hi - lo)
      throw std::out_of_range("WaveletTree::select: fewer occurrences than rank");
    uint64_t pos = lo + k - 1;
    for (uint32_t lev = depth; lev-- > 0;) {
      const BitVector& bv = levels_[lev];
      const Step& st = path[lev];
      if (st.bit) {
        uint64_t idx = pos - (st.lo + st.z);
        pos = bv.select1(bv.rank1(st.lo) + idx + 1) - 1;
      } else {
        uint64_t idx = pos - st.lo;
        pos = bv.select0(bv.rank0(st.lo) + idx + 1) - 1;
      }
    }
    return pos + 1;
  }

  // Number of entries in positions [l, r] with value strictly below x.
  // An inverted range (l > r) counts as empty.
  uint64_t count_less_than(uint64_t l, uint64_t r, uint64_t x) const {
    if (l == 0)
      throw std::out_of_range("WaveletTree::count_less_than: range start must be >= 1");
    if (r > size_)
      throw std::out_of_range("WaveletTree::count_less_than: range end exceeds length");
    if (l > r || x == 0) return 0;
    if (x >= universe_) return r - l + 1;
    uint64_t lo = 0, hi = size_;
    uint64_t a = l - 1, b = r;
    uint64_t count = 0;
    uint32_t depth = levels_.size();
    for (uint32_t lev = 0; lev < depth && a < b; ++lev) {
      const BitVector& bv = levels_[lev];
      uint64_t lo0 = bv.rank0(lo);
      uint64_t a0 = bv.rank0(a) - lo0;
      uint64_t b0 = bv.rank0(b) - lo0;
      uint64_t z = bv.rank0(hi) - lo0;
      if ((x >> (depth - 1 - lev)) & 1) {
        count += b0 - a0;
        uint64_t a1 = (a - lo) - a0;
        uint64_t b1 = (b - lo) - b0;
        lo += z;
        a = lo + a1;
        b = lo + b1;
      } else {
        hi = lo + z;
        a = lo + a0;
        b = lo + b0;
      }
    }
    return count;
  }

  uint64_t payload_bits() const {
    uint64_t bits = 0;
    for (const BitVector& bv : levels_) bits += bv.payload_bits();
    return bits;
  }

  uint64_t directory_bits() const {
    uint64_t bits = 0;
    for (const BitVector& bv : levels_) bits += bv.directory_bits();
    return bits;
  }

  const std::vector<BitVector>& levels() const { return levels_; }

  void save(ByteWriter& out) const {
    out.put_u64(universe_);
    out.put_u64(size_);
    for (const BitVector& bv : levels_) bv.save(out);
  }

  static WaveletTree load(ByteReader& in) {
    WaveletTree wt;
    wt.universe_ = in.get_u64();
    wt.size_ = in.get_u64();
    if (wt.universe_ == 0) throw CorruptIndexError("wavelet tree with empty universe");
    uint32_t depth = wt.universe_ <= 1 ? 0 : std::bit_width(wt.universe_ - 1);
    wt.levels_.reserve(depth);
    for (uint32_t lev = 0; lev < depth; ++lev) {
      wt.levels_.push_back(BitVector::load(in));
      if (wt.levels_.back().size() != wt.size_)
        throw CorruptIndexError("wavelet tree level length mismatch");
    }
    return wt;
  }

 private:
  static uint64_t node_prefix(uint64_t v, uint32_t shift) {
    return shift + 1 >= 64 ? 0 : v >> (shift + 1);
  }

  uint64_t universe_ = 1;
  uint64_t size_ = 0;
  std::vector<BitVector> levels_;
};

}  // namespace ccount

#endif  // CCOUNT_WAVELET_TREE_HPP
