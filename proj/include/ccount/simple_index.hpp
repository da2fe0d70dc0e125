#ifndef CCOUNT_SIMPLE_INDEX_HPP
#define CCOUNT_SIMPLE_INDEX_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccount/bit_vector.hpp"
#include "ccount/prev_occ.hpp"
#include "ccount/wavelet_tree.hpp"

namespace ccount {

enum class SimpleMode : uint8_t {
  blocked = 0,         // fixed-size blocks, dual encoding of prev-occ entries
  small_alphabet = 1,  // per-symbol rank over the string itself
  plain = 2,           // single tree over the whole prev-occ array
};

struct SimpleBuildOptions {
  std::optional<SimpleMode> force_mode;
  // Forces blocked mode with this block length (mainly so tests can
  // exercise blocking on strings far below the natural block size).
  std::optional<uint64_t> block_len;
  // Dispatch thresholds, overridable for tests.
  std::optional<uint64_t> small_alphabet_below;  // default ceil(log2 n)
  std::optional<uint64_t> plain_when_blocks_reach;  // default n
};

// Fixed-size blocking of the string. Prev-occ entries pointing inside their
// own block are stored as short in-block offsets; the rest (at most sigma
// per block among repeats, plus first occurrences) as full positions. A
// marker bitvector records which encoding each entry uses.
class SimpleBlockIndex {
 public:
  SimpleBlockIndex() = default;

  explicit SimpleBlockIndex(const ColorString& s, SimpleBuildOptions opts = {})
      : n_(s.size()),
        sigma_(s.sigma),
        h0_(h0_bits_per_symbol(s.symbols, s.sigma)) {
    if (n_ == 0) throw std::invalid_argument("SimpleBlockIndex: empty string");
    if (opts.block_len && *opts.block_len < 1)
      throw std::invalid_argument("SimpleBlockIndex: block length must be >= 1");
    mode_ = dispatch(opts);
    switch (mode_) {
      case SimpleMode::blocked: {
        b_ = opts.block_len ? *opts.block_len : natural_block_len();
        build_blocked(s);
        break;
      }
      case SimpleMode::small_alphabet: {
        std::vector<uint64_t> vals(s.symbols.begin(), s.symbols.end());
        symbol_tree_ = WaveletTree(vals, sigma_);
        break;
      }
      case SimpleMode::plain: {
        auto prev = build_prev_occ(s);
        std::vector<uint64_t> vals(prev.begin(), prev.end());
        global_tree_ = WaveletTree(vals, n_ + 1);
        break;
      }
    }
  }

  uint64_t count(uint64_t i, uint64_t j) const {
    if (i == 0 || i > j || j > n_)
      throw std::out_of_range("SimpleBlockIndex::count: invalid range");
    switch (mode_) {
      case SimpleMode::blocked:
        return count_blocked(i, j);
      case SimpleMode::small_alphabet:
        return count_small_alphabet(i, j);
      case SimpleMode::plain:
      default:
        return global_tree_.count_less_than(i, j, i);
    }
  }

  uint64_t size() const { return n_; }
  uint64_t sigma() const { return sigma_; }
  SimpleMode mode() const { return mode_; }
  uint64_t block_len() const { return b_; }
  double h0() const { return h0_; }

  const BitVector& marker() const { return marker_; }
  const WaveletTree& local_tree() const { return local_tree_; }
  const WaveletTree& global_tree() const { return global_tree_; }
  const WaveletTree& symbol_tree() const { return symbol_tree_; }

  uint64_t block_start(uint64_t pos) const { return ((pos - 1) / b_) * b_ + 1; }
  uint64_t block_end(uint64_t pos) const {
    return std::min(block_start(pos) + b_ - 1, n_);
  }

  void save(ByteWriter& out) const {
    out.put_u8(static_cast<uint8_t>(mode_));
    out.put_u64(b_);
    out.put_f64(h0_);
    switch (mode_) {
      case SimpleMode::blocked:
        marker_.save(out);
        local_tree_.save(out);
        global_tree_.save(out);
        break;
      case SimpleMode::small_alphabet:
        symbol_tree_.save(out);
        break;
      case SimpleMode::plain:
        global_tree_.save(out);
        break;
    }
  }

  static SimpleBlockIndex load(ByteReader& in, uint64_t n, uint64_t sigma) {
    SimpleBlockIndex idx;
    idx.n_ = n;
    idx.sigma_ = sigma;
    uint8_t mode = in.get_u8();
    if (mode > 2) throw CorruptIndexError("unknown blocking mode");
    idx.mode_ = static_cast<SimpleMode>(mode);
    idx.b_ = in.get_u64();
    idx.h0_ = in.get_f64();
    switch (idx.mode_) {
      case SimpleMode::blocked:
        if (idx.b_ == 0) throw CorruptIndexError("blocked mode with zero block length");
        idx.marker_ = BitVector::load(in);
        idx.local_tree_ = WaveletTree::load(in);
        idx.global_tree_ = WaveletTree::load(in);
        if (idx.marker_.size() != n ||
            idx.local_tree_.size() + idx.global_tree_.size() != n ||
            idx.local_tree_.universe() != idx.b_ ||
            idx.global_tree_.universe() != n + 1)
          throw CorruptIndexError("blocked payload does not match header");
        break;
      case SimpleMode::small_alphabet:
        idx.symbol_tree_ = WaveletTree::load(in);
        if (idx.symbol_tree_.size() != n)
          throw CorruptIndexError("small-alphabet payload does not match header");
        break;
      case SimpleMode::plain:
        idx.global_tree_ = WaveletTree::load(in);
        if (idx.global_tree_.size() != n)
          throw CorruptIndexError("plain payload does not match header");
        break;
    }
    return idx;
  }

 private:
  SimpleMode dispatch(const SimpleBuildOptions& opts) const {
    if (opts.block_len) return SimpleMode::blocked;
    if (opts.force_mode) return *opts.force_mode;
    uint64_t log_n = n_ <= 1 ? 0 : std::bit_width(n_ - 1);  // ceil(log2 n)
    uint64_t small_below = opts.small_alphabet_below.value_or(log_n);
    if (sigma_ < small_below) return SimpleMode::small_alphabet;
    uint64_t plain_reach = opts.plain_when_blocks_reach.value_or(n_);
    if (sigma_ * log_n >= plain_reach) return SimpleMode::plain;
    return SimpleMode::blocked;
  }

  uint64_t natural_block_len() const {
    if (n_ <= 1) return 1;
    auto b = static_cast<uint64_t>(std::ceil(double(sigma_) * std::log2(double(n_))));
    return std::min(std::max<uint64_t>(b, 2), n_);
  }

  void build_blocked(const ColorString& s) {
    auto prev = build_prev_occ(s);
    std::vector<bool> marker(n_);
    std::vector<uint64_t> local_vals, global_vals;
    for (uint64_t q = 1; q <= n_; ++q) {
      uint64_t p = prev[q - 1];
      bool same_block = p > 0 && (p - 1) / b_ == (q - 1) / b_;
      marker[q - 1] = same_block;
      if (same_block)
        local_vals.push_back(p - block_start(q));
      else
        global_vals.push_back(p);
    }
    marker_ = BitVector(marker);
    local_tree_ = WaveletTree(local_vals, b_);
    global_tree_ = WaveletTree(global_vals, n_ + 1);
  }

  uint64_t count_blocked(uint64_t i, uint64_t j) const {
    uint64_t total = 0;
    // In-block encodings below i can only sit between i and the end of
    // i's block; later blocks keep their previous occurrence at or after
    // their own block start, which is past i.
    uint64_t local_hi = std::min(j, block_end(i));
    if (i <= local_hi) {
      uint64_t l = marker_.rank1(i - 1) + 1;
      uint64_t r = marker_.rank1(local_hi);
      if (l <= r)
        total += local_tree_.count_less_than(l, r, i - block_start(i));
    }
    uint64_t l = marker_.rank0(i - 1) + 1;
    uint64_t r = marker_.rank0(j);
    if (l <= r) total += global_tree_.count_less_than(l, r, i);
    return total;
  }

  uint64_t count_small_alphabet(uint64_t i, uint64_t j) const {
    uint64_t total = 0;
    for (uint64_t c = 0; c < sigma_; ++c)
      if (symbol_tree_.rank(c, j) > symbol_tree_.rank(c, i - 1)) ++total;
    return total;
  }

  uint64_t n_ = 0;
  uint64_t sigma_ = 0;
  SimpleMode mode_ = SimpleMode::blocked;
  uint64_t b_ = 0;
  double h0_ = 0.0;
  BitVector marker_;
  WaveletTree local_tree_;
  WaveletTree global_tree_;
  WaveletTree symbol_tree_;
};

}  // namespace ccount

#endif  // CCOUNT_SIMPLE_INDEX_HPP
