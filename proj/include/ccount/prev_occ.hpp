#ifndef CCOUNT_PREV_OCC_HPP
#define CCOUNT_PREV_OCC_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ccount/entropy.hpp"
#include "ccount/wavelet_tree.hpp"

namespace ccount {

// A string over a dense integer alphabet [0, sigma). Each symbol value is
// one colour; queries count distinct colours in a substring.
struct ColorString {
  std::vector<uint32_t> symbols;
  uint32_t sigma = 0;

  uint64_t size() const { return symbols.size(); }
};

inline void validate_color_string(const ColorString& s) {
  for (uint32_t v : s.symbols)
    if (v >= s.sigma)
      throw std::invalid_argument("ColorString: symbol outside alphabet");
}

// prev[q-1] is the largest position p < q with s[p] = s[q], or 0 if the
// symbol at q has no earlier occurrence. Single left-to-right pass with a
// last-seen table.
inline std::vector<uint32_t> build_prev_occ(const ColorString& s) {
  validate_color_string(s);
  std::vector<uint32_t> prev(s.size());
  std::vector<uint32_t> last(s.sigma, 0);
  for (uint64_t q = 1; q <= s.size(); ++q) {
    uint32_t c = s.symbols[q - 1];
    prev[q - 1] = last[c];
    last[c] = static_cast<uint32_t>(q);
  }
  return prev;
}

// Direct window scan; the reference answer everything else is tested against.
inline uint64_t naive_distinct_count(const ColorString& s, uint64_t i, uint64_t j) {
  if (i == 0 || i > j || j > s.size())
    throw std::out_of_range("naive_distinct_count: invalid range");
  static thread_local std::vector<uint64_t> stamp;
  static thread_local uint64_t tick = 0;
  if (stamp.size() < s.sigma) stamp.assign(s.sigma, 0);
  ++tick;
  uint64_t count = 0;
  for (uint64_t q = i; q <= j; ++q) {
    uint32_t c = s.symbols[q - 1];
    if (stamp[c] != tick) {
      stamp[c] = tick;
      ++count;
    }
  }
  return count;
}

// One wavelet tree over the previous-occurrence array. The symbol at q is
// the first occurrence of its colour inside [i, j] exactly when its
// previous occurrence lies before i, so the distinct count is the number
// of entries below i in positions [i, j].
class BaselineIndex {
 public:
  BaselineIndex() = default;

  explicit BaselineIndex(const ColorString& s)
      : n_(s.size()),
        sigma_(s.sigma),
        h0_(h0_bits_per_symbol(s.symbols, s.sigma)) {
    auto prev = build_prev_occ(s);
    std::vector<uint64_t> vals(prev.begin(), prev.end());
    tree_ = WaveletTree(vals, n_ + 1);
  }

  uint64_t count(uint64_t i, uint64_t j) const {
    if (i == 0 || i > j || j > n_)
      throw std::out_of_range("BaselineIndex::count: invalid range");
    return tree_.count_less_than(i, j, i);
  }

  uint64_t size() const { return n_; }
  uint64_t sigma() const { return sigma_; }
  double h0() const { return h0_; }
  const WaveletTree& tree() const { return tree_; }

  void save(ByteWriter& out) const {
    out.put_f64(h0_);
    tree_.save(out);
  }

  static BaselineIndex load(ByteReader& in, uint64_t n, uint64_t sigma) {
    BaselineIndex idx;
    idx.n_ = n;
    idx.sigma_ = sigma;
    idx.h0_ = in.get_f64();
    idx.tree_ = WaveletTree::load(in);
    if (idx.tree_.size() != n || idx.tree_.universe() != n + 1)
      throw CorruptIndexError("baseline payload does not match header");
    return idx;
  }

 private:
  uint64_t n_ = 0;
  uint64_t sigma_ = 0;
  double h0_ = 0.0;
  WaveletTree tree_;
};

}  // namespace ccount

#endif  // CCOUNT_PREV_OCC_HPP
