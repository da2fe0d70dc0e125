#ifndef CCOUNT_DYNAMIC_INDEX_HPP
#define CCOUNT_DYNAMIC_INDEX_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccount/block_ladder.hpp"
#include "ccount/dynamic_wavelet_tree.hpp"
#include "ccount/multisize_index.hpp"
#include "ccount/prev_occ.hpp"

namespace ccount {

// Multi-size index over dynamic wavelet trees, supporting symbol
// replacement, deletion and appends. Deleted positions hold a reserved
// null symbol (token value sigma) that takes part in previous-occurrence
// chains like any other symbol and is subtracted from counts.
//
// The previous-occurrence array is represented only through the class
// labels and offset trees. Changing s[j] from x to y rewires at most
// three entries: j itself now points at the last y before j, the next x
// after j inherits j's old predecessor, and the next y after j points
// at j.
//
// Single writer: mutations need exclusive access; reads may run
// concurrently only between mutations.
class DynamicColorIndex {
 public:
  explicit DynamicColorIndex(const ColorString& s, std::optional<double> delta = {}) {
    validate_color_string(s);
    double d = delta.value_or(BlockLadder::default_delta(s.size() ? s.size() : 1));
    BlockLadder ladder(s.size() ? s.size() : 1, d);
    ladder.ensure_growable();
    init(s.sigma, d, std::move(ladder), s.symbols);
  }

  // Rebuild from snapshot state: original alphabet size, the frozen delta,
  // the ladder as grown so far, and the current symbols including nulls.
  static DynamicColorIndex restore(uint64_t sigma, double delta, BlockLadder ladder,
                                   const std::vector<uint32_t>& symbols_with_nulls) {
    ladder.ensure_growable();
    if (ladder.top_size() < symbols_with_nulls.size())
      throw std::invalid_argument("DynamicColorIndex: ladder does not cover string");
    DynamicColorIndex idx;
    idx.init(sigma, delta, std::move(ladder), symbols_with_nulls);
    return idx;
  }

  uint64_t size() const { return n_; }
  uint64_t sigma() const { return sigma_; }
  uint64_t null_symbol() const { return sigma_; }
  double delta() const { return delta_; }
  const BlockLadder& ladder() const { return ladder_; }

  // Sets s[j] = y; y may be the null symbol. No-op when unchanged.
  void replace_symbol(uint64_t j, uint64_t y) {
    if (j == 0 || j > n_)
      throw std::out_of_range("DynamicColorIndex::replace: position out of range");
    if (y > sigma_)
      throw std::invalid_argument("DynamicColorIndex::replace: symbol outside alphabet");
    last_rewired_ = 0;
    uint64_t x = s_tree_.access(j);
    if (x == y) return;

    uint64_t before_x = s_tree_.rank(x, j - 1);
    uint64_t before_y = s_tree_.rank(y, j - 1);
    uint64_t ix = before_x ? s_tree_.select(x, before_x) : 0;
    uint64_t iy = before_y ? s_tree_.select(y, before_y) : 0;
    uint64_t total_x = s_tree_.rank(x, n_);
    uint64_t total_y = s_tree_.rank(y, n_);
    uint64_t kx = before_x + 1 < total_x ? s_tree_.select(x, before_x + 2) : 0;
    uint64_t ky = before_y < total_y ? s_tree_.select(y, before_y + 1) : 0;

    set_entry(j, iy);
    if (kx) set_entry(kx, ix);
    if (ky) set_entry(ky, j);

    s_tree_.erase(j);
    s_tree_.insert(j, y);
  }

  // Deletion by null substitution; positions never shift.
  void erase_symbol(uint64_t j) {
    if (j == 0 || j > n_)
      throw std::out_of_range("DynamicColorIndex::erase: position out of range");
    if (s_tree_.access(j) == sigma_)
      throw std::invalid_argument("DynamicColorIndex::erase: position already deleted");
    replace_symbol(j, sigma_);
  }

  void append_symbol(uint64_t c) {
    if (c >= sigma_)
      throw std::invalid_argument("DynamicColorIndex::append: symbol outside alphabet");
    last_rewired_ = 0;
    uint64_t q = n_ + 1;
    grow_ladder_to(q);
    uint64_t occ = s_tree_.rank(c, n_);
    uint64_t p = occ ? s_tree_.select(c, occ) : 0;
    uint32_t label = 0;
    uint64_t offset = 0;
    if (p > 0) {
      size_t k = ladder_.classify(p, q);
      label = static_cast<uint32_t>(k);
      offset = p - BlockLadder::leftmost_cover_start(q, ladder_.sizes()[k]);
    }
    label_tree_.insert(q, label);
    if (label) offset_trees_[label].insert(label_tree_.rank(label, q), offset);
    s_tree_.insert(q, c);
    ++n_;
    ++last_rewired_;
  }

  // Distinct colours in s[i..j], nulls excluded.
  uint64_t count(uint64_t i, uint64_t j) const {
    uint64_t total = count_distinct_core(ladder_, label_tree_, offset_trees_, n_, i, j);
    if (s_tree_.rank(sigma_, j) > s_tree_.rank(sigma_, i - 1)) --total;
    return total;
  }

  uint64_t symbol_at(uint64_t pos) const { return s_tree_.access(pos); }

  std::vector<uint32_t> current_symbols() const {
    std::vector<uint32_t> out(n_);
    for (uint64_t q = 1; q <= n_; ++q)
      out[q - 1] = static_cast<uint32_t>(s_tree_.access(q));
    return out;
  }

  // Previous-occurrence array implied by the label and offset trees.
  std::vector<uint32_t> decode_prev_occ() const {
    std::vector<uint32_t> prev(n_);
    for (uint64_t q = 1; q <= n_; ++q) {
      uint64_t k = label_tree_.access(q);
      if (k == 0) continue;
      uint64_t off = offset_trees_[k].access(label_tree_.rank(k, q));
      prev[q - 1] = static_cast<uint32_t>(
          BlockLadder::leftmost_cover_start(q, ladder_.sizes()[k]) + off);
    }
    return prev;
  }

  // Entries of the prev-occ representation rewritten by the last mutation.
  uint64_t last_rewired_entries() const { return last_rewired_; }

  uint64_t logical_bits() const {
    uint64_t bits = s_tree_.logical_bits() + label_tree_.logical_bits();
    for (const auto& t : offset_trees_) bits += t.logical_bits();
    return bits;
  }

  const DynamicWaveletTree& symbol_tree() const { return s_tree_; }
  const DynamicWaveletTree& label_tree() const { return label_tree_; }
  const std::vector<DynamicWaveletTree>& offset_trees() const { return offset_trees_; }

 private:
  DynamicColorIndex() = default;

  void init(uint64_t sigma, double delta, BlockLadder ladder,
            const std::vector<uint32_t>& symbols) {
    sigma_ = sigma;
    delta_ = delta;
    ladder_ = std::move(ladder);
    n_ = symbols.size();
    for (uint32_t v : symbols)
      if (v > sigma_)
        throw std::invalid_argument("DynamicColorIndex: symbol outside alphabet");

    ColorString extended{symbols, static_cast<uint32_t>(sigma_ + 1)};
    auto prev = build_prev_occ(extended);
    auto cls = classify_entries(prev, ladder_);

    std::vector<uint64_t> label_freq(ladder_.num_classes(), 0);
    for (uint32_t lab : cls.labels) ++label_freq[lab];
    label_tree_ = n_ == 0 ? DynamicWaveletTree::balanced(ladder_.num_classes())
                          : DynamicWaveletTree::huffman_shaped(
                                ladder_.num_classes(), label_freq);

    s_tree_ = DynamicWaveletTree::balanced(sigma_ + 1);
    for (uint64_t q = 1; q <= n_; ++q) s_tree_.insert(q, symbols[q - 1]);
    for (uint64_t q = 1; q <= n_; ++q) label_tree_.insert(q, cls.labels[q - 1]);

    offset_trees_.reserve(ladder_.num_classes());
    for (size_t k = 0; k < ladder_.num_classes(); ++k)
      offset_trees_.push_back(DynamicWaveletTree::balanced(ladder_.sizes()[k]));
    for (size_t k = 1; k < ladder_.num_classes(); ++k)
      for (size_t i = 0; i < cls.offsets[k].size(); ++i)
        offset_trees_[k].insert(i + 1, cls.offsets[k][i]);
  }

  // Rewrites the stored previous occurrence of position q.
  void set_entry(uint64_t q, uint64_t p) {
    uint64_t old_label = label_tree_.access(q);
    uint32_t new_label = 0;
    uint64_t new_offset = 0;
    if (p > 0) {
      size_t k = ladder_.classify(p, q);
      new_label = static_cast<uint32_t>(k);
      new_offset = p - BlockLadder::leftmost_cover_start(q, ladder_.sizes()[k]);
    }
    if (old_label) offset_trees_[old_label].erase(label_tree_.rank(old_label, q));
    if (old_label != new_label) {
      label_tree_.erase(q);
      label_tree_.insert(q, new_label);
    }
    if (new_label)
      offset_trees_[new_label].insert(label_tree_.rank(new_label, q), new_offset);
    ++last_rewired_;
  }

  // Doubles the top ladder size until it covers length n; offsets of
  // entries in the top class are re-derived against the new block grid.
  void grow_ladder_to(uint64_t n) {
    if (ladder_.top_size() >= n) return;
    size_t top = ladder_.num_classes() - 1;
    uint64_t old_b = ladder_.sizes()[top];
    uint64_t count = label_tree_.rank(top, n_);
    std::vector<std::pair<uint64_t, uint64_t>> entries;  // (position, prev)
    entries.reserve(count);
    for (uint64_t i = 1; i <= count; ++i) {
      uint64_t q = label_tree_.select(top, i);
      uint64_t off = offset_trees_[top].access(i);
      entries.emplace_back(q, BlockLadder::leftmost_cover_start(q, old_b) + off);
    }
    ladder_.grow_top_to(n);
    uint64_t new_b = ladder_.sizes()[top];
    offset_trees_[top] = DynamicWaveletTree::balanced(new_b);
    for (uint64_t i = 1; i <= count; ++i) {
      auto [q, p] = entries[i - 1];
      offset_trees_[top].insert(i, p - BlockLadder::leftmost_cover_start(q, new_b));
    }
  }

  uint64_t sigma_ = 0;
  double delta_ = 1.0;
  BlockLadder ladder_;
  uint64_t n_ = 0;
  uint64_t last_rewired_ = 0;
  DynamicWaveletTree s_tree_;
  DynamicWaveletTree label_tree_;
  std::vector<DynamicWaveletTree> offset_trees_;
};

}  // namespace ccount

#endif  // CCOUNT_DYNAMIC_INDEX_HPP
