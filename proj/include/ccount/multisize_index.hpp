#ifndef CCOUNT_MULTISIZE_INDEX_HPP
#define CCOUNT_MULTISIZE_INDEX_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccount/block_ladder.hpp"
#include "ccount/prev_occ.hpp"
#include "ccount/wavelet_tree.hpp"

namespace ccount {

// Distinct-colour count shared by the static and dynamic multi-size
// indexes. `labels` is the class-label sequence (0 = first occurrence) and
// `offset_trees[k]` holds the in-block offsets of class k in position
// order. Both tree types expose rank(sym, prefix) and
// count_less_than(l, r, x) with identical conventions.
//
// For each class size b, a counted entry q >= i whose previous occurrence
// sits before i shares a block with i, so q lies inside the rightmost
// size-b block containing i. Every position in the right half of a block
// has that block as its leftmost cover, and the right halves of the
// leftmost and rightmost blocks containing i tile that candidate range,
// so two offset queries per class suffice. When only one block contains i
// (it must be the first block), every position in it has cover start 1 and
// one query over the whole block works.
template <class LabelTree, class OffsetTree>
uint64_t count_distinct_core(const BlockLadder& ladder, const LabelTree& labels,
                             const std::vector<OffsetTree>& offset_trees,
                             uint64_t n, uint64_t i, uint64_t j,
                             uint64_t* work_counter = nullptr) {
  if (i == 0 || i > j || j > n)
    throw std::out_of_range("count_distinct: invalid range");
  uint64_t total = labels.rank(0, j) - labels.rank(0, i - 1);
  const auto& sizes = ladder.sizes();
  for (size_t k = 1; k < sizes.size(); ++k) {
    if (k >= offset_trees.size() || offset_trees[k].size() == 0) continue;
    uint64_t b = sizes[k];
    uint64_t h = b / 2;
    uint64_t start_r = BlockLadder::rightmost_cover_start(i, b);
    uint64_t start_l = BlockLadder::leftmost_cover_start(i, b);
    auto ranged = [&](uint64_t q_lo, uint64_t q_hi, uint64_t below) -> uint64_t {
      if (q_lo > q_hi || below == 0) return 0;
      uint64_t l = labels.rank(k, q_lo - 1) + 1;
      uint64_t r = labels.rank(k, q_hi);
      if (l > r) return 0;
      if (work_counter) ++*work_counter;
      return offset_trees[k].count_less_than(l, r, below);
    };
    if (start_l == start_r) {
      total += ranged(std::max(i, start_l), std::min(j, start_l + b - 1), i - start_l);
    } else {
      total += ranged(std::max(i, start_l + h), std::min(j, start_l + b - 1), i - start_l);
      total += ranged(std::max(i, start_r + h), std::min(j, start_r + b - 1), i - start_r);
    }
  }
  return total;
}

// Entropy-compressed index: a label sequence recording each entry's block
// size class and one offset tree per class. An entry whose occurrences are
// d apart costs about (1 + delta) * log2(d) offset bits, which sums to about
// (1 + delta) * n * H0 overall.
class MultiSizeIndex {
 public:
  MultiSizeIndex() = default;

  explicit MultiSizeIndex(const ColorString& s, std::optional<double> delta = {})
      : n_(s.size()),
        sigma_(s.sigma),
        h0_(h0_bits_per_symbol(s.symbols, s.sigma)) {
    if (n_ == 0) throw std::invalid_argument("MultiSizeIndex: empty string");
    ladder_ = BlockLadder(n_, delta.value_or(BlockLadder::default_delta(n_)));
    auto prev = build_prev_occ(s);
    build_trees(classify_entries(prev, ladder_));
  }

  uint64_t count(uint64_t i, uint64_t j, uint64_t* work_counter = nullptr) const {
    return count_distinct_core(ladder_, label_tree_, offset_trees_, n_, i, j,
                               work_counter);
  }

  uint64_t size() const { return n_; }
  uint64_t sigma() const { return sigma_; }
  double delta() const { return ladder_.delta(); }
  double h0() const { return h0_; }
  const BlockLadder& ladder() const { return ladder_; }
  const WaveletTree& label_tree() const { return label_tree_; }
  const std::vector<WaveletTree>& offset_trees() const { return offset_trees_; }

  // Reconstructs the previous-occurrence array from labels and offsets.
  std::vector<uint32_t> decode_prev_occ() const {
    std::vector<uint32_t> prev(n_);
    for (uint64_t q = 1; q <= n_; ++q) {
      uint64_t k = label_tree_.access(q);
      if (k == 0) {
        prev[q - 1] = 0;
        continue;
      }
      uint64_t idx = label_tree_.rank(k, q);
      uint64_t off = offset_trees_[k].access(idx);
      prev[q - 1] = static_cast<uint32_t>(
          BlockLadder::leftmost_cover_start(q, ladder_.sizes()[k]) + off);
    }
    return prev;
  }

  uint64_t offset_payload_bits() const {
    uint64_t bits = 0;
    for (const auto& t : offset_trees_) bits += t.payload_bits();
    return bits;
  }

  void save(ByteWriter& out) const {
    out.put_f64(h0_);
    ladder_.save(out);
    label_tree_.save(out);
    for (size_t k = 1; k < offset_trees_.size(); ++k) offset_trees_[k].save(out);
  }

  static MultiSizeIndex load(ByteReader& in, uint64_t n, uint64_t sigma) {
    MultiSizeIndex idx;
    idx.n_ = n;
    idx.sigma_ = sigma;
    idx.h0_ = in.get_f64();
    idx.ladder_ = BlockLadder::load(in);
    idx.label_tree_ = WaveletTree::load(in);
    if (idx.label_tree_.size() != n ||
        idx.label_tree_.universe() != idx.ladder_.num_classes())
      throw CorruptIndexError("label tree does not match header");
    idx.offset_trees_.resize(idx.ladder_.num_classes());
    for (size_t k = 1; k < idx.offset_trees_.size(); ++k) {
      idx.offset_trees_[k] = WaveletTree::load(in);
      if (idx.offset_trees_[k].universe() != idx.ladder_.sizes()[k])
        throw CorruptIndexError("offset tree universe does not match ladder");
    }
    return idx;
  }

 private:
  void build_trees(const ClassifiedEntries& cls) {
    std::vector<uint64_t> labels(cls.labels.begin(), cls.labels.end());
    label_tree_ = WaveletTree(labels, ladder_.num_classes());
    offset_trees_.resize(ladder_.num_classes());
    for (size_t k = 1; k < offset_trees_.size(); ++k)
      offset_trees_[k] = WaveletTree(cls.offsets[k], ladder_.sizes()[k]);
  }

  uint64_t n_ = 0;
  uint64_t sigma_ = 0;
  double h0_ = 0.0;
  BlockLadder ladder_;
  WaveletTree label_tree_;
  std::vector<WaveletTree> offset_trees_;
};

}  // namespace ccount

#endif  // CCOUNT_MULTISIZE_INDEX_HPP
