#ifndef CCOUNT_DYNAMIC_BIT_VECTOR_HPP
#define CCOUNT_DYNAMIC_BIT_VECTOR_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "ccount/bit_vector.hpp"

namespace ccount {

// Bit sequence supporting rank, select, insert and erase in logarithmic
// time: an AVL tree whose leaves hold packed bit chunks and whose inner
// nodes cache subtree bit and popcount totals. Leaves split at
// kMaxLeafBits and merge back with a sibling leaf when they fall under
// kMinLeafBits, so the tree has at most one leaf per ~kMinLeafBits bits
// plus whatever erase fragmentation leaves behind; every leaf keeps at
// least one bit, which bounds the height by O(log size) either way.
//
// Same conventions as BitVector: 1-based positions, prefix-length ranks.
class DynamicBitVector {
 public:
  static constexpr uint64_t kMaxLeafBits = 512;
  static constexpr uint64_t kMinLeafBits = 128;

  DynamicBitVector() = default;

  explicit DynamicBitVector(const std::vector<bool>& bits) {
    if (bits.empty()) return;
    root_ = build_range(bits, 0, bits.size());
  }

  uint64_t size() const { return root_ ? root_->bits : 0; }
  uint64_t ones() const { return root_ ? root_->ones : 0; }
  uint64_t zeros() const { return size() - ones(); }

  bool access(uint64_t pos) const {
    if (pos == 0 || pos > size())
      throw std::out_of_range("DynamicBitVector::access: position out of range");
    const Node* n = root_.get();
    uint64_t i = pos - 1;
    while (!n->leaf()) {
      if (i < n->left->bits) {
        n = n->left.get();
      } else {
        i -= n->left->bits;
        n = n->right.get();
      }
    }
    return (n->words[i >> 6] >> (i & 63)) & 1;
  }

  uint64_t rank1(uint64_t prefix) const {
    if (prefix > size())
      throw std::out_of_range("DynamicBitVector::rank1: prefix exceeds length");
    const Node* n = root_.get();
    uint64_t acc = 0;
    while (n && !n->leaf()) {
      if (prefix <= n->left->bits) {
        n = n->left.get();
      } else {
        acc += n->left->ones;
        prefix -= n->left->bits;
        n = n->right.get();
      }
    }
    if (n) acc += leaf_rank1(n->words, prefix);
    return acc;
  }

  uint64_t rank0(uint64_t prefix) const { return prefix - rank1(prefix); }

  uint64_t select1(uint64_t k) const {
    if (k == 0 || k > ones())
      throw std::out_of_range("DynamicBitVector::select1: rank out of range");
    const Node* n = root_.get();
    uint64_t base = 0;
    while (!n->leaf()) {
      if (k <= n->left->ones) {
        n = n->left.get();
      } else {
        k -= n->left->ones;
        base += n->left->bits;
        n = n->right.get();
      }
    }
    for (uint64_t w = 0;; ++w) {
      uint64_t c = std::popcount(n->words[w]);
      if (c >= k) return base + (w << 6) + word_select1(n->words[w], k) + 1;
      k -= c;
    }
  }

  uint64_t select0(uint64_t k) const {
    if (k == 0 || k > zeros())
      throw std::out_of_range("DynamicBitVector::select0: rank out of range");
    const Node* n = root_.get();
    uint64_t base = 0;
    while (!n->leaf()) {
      uint64_t lz = n->left->bits - n->left->ones;
      if (k <= lz) {
        n = n->left.get();
      } else {
        k -= lz;
        base += n->left->bits;
        n = n->right.get();
      }
    }
    for (uint64_t w = 0;; ++w) {
      uint64_t valid = std::min<uint64_t>(64, n->bits - (w << 6));
      uint64_t z = valid - std::popcount(n->words[w]);
      if (z >= k) return base + (w << 6) + word_select1(~n->words[w], k) + 1;
      k -= z;
    }
  }

  // Inserts so the new bit lands at position pos; pos in [1, size + 1].
  void insert(uint64_t pos, bool bit) {
    if (pos == 0 || pos > size() + 1)
      throw std::out_of_range("DynamicBitVector::insert: position out of range");
    if (!root_) {
      root_ = std::make_unique<Node>();
      leaf_insert(*root_, 0, bit);
      return;
    }
    root_ = insert_rec(std::move(root_), pos - 1, bit);
  }

  void erase(uint64_t pos) {
    if (pos == 0 || pos > size())
      throw std::out_of_range("DynamicBitVector::erase: position out of range");
    root_ = erase_rec(std::move(root_), pos - 1);
  }

  int height() const { return root_ ? root_->height : 0; }

  uint64_t logical_bits() const { return size(); }

 private:
  struct Node {
    std::unique_ptr<Node> left, right;
    uint64_t bits = 0;
    uint64_t ones = 0;
    int height = 1;
    std::vector<uint64_t> words;  // leaf payload; empty on inner nodes

    bool leaf() const { return !left; }
  };

  static int node_height(const Node* n) { return n ? n->height : 0; }

  static void pull(Node& n) {
    n.bits = n.left->bits + n.right->bits;
    n.ones = n.left->ones + n.right->ones;
    n.height = 1 + std::max(n.left->height, n.right->height);
  }

  static std::unique_ptr<Node> rotate_left(std::unique_ptr<Node> n) {
    auto r = std::move(n->right);
    n->right = std::move(r->left);
    pull(*n);
    r->left = std::move(n);
    pull(*r);
    return r;
  }

  static std::unique_ptr<Node> rotate_right(std::unique_ptr<Node> n) {
    auto l = std::move(n->left);
    n->left = std::move(l->right);
    pull(*n);
    l->right = std::move(n);
    pull(*l);
    return l;
  }

  static std::unique_ptr<Node> rebalance(std::unique_ptr<Node> n) {
    pull(*n);
    int bf = node_height(n->left.get()) - node_height(n->right.get());
    if (bf > 1) {
      if (node_height(n->left->left.get()) < node_height(n->left->right.get()))
        n->left = rotate_left(std::move(n->left));
      return rotate_right(std::move(n));
    }
    if (bf < -1) {
      if (node_height(n->right->right.get()) < node_height(n->right->left.get()))
        n->right = rotate_right(std::move(n->right));
      return rotate_left(std::move(n));
    }
    return n;
  }

  // --- leaf payload helpers (0-based offsets) ---

  static uint64_t leaf_rank1(const std::vector<uint64_t>& w, uint64_t prefix) {
    uint64_t full = prefix >> 6, acc = 0;
    for (uint64_t i = 0; i < full; ++i) acc += std::popcount(w[i]);
    if (prefix & 63) acc += std::popcount(w[full] & ((uint64_t(1) << (prefix & 63)) - 1));
    return acc;
  }

  static void leaf_insert(Node& n, uint64_t i, bool bit) {
    if ((n.bits & 63) == 0) n.words.push_back(0);
    uint64_t wi = i >> 6, bi = i & 63;
    uint64_t low_mask = bi ? (uint64_t(1) << bi) - 1 : 0;
    uint64_t carry = n.words[wi] >> 63;
    uint64_t kept = n.words[wi] & low_mask;
    uint64_t moved = (n.words[wi] & ~low_mask) << 1;
    n.words[wi] = kept | (uint64_t(bit) << bi) | moved;
    for (uint64_t k = wi + 1; k < n.words.size(); ++k) {
      uint64_t c = n.words[k] >> 63;
      n.words[k] = (n.words[k] << 1) | carry;
      carry = c;
    }
    n.bits += 1;
    n.ones += bit;
  }

  static void leaf_erase(Node& n, uint64_t i) {
    uint64_t wi = i >> 6, bi = i & 63;
    bool bit = (n.words[wi] >> bi) & 1;
    uint64_t low_mask = bi ? (uint64_t(1) << bi) - 1 : 0;
    n.words[wi] = (n.words[wi] & low_mask) | ((n.words[wi] >> 1) & ~low_mask);
    for (uint64_t k = wi + 1; k < n.words.size(); ++k) {
      n.words[k - 1] |= (n.words[k] & 1) << 63;
      n.words[k] >>= 1;
    }
    n.bits -= 1;
    n.ones -= bit;
    if (n.words.size() > (n.bits + 63) / 64) n.words.pop_back();
  }

  static bool leaf_bit(const Node& n, uint64_t i) {
    return (n.words[i >> 6] >> (i & 63)) & 1;
  }

  // Splits a full leaf into an inner node with two half leaves.
  static std::unique_ptr<Node> split_leaf(std::unique_ptr<Node> n) {
    uint64_t words_left = n->words.size() / 2;
    auto left = std::make_unique<Node>();
    auto right = std::make_unique<Node>();
    left->words.assign(n->words.begin(), n->words.begin() + words_left);
    right->words.assign(n->words.begin() + words_left, n->words.end());
    left->bits = words_left * 64;
    right->bits = n->bits - left->bits;
    for (uint64_t w : left->words) left->ones += std::popcount(w);
    right->ones = n->ones - left->ones;
    auto inner = std::make_unique<Node>();
    inner->left = std::move(left);
    inner->right = std::move(right);
    pull(*inner);
    return inner;
  }

  static void append_leaf_bits(Node& dst, const Node& src) {
    for (uint64_t i = 0; i < src.bits; ++i)
      leaf_insert(dst, dst.bits, leaf_bit(src, i));
  }

  std::unique_ptr<Node> insert_rec(std::unique_ptr<Node> n, uint64_t i, bool bit) {
    if (n->leaf()) {
      if (n->bits >= kMaxLeafBits) {
        n = split_leaf(std::move(n));
        // fall through to the inner-node path
      } else {
        leaf_insert(*n, i, bit);
        return n;
      }
    }
    if (i <= n->left->bits) {
      n->left = insert_rec(std::move(n->left), i, bit);
    } else {
      n->right = insert_rec(std::move(n->right), i - n->left->bits, bit);
    }
    return rebalance(std::move(n));
  }

  std::unique_ptr<Node> erase_rec(std::unique_ptr<Node> n, uint64_t i) {
    if (n->leaf()) {
      leaf_erase(*n, i);
      if (n->bits == 0) return nullptr;
      return n;
    }
    if (i < n->left->bits) {
      n->left = erase_rec(std::move(n->left), i);
      if (!n->left) return std::move(n->right);
    } else {
      n->right = erase_rec(std::move(n->right), i - n->left->bits);
      if (!n->right) return std::move(n->left);
    }
    if (n->left->leaf() && n->right->leaf() &&
        (n->left->bits < kMinLeafBits || n->right->bits < kMinLeafBits) &&
        n->left->bits + n->right->bits <= kMaxLeafBits) {
      append_leaf_bits(*n->left, *n->right);
      return std::move(n->left);
    }
    return rebalance(std::move(n));
  }

  std::unique_ptr<Node> build_range(const std::vector<bool>& bits, uint64_t lo,
                                    uint64_t hi) {
    uint64_t count = hi - lo;
    if (count <= kMaxLeafBits / 2) {
      auto leaf = std::make_unique<Node>();
      leaf->words.assign((count + 63) / 64, 0);
      for (uint64_t i = 0; i < count; ++i)
        if (bits[lo + i]) {
          leaf->words[i >> 6] |= uint64_t(1) << (i & 63);
          ++leaf->ones;
        }
      leaf->bits = count;
      return leaf;
    }
    uint64_t leaves = (count + kMaxLeafBits / 2 - 1) / (kMaxLeafBits / 2);
    uint64_t mid = lo + (leaves / 2) * (kMaxLeafBits / 2);
    auto inner = std::make_unique<Node>();
    inner->left = build_range(bits, lo, mid);
    inner->right = build_range(bits, mid, hi);
    pull(*inner);
    return inner;
  }

  std::unique_ptr<Node> root_;
};

}  // namespace ccount

#endif  // CCOUNT_DYNAMIC_BIT_VECTOR_HPP
