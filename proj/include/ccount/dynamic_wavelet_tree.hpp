#ifndef CCOUNT_DYNAMIC_WAVELET_TREE_HPP
#define CCOUNT_DYNAMIC_WAVELET_TREE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ccount/dynamic_bit_vector.hpp"

namespace ccount {

struct SymbolCode {
  uint64_t bits = 0;  // consumed most significant first over len bits
  uint32_t len = 0;
};

// Deterministic Huffman codes over the given weights. Zero weights are
// bumped to one so every symbol in the universe stays encodable even if it
// never occurred when the shape was frozen.
inline std::vector<SymbolCode> build_huffman_codes(std::vector<uint64_t> weights) {
  size_t u = weights.size();
  if (u == 0) throw std::invalid_argument("build_huffman_codes: empty universe");
  for (auto& w : weights) w = std::max<uint64_t>(w, 1);
  if (u == 1) return {SymbolCode{0, 0}};

  struct Item {
    uint64_t weight;
    uint32_t order;  // creation order, for deterministic ties
    int32_t node;
  };
  auto cmp = [](const Item& a, const Item& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.order > b.order;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);

  struct TreeNode {
    int32_t child[2] = {-1, -1};
    int64_t sym = -1;
  };
  std::vector<TreeNode> nodes;
  nodes.reserve(2 * u);
  for (size_t s = 0; s < u; ++s) {
    nodes.push_back(TreeNode{{-1, -1}, int64_t(s)});
    heap.push(Item{weights[s], uint32_t(s), int32_t(s)});
  }
  uint32_t order = static_cast<uint32_t>(u);
  while (heap.size() > 1) {
    Item a = heap.top();
    heap.pop();
    Item b = heap.top();
    heap.pop();
    TreeNode parent;
    parent.child[0] = a.node;
    parent.child[1] = b.node;
    nodes.push_back(parent);
    heap.push(Item{a.weight + b.weight, order++, int32_t(nodes.size() - 1)});
  }
  std::vector<SymbolCode> codes(u);
  struct Frame {
    int32_t node;
    uint64_t bits;
    uint32_t len;
  };
  std::vector<Frame> stack{{heap.top().node, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes[f.node];
    if (nd.sym >= 0) {
      codes[nd.sym] = SymbolCode{f.bits, f.len};
      continue;
    }
    stack.push_back({nd.child[0], f.bits << 1, f.len + 1});
    stack.push_back({nd.child[1], (f.bits << 1) | 1, f.len + 1});
  }
  return codes;
}

// Wavelet tree over dynamic bitvectors: access, rank, select, insert and
// erase all walk one root-to-leaf code path. The shape is either the
// balanced binary code (which additionally supports count_less_than,
// since left subtrees then hold smaller values) or a Huffman shape frozen
// from initial frequencies. Structure nodes materialize lazily, so sparse
// large universes stay cheap.
class DynamicWaveletTree {
 public:
  DynamicWaveletTree() = default;

  static DynamicWaveletTree balanced(uint64_t universe) {
    DynamicWaveletTree t;
    t.universe_ = universe;
    if (universe == 0)
      throw std::invalid_argument("DynamicWaveletTree: universe must be positive");
    t.depth_ = universe <= 1 ? 0 : std::bit_width(universe - 1);
    return t;
  }

  static DynamicWaveletTree huffman_shaped(uint64_t universe,
                                           const std::vector<uint64_t>& weights) {
    if (universe == 0 || weights.size() != universe)
      throw std::invalid_argument("DynamicWaveletTree: bad universe or weights");
    DynamicWaveletTree t;
    t.universe_ = universe;
    t.codes_ = build_huffman_codes(weights);
    for (const SymbolCode& c : t.codes_)
      if (c.len > 63)
        throw std::logic_error("DynamicWaveletTree: Huffman code exceeds 63 bits");
    t.build_decode_tree();
    return t;
  }

  uint64_t size() const { return size_; }
  uint64_t universe() const { return universe_; }
  bool is_huffman() const { return !codes_.empty(); }

  void insert(uint64_t pos, uint64_t sym) {
    if (pos == 0 || pos > size_ + 1)
      throw std::out_of_range("DynamicWaveletTree::insert: position out of range");
    check_symbol(sym);
    SymbolCode code = code_of(sym);
    DNode* nd = &root_;
    for (uint32_t d = 0; d < code.len; ++d) {
      bool b = (code.bits >> (code.len - 1 - d)) & 1;
      nd->bv.insert(pos, b);
      pos = b ? nd->bv.rank1(pos) : nd->bv.rank0(pos);
      if (d + 1 < code.len) {
        auto& child = nd->child[b];
        if (!child) child = std::make_unique<DNode>();
        nd = child.get();
      }
    }
    ++size_;
  }

  void erase(uint64_t pos) {
    if (pos == 0 || pos > size_)
      throw std::out_of_range("DynamicWaveletTree::erase: position out of range");
    DNode* nd = &root_;
    while (nd && nd->bv.size() > 0) {
      bool b = nd->bv.access(pos);
      uint64_t next_pos = b ? nd->bv.rank1(pos) : nd->bv.rank0(pos);
      nd->bv.erase(pos);
      nd = nd->child[b].get();
      pos = next_pos;
    }
    --size_;
  }

  uint64_t access(uint64_t pos) const {
    if (pos == 0 || pos > size_)
      throw std::out_of_range("DynamicWaveletTree::access: position out of range");
    if (code_len_zero()) return 0;
    const DNode* nd = &root_;
    if (!is_huffman()) {
      uint64_t sym = 0;
      for (uint32_t d = 0; d < depth_; ++d) {
        bool b = nd->bv.access(pos);
        sym = (sym << 1) | uint64_t(b);
        pos = b ? nd->bv.rank1(pos) : nd->bv.rank0(pos);
        if (d + 1 < depth_) nd = nd->child[b].get();
      }
      return sym;
    }
    int32_t ci = 0;
    for (;;) {
      bool b = nd->bv.access(pos);
      pos = b ? nd->bv.rank1(pos) : nd->bv.rank0(pos);
      ci = decode_[ci].child[b];
      if (decode_[ci].sym >= 0) return uint64_t(decode_[ci].sym);
      nd = nd->child[b].get();
    }
  }

  uint64_t rank(uint64_t sym, uint64_t prefix) const {
    check_symbol(sym);
    if (prefix > size_)
      throw std::out_of_range("DynamicWaveletTree::rank: prefix exceeds length");
    SymbolCode code = code_of(sym);
    const DNode* nd = &root_;
    uint64_t p = prefix;
    for (uint32_t d = 0; d < code.len; ++d) {
      if (p == 0) return 0;
      bool b = (code.bits >> (code.len - 1 - d)) & 1;
      p = b ? nd->bv.rank1(p) : nd->bv.rank0(p);
      if (d + 1 < code.len) {
        nd = nd->child[b].get();
        if (!nd) return 0;
      }
    }
    return p;
  }

  uint64_t select(uint64_t sym, uint64_t k) const {
    check_symbol(sym);
    if (k == 0) throw std::out_of_range("DynamicWaveletTree::select: rank must be >= 1");
    SymbolCode code = code_of(sym);
    if (code.len == 0) {
      if (k > size_)
        throw std::out_of_range("DynamicWaveletTree::select: fewer occurrences than rank");
      return k;
    }
    std::vector<std::pair<const DNode*, bool>> path;
    path.reserve(code.len);
    const DNode* nd = &root_;
    for (uint32_t d = 0; d < code.len; ++d) {
      bool b = (code.bits >> (code.len - 1 - d)) & 1;
      path.emplace_back(nd, b);
      if (d + 1 < code.len) {
        nd = nd->child[b].get();
        if (!nd)
          throw std::out_of_range("DynamicWaveletTree::select: fewer occurrences than rank");
      }
    }
    auto [last, last_bit] = path.back();
    uint64_t total = last_bit ? last->bv.ones() : last->bv.zeros();
    if (k > total)
      throw std::out_of_range("DynamicWaveletTree::select: fewer occurrences than rank");
    uint64_t pos = k;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      pos = it->second ? it->first->bv.select1(pos) : it->first->bv.select0(pos);
    return pos;
  }

  // Entries below x in positions [l, r]; balanced shape only, where the
  // code order coincides with value order.
  uint64_t count_less_than(uint64_t l, uint64_t r, uint64_t x) const {
    if (is_huffman())
      throw std::logic_error("count_less_than requires the balanced shape");
    if (l == 0)
      throw std::out_of_range("DynamicWaveletTree::count_less_than: range start must be >= 1");
    if (r > size_)
      throw std::out_of_range("DynamicWaveletTree::count_less_than: range end exceeds length");
    if (l > r || x == 0) return 0;
    if (x >= universe_) return r - l + 1;
    const DNode* nd = &root_;
    uint64_t a = l - 1, b = r, count = 0;
    for (uint32_t d = 0; d < depth_ && a < b && nd; ++d) {
      uint64_t a0 = nd->bv.rank0(a);
      uint64_t b0 = nd->bv.rank0(b);
      if ((x >> (depth_ - 1 - d)) & 1) {
        count += b0 - a0;
        a -= a0;
        b -= b0;
        nd = nd->child[1].get();
      } else {
        a = a0;
        b = b0;
        nd = nd->child[0].get();
      }
    }
    return count;
  }

  uint64_t logical_bits() const {
    uint64_t bits = 0;
    visit(&root_, [&](const DNode& n) { bits += n.bv.size(); });
    return bits;
  }

  uint64_t node_count() const {
    uint64_t count = 0;
    visit(&root_, [&](const DNode&) { ++count; });
    return count;
  }

 private:
  struct DNode {
    DynamicBitVector bv;
    std::unique_ptr<DNode> child[2];
  };

  struct DecodeNode {
    int32_t child[2] = {-1, -1};
    int64_t sym = -1;
  };

  bool code_len_zero() const {
    return is_huffman() ? codes_[0].len == 0 && universe_ == 1 : depth_ == 0;
  }

  void check_symbol(uint64_t sym) const {
    if (sym >= universe_)
      throw std::invalid_argument("DynamicWaveletTree: symbol outside universe");
  }

  SymbolCode code_of(uint64_t sym) const {
    if (is_huffman()) return codes_[sym];
    return SymbolCode{sym, depth_};
  }

  void build_decode_tree() {
    decode_.clear();
    decode_.push_back(DecodeNode{});
    for (uint64_t s = 0; s < universe_; ++s) {
      const SymbolCode& c = codes_[s];
      int32_t cur = 0;
      for (uint32_t d = 0; d < c.len; ++d) {
        bool b = (c.bits >> (c.len - 1 - d)) & 1;
        int32_t slot = decode_[cur].child[b];
        if (slot < 0) {
          slot = static_cast<int32_t>(decode_.size());
          decode_.push_back(DecodeNode{});
          decode_[cur].child[b] = slot;
        }
        cur = slot;
      }
      decode_[cur].sym = static_cast<int64_t>(s);
    }
  }

  template <class F>
  void visit(const DNode* nd, F&& f) const {
    if (!nd) return;
    f(*nd);
    visit(nd->child[0].get(), f);
    visit(nd->child[1].get(), f);
  }

  uint64_t universe_ = 1;
  uint32_t depth_ = 0;             // balanced code length
  uint64_t size_ = 0;
  std::vector<SymbolCode> codes_;  // empty for the balanced shape
  std::vector<DecodeNode> decode_;
  DNode root_;
};

}  // namespace ccount

#endif  // CCOUNT_DYNAMIC_WAVELET_TREE_HPP
