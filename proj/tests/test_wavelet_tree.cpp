#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccount/wavelet_tree.hpp"
#include "oracles.hpp"

using ccount::WaveletTree;

namespace {

WaveletTree make(std::vector<uint64_t> seq, uint64_t universe) {
  return WaveletTree(seq, universe);
}

uint64_t scan_less_than(const std::vector<uint64_t>& seq, uint64_t l, uint64_t r,
                        uint64_t x) {
  uint64_t c = 0;
  for (uint64_t q = l; q <= r && q <= seq.size(); ++q) c += seq[q - 1] < x;
  return c;
}

uint64_t scan_rank(const std::vector<uint64_t>& seq, uint64_t sym, uint64_t prefix) {
  uint64_t c = 0;
  for (uint64_t q = 1; q <= prefix; ++q) c += seq[q - 1] == sym;
  return c;
}

}  // namespace

TEST_CASE("fixed sequence") {
  std::vector<uint64_t> seq{3, 1, 4, 1, 5};
  WaveletTree wt = make(seq, 8);
  CHECK(wt.size() == 5);
  CHECK(wt.access(3) == 4);
  CHECK(wt.access(1) == 3);
  CHECK(wt.count_less_than(2, 4, 4) == 2);
  CHECK(wt.count_less_than(5, 4, 3) == 0);
  CHECK(wt.count_less_than(1, 5, 8) == 5);
  CHECK(wt.rank(1, 4) == 2);
  CHECK(wt.rank(6, 5) == 0);
  CHECK(wt.rank(1, 0) == 0);
  CHECK(wt.select(1, 2) == 4);
  CHECK(wt.select(5, 1) == 5);
  CHECK_THROWS_AS(wt.select(1, 3), std::out_of_range);
  CHECK_THROWS_AS(wt.count_less_than(1, 6, 2), std::out_of_range);
  CHECK_THROWS_AS(wt.rank(9, 1), std::invalid_argument);
}

TEST_CASE("empty and unary universes") {
  WaveletTree empty = make({}, 1);
  CHECK(empty.size() == 0);
  CHECK(empty.depth() == 0);

  WaveletTree flat = make({0, 0, 0}, 1);
  CHECK(flat.depth() == 0);
  CHECK(flat.rank(0, 3) == 3);
  CHECK(flat.access(2) == 0);
  CHECK(flat.select(0, 3) == 3);
  CHECK(flat.count_less_than(1, 3, 1) == 3);
  CHECK(flat.count_less_than(1, 3, 0) == 0);

  WaveletTree singleton = make({7}, 8);
  CHECK(singleton.select(7, 1) == 1);
  WaveletTree twos = make({2, 2}, 3);
  CHECK(twos.select(2, 2) == 2);
}

TEST_CASE("build validation") {
  CHECK_THROWS_AS(make({3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(make({0}, 0), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random sequences") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    uint64_t n = 1 + rng() % 4096;
    uint64_t universe = 1 + rng() % 1024;
    std::vector<uint64_t> seq(n);
    for (auto& v : seq) v = rng() % universe;
    WaveletTree wt = make(seq, universe);
    for (int q = 0; q < 100; ++q) {
      auto [l, r] = oracle::random_range(rng, n);
      uint64_t x = rng() % (universe + 1);
      CHECK(wt.count_less_than(l, r, x) == scan_less_than(seq, l, r, x));
    }
  }
}

TEST_CASE("rank difference equals per-symbol range count") {
  std::mt19937_64 rng(5150);
  uint64_t n = 2000, universe = 37;
  std::vector<uint64_t> seq(n);
  for (auto& v : seq) v = rng() % universe;
  WaveletTree wt = make(seq, universe);
  for (int q = 0; q < 500; ++q) {
    auto [l, r] = oracle::random_range(rng, n);
    uint64_t x = rng() % universe;
    uint64_t by_threshold = wt.count_less_than(l, r, x + 1) - wt.count_less_than(l, r, x);
    uint64_t by_rank = wt.rank(x, r) - wt.rank(x, l - 1);
    CHECK(by_threshold == by_rank);
  }
}

TEST_CASE("access, rank and select reproduce the sequence") {
  std::mt19937_64 rng(31337);
  uint64_t n = 3000, universe = 300;
  std::vector<uint64_t> seq(n);
  for (auto& v : seq) v = rng() % universe;
  WaveletTree wt = make(seq, universe);
  for (uint64_t q = 1; q <= n; ++q) CHECK(wt.access(q) == seq[q - 1]);
  for (int t = 0; t < 2000; ++t) {
    uint64_t sym = rng() % universe;
    uint64_t prefix = rng() % (n + 1);
    CHECK(wt.rank(sym, prefix) == scan_rank(seq, sym, prefix));
  }
  for (uint64_t sym = 0; sym < universe; ++sym) {
    uint64_t total = wt.rank(sym, n);
    for (uint64_t k = 1; k <= total; ++k) {
      uint64_t pos = wt.select(sym, k);
      CHECK(seq[pos - 1] == sym);
      CHECK(wt.rank(sym, pos) == k);
    }
    CHECK_THROWS_AS(wt.select(sym, total + 1), std::out_of_range);
  }
}

TEST_CASE("payload is exactly n times code width") {
  std::mt19937_64 rng(8);
  for (uint64_t universe : {1ull, 2ull, 3ull, 8ull, 9ull, 1000ull}) {
    uint64_t n = 500;
    std::vector<uint64_t> seq(n);
    for (auto& v : seq) v = rng() % universe;
    WaveletTree wt = make(seq, universe);
    uint64_t width = universe <= 1 ? 0 : std::bit_width(universe - 1);
    CHECK(wt.payload_bits() == n * width);
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(12);
  std::vector<uint64_t> seq(700);
  for (auto& v : seq) v = rng() % 50;
  WaveletTree wt = make(seq, 50);
  ccount::ByteWriter w;
  wt.save(w);
  std::string buf = w.take();
  ccount::ByteReader r(buf);
  WaveletTree loaded = WaveletTree::load(r);
  CHECK(loaded.size() == wt.size());
  CHECK(loaded.universe() == wt.universe());
  for (uint64_t q = 1; q <= wt.size(); ++q) CHECK(loaded.access(q) == wt.access(q));
}
