#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccount/dynamic_index.hpp"
#include "ccount/multisize_index.hpp"
#include "ccount/prev_occ.hpp"
#include "ccount/simple_index.hpp"
#include "oracles.hpp"

using namespace ccount;

// Every scheme answers the same question; before any edits they must agree
// everywhere, not just against the oracle on sampled ranges.
TEST_CASE("all schemes agree on ten thousand random queries") {
  std::mt19937_64 rng(0xa9ee);
  uint64_t n = 4096;
  uint32_t sigma = 64;
  auto syms = oracle::random_symbols(rng, n, sigma);
  ColorString s{syms, sigma};

  BaselineIndex baseline(s);
  SimpleBlockIndex simple(s);
  MultiSizeIndex multi(s);
  DynamicColorIndex dynamic(s);

  for (int q = 0; q < 10000; ++q) {
    auto [i, j] = oracle::random_range(rng, n);
    uint64_t expect = baseline.count(i, j);
    CHECK(simple.count(i, j) == expect);
    CHECK(multi.count(i, j) == expect);
    CHECK(dynamic.count(i, j) == expect);
  }
}

TEST_CASE("agreement holds on small and skewed strings") {
  std::mt19937_64 rng(0xbee);
  for (int t = 0; t < 25; ++t) {
    uint64_t n = 1 + rng() % 128;
    uint32_t sigma = 1 + rng() % 8;
    auto syms = oracle::random_symbols(rng, n, sigma);
    ColorString s{syms, sigma};
    BaselineIndex baseline(s);
    SimpleBlockIndex simple(s);
    MultiSizeIndex multi(s);
    DynamicColorIndex dynamic(s);
    for (uint64_t i = 1; i <= n; ++i)
      for (uint64_t j = i; j <= n; ++j) {
        uint64_t expect = naive_distinct_count(s, i, j);
        CHECK(baseline.count(i, j) == expect);
        CHECK(simple.count(i, j) == expect);
        CHECK(multi.count(i, j) == expect);
        CHECK(dynamic.count(i, j) == expect);
      }
  }
}
