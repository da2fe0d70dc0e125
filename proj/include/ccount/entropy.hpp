#ifndef CCOUNT_ENTROPY_HPP
#define CCOUNT_ENTROPY_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace ccount {

// Zeroth-order empirical entropy in bits per symbol: sum over symbols of
// (n_c / n) * log2(n / n_c).
inline double h0_from_counts(std::span<const uint64_t> counts) {
  uint64_t n = 0;
  for (uint64_t c : counts) n += c;
  if (n == 0) return 0.0;
  double h = 0.0;
  for (uint64_t c : counts) {
    if (c == 0) continue;
    double p = double(c) / double(n);
    h -= p * std::log2(p);
  }
  return h;
}

inline double h0_bits_per_symbol(std::span<const uint32_t> symbols, uint64_t sigma) {
  std::vector<uint64_t> counts(sigma, 0);
  for (uint32_t s : symbols) ++counts[s];
  return h0_from_counts(counts);
}

}  // namespace ccount

#endif  // CCOUNT_ENTROPY_HPP
