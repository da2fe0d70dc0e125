#include "ccount/corpus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace ccount {

namespace {

ColorString uniform_string(uint64_t n, uint32_t sigma, std::mt19937_64& rng) {
  ColorString s;
  s.sigma = sigma;
  s.symbols.resize(n);
  for (auto& v : s.symbols) v = static_cast<uint32_t>(rng() % sigma);
  return s;
}

ColorString zipf_string(uint64_t n, uint32_t sigma, std::mt19937_64& rng) {
  std::vector<double> cdf(sigma);
  double acc = 0.0;
  for (uint32_t r = 0; r < sigma; ++r) {
    acc += 1.0 / double(r + 1);
    cdf[r] = acc;
  }
  std::uniform_real_distribution<double> uni(0.0, acc);
  ColorString s;
  s.sigma = sigma;
  s.symbols.resize(n);
  for (auto& v : s.symbols) {
    double u = uni(rng);
    v = static_cast<uint32_t>(std::lower_bound(cdf.begin(), cdf.end(), u) -
                              cdf.begin());
    if (v >= sigma) v = sigma - 1;
  }
  return s;
}

}  // namespace

ColorString generate_corpus(CorpusKind kind, uint64_t n, uint32_t sigma,
                            uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_corpus: n must be positive");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case CorpusKind::uniform:
      if (sigma == 0) throw std::invalid_argument("generate_corpus: sigma must be positive");
      return uniform_string(n, sigma, rng);
    case CorpusKind::zipf:
      if (sigma == 0) throw std::invalid_argument("generate_corpus: sigma must be positive");
      return zipf_string(n, sigma, rng);
    case CorpusKind::unary:
      return ColorString{std::vector<uint32_t>(n, 0), 1};
    case CorpusKind::all_distinct: {
      ColorString s;
      s.sigma = static_cast<uint32_t>(n);
      s.symbols.resize(n);
      for (uint64_t i = 0; i < n; ++i) s.symbols[i] = static_cast<uint32_t>(i);
      return s;
    }
  }
  throw std::invalid_argument("generate_corpus: unknown corpus kind");
}

CorpusKind corpus_kind_from_name(const std::string& name) {
  if (name == "uniform") return CorpusKind::uniform;
  if (name == "zipf") return CorpusKind::zipf;
  if (name == "unary") return CorpusKind::unary;
  if (name == "distinct") return CorpusKind::all_distinct;
  throw std::invalid_argument("unknown corpus kind: " + name);
}

const char* corpus_kind_name(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::uniform: return "uniform";
    case CorpusKind::zipf: return "zipf";
    case CorpusKind::unary: return "unary";
    case CorpusKind::all_distinct: return "distinct";
  }
  return "unknown";
}

}  // namespace ccount
