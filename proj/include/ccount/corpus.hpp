#ifndef CCOUNT_CORPUS_HPP
#define CCOUNT_CORPUS_HPP

#include <cstdint>
#include <string>

#include "ccount/prev_occ.hpp"

namespace ccount {

enum class CorpusKind { uniform, zipf, unary, all_distinct };

// Deterministic synthetic strings for tests and benchmarks. `zipf` draws
// symbols with probability proportional to 1/rank (exponent 1.0); `unary`
// ignores sigma; `all_distinct` uses sigma = n.
ColorString generate_corpus(CorpusKind kind, uint64_t n, uint32_t sigma, uint64_t seed);

CorpusKind corpus_kind_from_name(const std::string& name);
const char* corpus_kind_name(CorpusKind kind);

}  // namespace ccount

#endif  // CCOUNT_CORPUS_HPP
