// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: acceptance <path-to-ccount-binary> [--quick]
//
// Each criterion checks an index family against independent reference
// computations (window scans, brute-force block coverage, replayed edit
// scripts) at the tolerances stated in the lines below; all counting
// checks are exact.
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "ccount/corpus.hpp"
#include "ccount/dynamic_index.hpp"
#include "ccount/io.hpp"
#include "ccount/multisize_index.hpp"
#include "ccount/prev_occ.hpp"
#include "ccount/simple_index.hpp"

using namespace ccount;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::string ccount_bin;

void report(int number, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

// The shared corpus: 1000 strings, n <= 2048, sigma cycling through
// {1,2,4,16,64,256}, alternating uniform and Zipf(1.0) draws.
std::vector<ColorString> shared_corpus() {
  static std::vector<ColorString> corpus = [] {
    std::vector<ColorString> out;
    out.reserve(1000);
    std::mt19937_64 rng(20240901);
    const uint32_t sigmas[] = {1, 2, 4, 16, 64, 256};
    for (int t = 0; t < 1000; ++t) {
      uint32_t sigma = sigmas[t % 6];
      CorpusKind kind = (t / 6) % 2 ? CorpusKind::zipf : CorpusKind::uniform;
      uint64_t n = 1 + rng() % 2048;
      out.push_back(generate_corpus(kind, n, sigma, rng()));
    }
    return out;
  }();
  return corpus;
}

std::pair<uint64_t, uint64_t> random_range(std::mt19937_64& rng, uint64_t n) {
  uint64_t i = 1 + rng() % n;
  return {i, i + rng() % (n - i + 1)};
}

uint64_t window_distinct(const std::vector<uint32_t>& s, uint64_t i, uint64_t j,
                         int64_t excluded = -1) {
  std::unordered_set<uint32_t> seen;
  for (uint64_t q = i; q <= j; ++q)
    if (int64_t(s[q - 1]) != excluded) seen.insert(s[q - 1]);
  return seen.size();
}

// --- criterion 1 ---
void criterion_identity() {
  Timer timer;
  std::mt19937_64 rng(111);
  bool ok = true;
  std::string detail;
  for (const ColorString& s : shared_corpus()) {
    BaselineIndex idx(s);
    for (int q = 0; q < 100 && ok; ++q) {
      auto [i, j] = random_range(rng, s.size());
      uint64_t expect = naive_distinct_count(s, i, j);
      if (idx.count(i, j) != expect) {
        ok = false;
        detail = "mismatch at n=" + std::to_string(s.size());
      }
    }
    if (!ok) break;
  }
  report(1, "baseline equals the window scan on 1000 strings x 100 ranges", ok,
         timer.seconds(), detail);
}

// --- criterion 2 ---
void criterion_simple() {
  Timer timer;
  std::mt19937_64 rng(222);
  bool ok = true;
  std::string detail;
  for (const ColorString& s : shared_corpus()) {
    std::vector<SimpleBlockIndex> variants;
    for (SimpleMode mode :
         {SimpleMode::blocked, SimpleMode::small_alphabet, SimpleMode::plain}) {
      SimpleBuildOptions opt;
      opt.force_mode = mode;
      variants.emplace_back(s, opt);
    }
    for (uint64_t b : {2, 4, 16, 64}) {
      SimpleBuildOptions opt;
      opt.block_len = b;
      variants.emplace_back(s, opt);
    }
    for (int q = 0; q < 100 && ok; ++q) {
      auto [i, j] = random_range(rng, s.size());
      uint64_t expect = naive_distinct_count(s, i, j);
      for (const auto& idx : variants) {
        if (idx.count(i, j) != expect) {
          ok = false;
          detail = "mode " + std::to_string(int(idx.mode())) + " block " +
                   std::to_string(idx.block_len()) + " n " +
                   std::to_string(s.size());
          break;
        }
      }
    }
    if (!ok) break;
  }
  report(2, "fixed blocking, per-symbol rank and plain modes are exact "
            "(incl. forced block lengths 2,4,16,64)",
         ok, timer.seconds(), detail);
}

std::vector<double> delta_set(uint64_t n) {
  return {BlockLadder::default_delta(n), 0.5, 1.0, 2.0};
}

// --- criterion 3 ---
void criterion_multisize() {
  Timer timer;
  std::mt19937_64 rng(333);
  bool ok = true;
  std::string detail;
  for (const ColorString& s : shared_corpus()) {
    for (double delta : delta_set(s.size())) {
      MultiSizeIndex idx(s, delta);
      for (int q = 0; q < 100 && ok; ++q) {
        auto [i, j] = random_range(rng, s.size());
        uint64_t expect = naive_distinct_count(s, i, j);
        if (idx.count(i, j) != expect) {
          ok = false;
          detail = "delta " + std::to_string(delta) + " n " +
                   std::to_string(s.size());
        }
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  report(3, "multi-size blocking is exact for delta in {default, 0.5, 1, 2}", ok,
         timer.seconds(), detail);
}

// --- criterion 4 ---
bool grid_block_covers(uint64_t p, uint64_t q, uint64_t b, uint64_t n) {
  uint64_t h = b / 2;
  for (uint64_t start = 1; start <= n; start += h) {
    if (start <= p && q <= start + b - 1) return true;
    if (start > p) break;
  }
  return false;
}

void criterion_classification() {
  Timer timer;
  std::mt19937_64 rng(444);
  bool ok = true;
  std::string detail;
  uint64_t entries_checked = 0;
  std::vector<ColorString> corpus;
  for (const ColorString& s : shared_corpus())
    if (s.size() <= 512) corpus.push_back(s);
  for (int extra = 0; extra < 100; ++extra) {
    uint32_t sigma = 1 + rng() % 32;
    corpus.push_back(generate_corpus(extra % 2 ? CorpusKind::zipf
                                               : CorpusKind::uniform,
                                     1 + rng() % 512, sigma, rng()));
  }
  for (const ColorString& s : corpus) {
    for (double delta : delta_set(s.size())) {
      BlockLadder ladder(s.size(), delta);
      auto prev = build_prev_occ(s);
      auto cls = classify_entries(prev, ladder);
      for (uint64_t q = 1; q <= s.size() && ok; ++q) {
        uint64_t p = prev[q - 1];
        if (p == 0) {
          if (cls.labels[q - 1] != 0) ok = false;
          continue;
        }
        ++entries_checked;
        size_t assigned = cls.labels[q - 1];
        size_t minimal = 0;
        for (size_t k = 1; k < ladder.sizes().size(); ++k)
          if (grid_block_covers(p, q, ladder.sizes()[k], s.size())) {
            minimal = k;
            break;
          }
        uint64_t start = BlockLadder::leftmost_cover_start(q, ladder.sizes()[assigned]);
        if (assigned != minimal || p < start ||
            p - start >= ladder.sizes()[assigned]) {
          ok = false;
          detail = "entry q=" + std::to_string(q) + " n=" +
                   std::to_string(s.size()) + " delta=" + std::to_string(delta);
        }
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  report(4, "assigned size class is the brute-force minimum and offsets stay "
            "in range (" + std::to_string(entries_checked) + " entries)",
         ok, timer.seconds(), detail);
}

// --- criterion 5 ---
void criterion_space_bounds() {
  Timer timer;
  bool ok = true;
  std::string detail;
  for (const ColorString& s : shared_corpus()) {
    double h0 = h0_bits_per_symbol(s.symbols, s.sigma);
    for (double delta : delta_set(s.size())) {
      MultiSizeIndex idx(s, delta);
      auto prev = build_prev_occ(s);
      auto cls = classify_entries(prev, idx.ladder());
      for (uint64_t q = 1; q <= s.size() && ok; ++q) {
        uint64_t p = prev[q - 1];
        if (p == 0) continue;
        uint64_t b = idx.ladder().sizes()[cls.labels[q - 1]];
        double width = b <= 1 ? 0.0 : double(std::bit_width(b - 1));
        double bound = (1.0 + delta) * (std::log2(double(q - p)) + 1.0) + 2.0;
        if (width > bound + 1e-9) {
          ok = false;
          detail = "per-entry: width " + std::to_string(width) + " > " +
                   std::to_string(bound) + " (gap " + std::to_string(q - p) +
                   ", delta " + std::to_string(delta) + ")";
        }
      }
      double aggregate_bound =
          (1.0 + delta) * double(s.size()) * h0 + 4.0 * double(s.size());
      if (double(idx.offset_payload_bits()) > aggregate_bound + 1e-6) {
        ok = false;
        detail = "aggregate: " + std::to_string(idx.offset_payload_bits()) +
                 " bits > " + std::to_string(aggregate_bound) + " (n " +
                 std::to_string(s.size()) + ", delta " + std::to_string(delta) +
                 ")";
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  report(5, "offset widths obey (1+d)(log2 gap + 1)+2 per entry and "
            "(1+d) n H0 + 4n in total",
         ok, timer.seconds(), detail);
}

// --- criterion 6 ---
template <class Index>
double median_query_ns(const Index& idx, const std::vector<std::pair<uint64_t, uint64_t>>& ranges) {
  std::vector<double> times;
  times.reserve(ranges.size());
  uint64_t checksum = 0;
  for (const auto& [i, j] : ranges) checksum += idx.count(i, j);  // warm caches
  for (const auto& [i, j] : ranges) {
    auto t0 = Clock::now();
    checksum += idx.count(i, j);
    times.push_back(
        std::chrono::duration<double, std::nano>(Clock::now() - t0).count());
  }
  volatile uint64_t sink = checksum;
  (void)sink;
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

void criterion_scaling() {
  Timer timer;
  const uint64_t n_small = uint64_t(1) << 14;
  const uint64_t n_large = uint64_t(1) << 18;
  std::mt19937_64 rng(666);
  ColorString small = generate_corpus(CorpusKind::uniform, n_small, 64, 12345);
  ColorString large = generate_corpus(CorpusKind::uniform, n_large, 64, 54321);
  auto make_ranges = [&](uint64_t n) {
    std::vector<std::pair<uint64_t, uint64_t>> out(10000);
    for (auto& r : out) r = random_range(rng, n);
    return out;
  };
  auto ranges_small = make_ranges(n_small);
  auto ranges_large = make_ranges(n_large);

  bool ok = true;
  std::string detail;
  auto check = [&](const char* name, double t_small, double t_large) {
    double ratio = t_large / t_small;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.0fns -> %.0fns (x%.2f)", name, t_small,
                  t_large, ratio);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (ratio >= 2.5) ok = false;
  };

  {
    BaselineIndex a(small), b(large);
    check("baseline", median_query_ns(a, ranges_small),
          median_query_ns(b, ranges_large));
  }
  {
    SimpleBlockIndex a(small), b(large);
    check("simple", median_query_ns(a, ranges_small),
          median_query_ns(b, ranges_large));
  }
  {
    MultiSizeIndex a(small), b(large);
    check("multisize", median_query_ns(a, ranges_small),
          median_query_ns(b, ranges_large));
  }
  report(6, "median query time grows < 2.5x when n grows 16x (2^14 -> 2^18)", ok,
         timer.seconds(), detail);
}

// --- criterion 7 ---
void criterion_dynamic_scripts() {
  Timer timer;
  std::mt19937_64 rng(777);
  bool ok = true;
  std::string detail;
  for (int script = 0; script < 200 && ok; ++script) {
    uint64_t n0 = 1 + rng() % 512;
    uint32_t sigma = 1 + rng() % 32;
    ColorString s = generate_corpus(script % 2 ? CorpusKind::zipf
                                               : CorpusKind::uniform,
                                    n0, sigma, rng());
    s.sigma = sigma;  // zipf may not touch every symbol; keep the full alphabet
    DynamicColorIndex idx(s);
    std::vector<uint32_t> ref = s.symbols;
    const uint32_t null_sym = sigma;

    for (int op = 0; op < 300 && ok; ++op) {
      int dice = rng() % 100;
      if (dice < 40) {
        uint64_t j = 1 + rng() % ref.size();
        uint32_t y = rng() % sigma;
        idx.replace_symbol(j, y);
        ref[j - 1] = y;
        if (idx.last_rewired_entries() > 3) {
          ok = false;
          detail = "replace rewired more than 3 entries";
        }
      } else if (dice < 60) {
        std::vector<uint64_t> alive;
        for (uint64_t p = 1; p <= ref.size(); ++p)
          if (ref[p - 1] != null_sym) alive.push_back(p);
        if (alive.empty()) {
          idx.append_symbol(0);
          ref.push_back(0);
        } else {
          uint64_t j = alive[rng() % alive.size()];
          idx.erase_symbol(j);
          ref[j - 1] = null_sym;
        }
      } else if (dice < 80) {
        uint32_t c = rng() % sigma;
        idx.append_symbol(c);
        ref.push_back(c);
      } else {
        auto [i, j] = random_range(rng, ref.size());
        uint64_t expect = window_distinct(ref, i, j, null_sym);
        if (idx.count(i, j) != expect) {
          ok = false;
          detail = "count mismatch in script " + std::to_string(script);
        }
      }
    }
    if (ok) {
      ColorString final_state{ref, sigma + 1};
      if (idx.decode_prev_occ() != build_prev_occ(final_state)) {
        ok = false;
        detail = "decoded prev-occ array diverged in script " +
                 std::to_string(script);
      }
    }
  }
  report(7, "200 edit scripts x 300 ops match the null-excluding scan and "
            "decode to the rebuilt prev-occ array",
         ok, timer.seconds(), detail);
}

// --- criterion 8 ---
void criterion_dynamic_substrate() {
  Timer timer;
  bool ok = true;
  std::string detail;

  {
    std::mt19937_64 rng(888);
    DynamicBitVector bv;
    std::deque<bool> ref;
    auto ref_rank1 = [&](uint64_t prefix) {
      uint64_t c = 0;
      for (uint64_t i = 0; i < prefix; ++i) c += ref[i];
      return c;
    };
    for (int op = 0; op < 10000 && ok; ++op) {
      uint64_t n = ref.size();
      int dice = rng() % 100;
      if (n == 0 || dice < 42) {
        uint64_t pos = 1 + rng() % (n + 1);
        bool b = rng() & 1;
        bv.insert(pos, b);
        ref.insert(ref.begin() + (pos - 1), b);
      } else if (dice < 62) {
        uint64_t pos = 1 + rng() % n;
        bv.erase(pos);
        ref.erase(ref.begin() + (pos - 1));
      } else if (dice < 80) {
        uint64_t prefix = rng() % (n + 1);
        if (bv.rank1(prefix) != ref_rank1(prefix)) ok = false;
      } else {
        uint64_t ones = ref_rank1(n);
        if (ones) {
          uint64_t k = 1 + rng() % ones;
          uint64_t pos = bv.select1(k);
          if (!(pos >= 1 && pos <= n && ref[pos - 1] && ref_rank1(pos) == k))
            ok = false;
        }
      }
      uint64_t len = std::max<uint64_t>(bv.size(), 2);
      if (bv.height() > 2.0 * std::log2(double(len)) + 2.0) {
        ok = false;
        detail = "bitvector height " + std::to_string(bv.height()) + " at n " +
                 std::to_string(bv.size());
      }
    }
    if (!ok && detail.empty()) detail = "bitvector oracle mismatch";
  }

  if (ok) {
    std::mt19937_64 rng(999);
    auto wt = DynamicWaveletTree::balanced(48);
    std::vector<uint64_t> ref;
    for (int op = 0; op < 10000 && ok; ++op) {
      uint64_t n = ref.size();
      int dice = rng() % 100;
      if (n == 0 || dice < 42) {
        uint64_t pos = 1 + rng() % (n + 1);
        uint64_t sym = rng() % 48;
        wt.insert(pos, sym);
        ref.insert(ref.begin() + (pos - 1), sym);
      } else if (dice < 60) {
        uint64_t pos = 1 + rng() % n;
        wt.erase(pos);
        ref.erase(ref.begin() + (pos - 1));
      } else if (dice < 72) {
        uint64_t pos = 1 + rng() % n;
        if (wt.access(pos) != ref[pos - 1]) ok = false;
      } else if (dice < 84) {
        uint64_t sym = rng() % 48;
        uint64_t prefix = rng() % (n + 1);
        uint64_t want = 0;
        for (uint64_t i = 0; i < prefix; ++i) want += ref[i] == sym;
        if (wt.rank(sym, prefix) != want) ok = false;
      } else if (dice < 92) {
        uint64_t sym = rng() % 48;
        uint64_t total = 0;
        for (uint64_t v : ref) total += v == sym;
        if (total) {
          uint64_t k = 1 + rng() % total, want = 0, seen = 0;
          for (uint64_t i = 0; i < ref.size(); ++i)
            if (ref[i] == sym && ++seen == k) {
              want = i + 1;
              break;
            }
          if (wt.select(sym, k) != want) ok = false;
        }
      } else {
        auto [l, r] = random_range(rng, n);
        uint64_t x = rng() % 49;
        uint64_t want = 0;
        for (uint64_t q = l; q <= r; ++q) want += ref[q - 1] < x;
        if (wt.count_less_than(l, r, x) != want) ok = false;
      }
    }
    if (!ok) detail = "wavelet tree oracle mismatch";
  }

  report(8, "10000 random ops on the dynamic bitvector and wavelet tree match "
            "reference sequences; height stays logarithmic",
         ok, timer.seconds(), detail);
}

// --- criterion 9 ---
int run_quiet(const std::string& cmd) {
  int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_serialization() {
  Timer timer;
  std::mt19937_64 rng(1010);
  bool ok = true;
  std::string detail;
  for (int t = 0; t < 50 && ok; ++t) {
    uint64_t n = 1 + rng() % 1024;
    uint32_t sigma = 1 + rng() % 64;
    TokenizedInput input;
    input.text = generate_corpus(CorpusKind::uniform, n, sigma, rng());
    input.mode = AlphabetMode::tokens;
    for (uint32_t c = 0; c < input.text.sigma; ++c)
      input.dictionary.push_back(std::to_string(c));
    Scheme scheme = static_cast<Scheme>(t % 4);
    IndexFile file = make_index(input, scheme);
    IndexFile loaded = parse_index(serialize_index(file));
    for (int q = 0; q < 1000 && ok; ++q) {
      auto [i, j] = random_range(rng, n);
      if (file.count(i, j) != loaded.count(i, j)) {
        ok = false;
        detail = std::string("round trip mismatch, scheme ") + scheme_name(scheme);
      }
    }
  }

  if (ok) {
    fs::path dir = fs::temp_directory_path() /
                   ("ccount_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    fs::path input = dir / "in.txt";
    std::ofstream(input) << "abracadabra";
    fs::path idx = dir / "idx.ccs";
    if (run_quiet(ccount_bin + " build " + input.string() + " --out " +
                  idx.string() + " --scheme multisize") != 0) {
      ok = false;
      detail = "helper build failed";
    }
    auto corrupt_at = [&](size_t offset, char mask, const char* what) {
      if (!ok) return;
      fs::path bad = dir / (std::string("bad_") + what + ".ccs");
      fs::copy_file(idx, bad, fs::copy_options::overwrite_existing);
      std::fstream f(bad, std::ios::in | std::ios::out | std::ios::binary);
      f.seekg(static_cast<std::streamoff>(offset));
      char c;
      f.get(c);
      f.seekp(static_cast<std::streamoff>(offset));
      f.put(static_cast<char>(c ^ mask));
      f.close();
      int code = run_quiet(ccount_bin + " query " + bad.string() + " 1 1");
      if (code != 4) {
        ok = false;
        detail = std::string("corrupted ") + what + " exited with " +
                 std::to_string(code) + " instead of 4";
      }
    };
    corrupt_at(0, 0x01, "magic");
    corrupt_at(4, 0x11, "version");
    size_t file_size = fs::file_size(idx);
    corrupt_at(file_size - 3, 0x04, "checksum");
    corrupt_at(file_size / 2, 0x20, "payload");
    fs::remove_all(dir);
  }

  report(9, "50 random indexes round trip bit-faithfully; corrupted files exit "
            "with code 4",
         ok, timer.seconds(), detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-ccount-binary>\n");
    return 2;
  }
  ccount_bin = argv[1];

  criterion_identity();
  criterion_simple();
  criterion_multisize();
  criterion_classification();
  criterion_space_bounds();
  criterion_scaling();
  criterion_dynamic_scripts();
  criterion_dynamic_substrate();
  criterion_serialization();

  if (failures == 0) {
    std::printf("all 9 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
