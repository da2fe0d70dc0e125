// ccount: build, query, edit and benchmark distinct-colour counting indexes.
//
// Exit codes: 0 success, 2 usage error, 3 input/data error, 4 corrupt index.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccount/corpus.hpp"
#include "ccount/entropy.hpp"
#include "ccount/io.hpp"
#include "ccount/tokenizer.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from) {
  return std::chrono::duration<double, std::milli>(Clock::now() - from).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input: " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct BuildArgs {
  std::string input;
  std::string output;
  std::string scheme = "multisize";
  std::string alphabet = "bytes";
  std::optional<double> delta;
  std::optional<uint64_t> block_len;
};

int cmd_build(const BuildArgs& args) {
  auto t0 = Clock::now();
  ccount::TokenizedInput tok =
      ccount::tokenize(read_file(args.input), args.alphabet == "bytes"
                                                  ? ccount::AlphabetMode::bytes
                                                  : ccount::AlphabetMode::tokens);
  ccount::Scheme scheme = ccount::scheme_from_name(args.scheme);
  ccount::IndexFile file = ccount::make_index(tok, scheme, args.delta, args.block_len);
  ccount::save_index(file, args.output);
  double h0 = ccount::h0_bits_per_symbol(tok.text.symbols, tok.text.sigma);
  std::cout << "scheme " << args.scheme << "  n " << file.n << "  sigma "
            << file.sigma << "  H0 " << h0 << " bits/symbol  total "
            << file.space_report().total_bits() << " bits  build "
            << elapsed_ms(t0) << " ms\n";
  return 0;
}

std::pair<uint64_t, uint64_t> parse_range_line(const std::string& line,
                                               size_t line_no) {
  std::istringstream ss(line);
  uint64_t i = 0, j = 0;
  std::string extra;
  if (!(ss >> i >> j) || (ss >> extra)) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": expected two integers");
  }
  return {i, j};
}

int cmd_query(const std::string& index_path, const std::vector<std::string>& range,
              const std::string& batch_path) {
  ccount::IndexFile file = ccount::load_index(index_path);
  if (!batch_path.empty()) {
    std::ifstream in(batch_path);
    if (!in) throw std::runtime_error("cannot open batch file: " + batch_path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto [i, j] = parse_range_line(line, line_no);
      std::cout << file.count(i, j) << "\n";
    }
    return 0;
  }
  if (range.size() != 2)
    throw CLI::ValidationError("query", "expected endpoints i j or --batch");
  auto [i, j] = parse_range_line(range[0] + " " + range[1], 1);
  std::cout << file.count(i, j) << "\n";
  return 0;
}

int cmd_edit(const std::string& index_path, const std::string& script_path,
             const std::string& out_path) {
  ccount::IndexFile file = ccount::load_index(index_path);
  ccount::AlphabetMode mode = file.alphabet_mode;
  auto dictionary = file.dictionary;
  ccount::DynamicColorIndex idx = ccount::to_dynamic(std::move(file));

  std::ifstream in(script_path);
  if (!in) throw std::runtime_error("cannot open script: " + script_path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string op;
    if (!(ss >> op)) continue;  // blank line
    auto want = [&](int count) {
      std::vector<uint64_t> args(count);
      std::string extra;
      bool ok = true;
      for (int a = 0; a < count; ++a)
        if (!(ss >> args[a])) ok = false;
      if (!ok || (ss >> extra))
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": malformed '" + op + "' operation");
      return args;
    };
    try {
      if (op == "R") {
        auto a = want(2);
        idx.replace_symbol(a[0], a[1]);
      } else if (op == "D") {
        auto a = want(1);
        idx.erase_symbol(a[0]);
      } else if (op == "A") {
        auto a = want(1);
        idx.append_symbol(a[0]);
      } else if (op == "Q") {
        auto a = want(2);
        std::cout << idx.count(a[0], a[1]) << "\n";
      } else {
        throw std::runtime_error("unknown operation '" + op + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::out_of_range& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (!out_path.empty()) {
    ccount::IndexFile out;
    out.scheme = ccount::Scheme::dynamic_snapshot;
    out.n = idx.size();
    out.sigma = idx.sigma();
    out.alphabet_mode = mode;
    out.dictionary = std::move(dictionary);
    out.index = std::move(idx);
    ccount::save_index(out, out_path);
  }
  return 0;
}

int cmd_stats(const std::string& index_path) {
  ccount::IndexFile file = ccount::load_index(index_path);
  ccount::SpaceReport rep = file.space_report();
  rep.print_table(std::cout);
  std::cout << "\n";
  rep.print_machine(std::cout);
  return 0;
}

struct BenchArgs {
  std::string csv;
  uint64_t seed = 1;
  std::vector<uint64_t> n_list{1024, 4096, 16384};
  uint32_t sigma = 64;
  std::vector<std::string> schemes{"baseline", "simple", "multisize"};
  std::vector<std::string> corpora{"uniform", "zipf", "unary", "distinct"};
  uint64_t queries = 10000;
  uint64_t repeats = 5;
};

int cmd_bench(const BenchArgs& args) {
  std::ostream* os = &std::cout;
  std::ofstream file_out;
  if (!args.csv.empty()) {
    file_out.open(args.csv, std::ios::trunc);
    if (!file_out) throw std::runtime_error("cannot open csv output: " + args.csv);
    os = &file_out;
  }
  *os << "corpus,scheme,n,sigma,delta,queries,repeats,build_ms_median,"
         "query_us_median,bits_total,bits_per_symbol,h0_bits_per_symbol\n";
  for (const std::string& corpus : args.corpora) {
    ccount::CorpusKind kind = ccount::corpus_kind_from_name(corpus);
    for (uint64_t n : args.n_list) {
      uint64_t corpus_seed = args.seed * 1000003 + n * 13 + uint64_t(kind);
      ccount::ColorString text =
          ccount::generate_corpus(kind, n, args.sigma, corpus_seed);
      double h0 = ccount::h0_bits_per_symbol(text.symbols, text.sigma);
      std::mt19937_64 qrng(corpus_seed ^ 0x9e3779b97f4a7c15ull);
      std::vector<std::pair<uint64_t, uint64_t>> ranges(args.queries);
      for (auto& r : ranges) {
        uint64_t i = 1 + qrng() % n;
        r = {i, i + qrng() % (n - i + 1)};
      }
      for (const std::string& scheme_str : args.schemes) {
        ccount::Scheme scheme = ccount::scheme_from_name(scheme_str);
        ccount::TokenizedInput tok;
        tok.text = text;
        tok.mode = ccount::AlphabetMode::tokens;
        std::vector<double> build_ms, query_us;
        uint64_t bits_total = 0;
        uint64_t checksum = 0;
        for (uint64_t rep = 0; rep < args.repeats; ++rep) {
          auto b0 = Clock::now();
          ccount::IndexFile idx = ccount::make_index(tok, scheme);
          build_ms.push_back(elapsed_ms(b0));
          auto q0 = Clock::now();
          for (const auto& [i, j] : ranges) checksum += idx.count(i, j);
          query_us.push_back(elapsed_ms(q0) * 1000.0 / double(args.queries));
          if (rep == 0) bits_total = idx.space_report().total_bits();
        }
        volatile uint64_t sink = checksum;  // keep the query loop honest
        (void)sink;
        double delta = (scheme == ccount::Scheme::multisize ||
                        scheme == ccount::Scheme::dynamic_snapshot)
                           ? ccount::BlockLadder::default_delta(n)
                           : 0.0;
        *os << corpus << ',' << scheme_str << ',' << n << ',' << text.sigma << ','
            << delta << ',' << args.queries << ',' << args.repeats << ','
            << median(build_ms) << ',' << median(query_us) << ',' << bits_total
            << ',' << double(bits_total) / double(n) << ',' << h0 << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distinct-colour substring counting indexes"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "build an index from a file");
  build->add_option("input", build_args.input, "input file")->required();
  build->add_option("--out", build_args.output, "output index path")->required();
  build->add_option("--scheme", build_args.scheme, "index scheme")
      ->check(CLI::IsMember({"baseline", "simple", "multisize", "dynamic"}));
  build->add_option("--alphabet", build_args.alphabet, "symbol source")
      ->check(CLI::IsMember({"bytes", "tokens"}));
  auto* delta_opt =
      build->add_option("--delta", build_args.delta, "block size growth rate")
          ->check(CLI::PositiveNumber);
  auto* blocklen_opt =
      build->add_option("--block-len", build_args.block_len, "fixed block length")
          ->check(CLI::PositiveNumber);

  std::string query_index, batch_path;
  std::vector<std::string> query_range;
  auto* query = app.add_subcommand("query", "count distinct colours in ranges");
  query->add_option("index", query_index, "index file")->required();
  query->add_option("range", query_range, "endpoints i j")->expected(0, 2);
  query->add_option("--batch", batch_path, "file of 'i j' lines");

  std::string edit_index, script_path, edit_out;
  auto* edit = app.add_subcommand("edit", "apply an edit script");
  edit->add_option("index", edit_index, "index file (multisize or dynamic)")
      ->required();
  edit->add_option("--script", script_path, "edit script path")->required();
  edit->add_option("--out", edit_out, "write the edited snapshot here");

  std::string stats_index;
  auto* stats = app.add_subcommand("stats", "print the space report");
  stats->add_option("index", stats_index, "index file")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "benchmark schemes on synthetic corpora");
  bench->add_option("--csv", bench_args.csv, "write CSV here (default stdout)");
  bench->add_option("--seed", bench_args.seed, "corpus seed");
  bench->add_option("--n-list", bench_args.n_list, "string lengths");
  bench->add_option("--sigma", bench_args.sigma, "alphabet size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--schemes", bench_args.schemes, "schemes to run");
  bench->add_option("--corpora", bench_args.corpora, "corpus kinds");
  bench->add_option("--queries", bench_args.queries, "queries per run")
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeats", bench_args.repeats, "timing repeats (median)")
      ->check(CLI::Range(uint64_t(1), uint64_t(1000)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) {
      ccount::Scheme scheme = ccount::scheme_from_name(build_args.scheme);
      if (*delta_opt && scheme != ccount::Scheme::multisize &&
          scheme != ccount::Scheme::dynamic_snapshot) {
        std::cerr << "--delta requires --scheme multisize or dynamic\n";
        return 2;
      }
      if (*blocklen_opt && scheme != ccount::Scheme::simple) {
        std::cerr << "--block-len requires --scheme simple\n";
        return 2;
      }
      return cmd_build(build_args);
    }
    if (query->parsed()) {
      if (query_range.empty() && batch_path.empty()) {
        std::cerr << "query: give endpoints i j or --batch\n";
        return 2;
      }
      return cmd_query(query_index, query_range, batch_path);
    }
    if (edit->parsed()) return cmd_edit(edit_index, script_path, edit_out);
    if (stats->parsed()) return cmd_stats(stats_index);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const ccount::CorruptIndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
