#include "ccount/io.hpp"

#include <fstream>
#include <stdexcept>

#include "ccount/bytes.hpp"
#include "ccount/entropy.hpp"

namespace ccount {

namespace {

constexpr char kMagic[4] = {'C', 'C', 'S', '1'};
constexpr uint16_t kVersion = 1;

void write_dictionary(ByteWriter& out, const IndexFile& file) {
  out.put_u32(static_cast<uint32_t>(file.dictionary.size()));
  for (const auto& entry : file.dictionary) out.put_string(entry);
}

void read_dictionary(ByteReader& in, IndexFile& file) {
  uint32_t count = in.get_u32();
  file.dictionary.clear();
  file.dictionary.reserve(count);
  for (uint32_t i = 0; i < count; ++i) file.dictionary.push_back(in.get_string());
}

double dynamic_h0(const DynamicColorIndex& idx) {
  std::vector<uint64_t> counts(idx.sigma() + 1, 0);
  const auto& st = idx.symbol_tree();
  for (uint64_t c = 0; c <= idx.sigma(); ++c) counts[c] = st.rank(c, idx.size());
  return h0_from_counts(counts);
}

}  // namespace

Scheme scheme_from_name(const std::string& name) {
  if (name == "baseline") return Scheme::baseline;
  if (name == "simple") return Scheme::simple;
  if (name == "multisize") return Scheme::multisize;
  if (name == "dynamic") return Scheme::dynamic_snapshot;
  throw std::invalid_argument("unknown scheme: " + name);
}

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::baseline: return "baseline";
    case Scheme::simple: return "simple";
    case Scheme::multisize: return "multisize";
    case Scheme::dynamic_snapshot: return "dynamic";
  }
  return "unknown";
}

uint64_t IndexFile::count(uint64_t i, uint64_t j) const {
  return std::visit([&](const auto& idx) { return idx.count(i, j); }, index);
}

SpaceReport IndexFile::space_report() const {
  SpaceReport rep;
  rep.scheme = scheme_name(scheme);
  rep.n = n;
  rep.sigma = sigma;
  switch (scheme) {
    case Scheme::baseline: {
      const auto& idx = std::get<BaselineIndex>(index);
      rep.components.emplace_back("prev-occ tree payload", idx.tree().payload_bits());
      rep.components.emplace_back("prev-occ tree directories",
                                  idx.tree().directory_bits());
      rep.metrics.emplace_back("n*H0(s) bits", double(n) * idx.h0());
      rep.metrics.emplace_back("H0(s) bits/symbol", idx.h0());
      break;
    }
    case Scheme::simple: {
      const auto& idx = std::get<SimpleBlockIndex>(index);
      switch (idx.mode()) {
        case SimpleMode::blocked:
          rep.components.emplace_back("marker payload", idx.marker().payload_bits());
          rep.components.emplace_back("marker directories",
                                      idx.marker().directory_bits());
          rep.components.emplace_back("local offsets payload",
                                      idx.local_tree().payload_bits());
          rep.components.emplace_back("local offsets directories",
                                      idx.local_tree().directory_bits());
          rep.components.emplace_back("full positions payload",
                                      idx.global_tree().payload_bits());
          rep.components.emplace_back("full positions directories",
                                      idx.global_tree().directory_bits());
          rep.metrics.emplace_back("block length", double(idx.block_len()));
          break;
        case SimpleMode::small_alphabet:
          rep.components.emplace_back("symbol tree payload",
                                      idx.symbol_tree().payload_bits());
          rep.components.emplace_back("symbol tree directories",
                                      idx.symbol_tree().directory_bits());
          break;
        case SimpleMode::plain:
          rep.components.emplace_back("prev-occ tree payload",
                                      idx.global_tree().payload_bits());
          rep.components.emplace_back("prev-occ tree directories",
                                      idx.global_tree().directory_bits());
          break;
      }
      rep.metrics.emplace_back("n*H0(s) bits", double(n) * idx.h0());
      rep.metrics.emplace_back("H0(s) bits/symbol", idx.h0());
      break;
    }
    case Scheme::multisize: {
      const auto& idx = std::get<MultiSizeIndex>(index);
      rep.components.emplace_back("class labels payload",
                                  idx.label_tree().payload_bits());
      rep.components.emplace_back("class labels directories",
                                  idx.label_tree().directory_bits());
      uint64_t off_dirs = 0;
      for (size_t k = 1; k < idx.offset_trees().size(); ++k) {
        const auto& t = idx.offset_trees()[k];
        off_dirs += t.directory_bits();
        if (t.size() == 0) continue;
        rep.components.emplace_back(
            "offsets payload (b=" + std::to_string(idx.ladder().sizes()[k]) + ")",
            t.payload_bits());
      }
      rep.components.emplace_back("offsets directories", off_dirs);
      rep.metrics.emplace_back("delta", idx.delta());
      rep.metrics.emplace_back("ladder classes", double(idx.ladder().num_classes()));
      rep.metrics.emplace_back("n*H0(s) bits", double(n) * idx.h0());
      rep.metrics.emplace_back("H0(s) bits/symbol", idx.h0());
      rep.metrics.emplace_back("offset bound (1+d)nH0+4n bits",
                               (1.0 + idx.delta()) * double(n) * idx.h0() +
                                   4.0 * double(n));
      std::vector<uint64_t> label_counts(idx.ladder().num_classes(), 0);
      for (size_t k = 0; k < label_counts.size(); ++k)
        label_counts[k] = idx.label_tree().rank(k, idx.size());
      rep.metrics.emplace_back("H0(labels) bits/symbol",
                               h0_from_counts(label_counts));
      break;
    }
    case Scheme::dynamic_snapshot: {
      const auto& idx = std::get<DynamicColorIndex>(index);
      rep.components.emplace_back("symbol tree bits", idx.symbol_tree().logical_bits());
      rep.components.emplace_back("class labels bits", idx.label_tree().logical_bits());
      uint64_t off = 0;
      for (const auto& t : idx.offset_trees()) off += t.logical_bits();
      rep.components.emplace_back("offsets bits", off);
      rep.metrics.emplace_back("delta", idx.delta());
      double h0 = dynamic_h0(idx);
      rep.metrics.emplace_back("n*H0(s) bits", double(n) * h0);
      rep.metrics.emplace_back("H0(s) bits/symbol", h0);
      break;
    }
  }
  return rep;
}

IndexFile make_index(const TokenizedInput& input, Scheme scheme,
                     std::optional<double> delta, std::optional<uint64_t> block_len) {
  IndexFile file;
  file.scheme = scheme;
  file.n = input.text.size();
  file.sigma = input.text.sigma;
  file.alphabet_mode = input.mode;
  file.dictionary = input.dictionary;
  switch (scheme) {
    case Scheme::baseline:
      file.index = BaselineIndex(input.text);
      break;
    case Scheme::simple: {
      SimpleBuildOptions opts;
      opts.block_len = block_len;
      file.index = SimpleBlockIndex(input.text, opts);
      break;
    }
    case Scheme::multisize:
      file.index = MultiSizeIndex(input.text, delta);
      break;
    case Scheme::dynamic_snapshot:
      file.index = DynamicColorIndex(input.text, delta);
      break;
  }
  return file;
}

std::string serialize_index(const IndexFile& file) {
  ByteWriter out;
  out.put_bytes(kMagic, 4);
  out.put_u16(kVersion);
  out.put_u8(static_cast<uint8_t>(file.scheme));
  out.put_u8(static_cast<uint8_t>(file.alphabet_mode));
  out.put_u64(file.n);
  out.put_u64(file.sigma);
  write_dictionary(out, file);
  switch (file.scheme) {
    case Scheme::baseline:
      std::get<BaselineIndex>(file.index).save(out);
      break;
    case Scheme::simple:
      std::get<SimpleBlockIndex>(file.index).save(out);
      break;
    case Scheme::multisize:
      std::get<MultiSizeIndex>(file.index).save(out);
      break;
    case Scheme::dynamic_snapshot: {
      const auto& idx = std::get<DynamicColorIndex>(file.index);
      out.put_f64(idx.delta());
      idx.ladder().save(out);
      auto symbols = idx.current_symbols();
      out.put_u64(symbols.size());
      for (uint32_t v : symbols) out.put_u32(v);
      break;
    }
  }
  uint64_t checksum = crc64(out.buffer().data(), out.buffer().size());
  out.put_u64(checksum);
  return out.take();
}

IndexFile parse_index(const std::string& bytes) {
  if (bytes.size() < 4 + 2 + 1 + 1 + 8 + 8 + 8)
    throw CorruptIndexError("index file too short");
  uint64_t stored = 0;
  for (int i = 0; i < 8; ++i)
    stored |= uint64_t(uint8_t(bytes[bytes.size() - 8 + i])) << (8 * i);
  if (crc64(bytes.data(), bytes.size() - 8) != stored)
    throw CorruptIndexError("index checksum mismatch");

  std::string body(bytes.data(), bytes.size() - 8);
  ByteReader in(body);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(in.get_u8());
  if (magic[0] != kMagic[0] || magic[1] != kMagic[1] || magic[2] != kMagic[2] ||
      magic[3] != kMagic[3])
    throw CorruptIndexError("bad index magic");
  if (in.get_u16() != kVersion) throw CorruptIndexError("unsupported index version");

  IndexFile file;
  uint8_t scheme = in.get_u8();
  if (scheme > 3) throw CorruptIndexError("unknown index scheme");
  file.scheme = static_cast<Scheme>(scheme);
  uint8_t mode = in.get_u8();
  if (mode > 1) throw CorruptIndexError("unknown alphabet mode");
  file.alphabet_mode = static_cast<AlphabetMode>(mode);
  file.n = in.get_u64();
  file.sigma = in.get_u64();
  read_dictionary(in, file);

  try {
    switch (file.scheme) {
      case Scheme::baseline:
        file.index = BaselineIndex::load(in, file.n, file.sigma);
        break;
      case Scheme::simple:
        file.index = SimpleBlockIndex::load(in, file.n, file.sigma);
        break;
      case Scheme::multisize:
        file.index = MultiSizeIndex::load(in, file.n, file.sigma);
        break;
      case Scheme::dynamic_snapshot: {
        double delta = in.get_f64();
        BlockLadder ladder = BlockLadder::load(in);
        uint64_t count = in.get_u64();
        if (count != file.n)
          throw CorruptIndexError("snapshot length does not match header");
        std::vector<uint32_t> symbols(count);
        for (auto& v : symbols) v = in.get_u32();
        file.index =
            DynamicColorIndex::restore(file.sigma, delta, std::move(ladder), symbols);
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw CorruptIndexError(std::string("inconsistent index payload: ") + e.what());
  }
  return file;
}

void save_index(const IndexFile& file, const std::string& path) {
  std::string bytes = serialize_index(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

IndexFile load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return parse_index(bytes);
}

DynamicColorIndex to_dynamic(IndexFile&& file) {
  switch (file.scheme) {
    case Scheme::dynamic_snapshot:
      return std::get<DynamicColorIndex>(std::move(file.index));
    case Scheme::multisize: {
      const auto& idx = std::get<MultiSizeIndex>(file.index);
      auto prev = idx.decode_prev_occ();
      std::vector<uint32_t> symbols(prev.size());
      uint32_t next_color = 0;
      for (uint64_t q = 1; q <= prev.size(); ++q)
        symbols[q - 1] = prev[q - 1] ? symbols[prev[q - 1] - 1] : next_color++;
      if (next_color != file.sigma)
        throw CorruptIndexError("decoded alphabet does not match header");
      ColorString s{std::move(symbols), next_color};
      return DynamicColorIndex(s, idx.delta());
    }
    default:
      throw std::invalid_argument(
          "index scheme does not support edits (build with multisize or dynamic)");
  }
}

}  // namespace ccount
