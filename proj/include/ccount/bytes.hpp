#ifndef CCOUNT_BYTES_HPP
#define CCOUNT_BYTES_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccount {

// Raised when an index file fails structural validation: bad magic,
// unsupported version, truncated payload, or checksum mismatch.
class CorruptIndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Append-only little-endian byte buffer.
class ByteWriter {
 public:
  void put_u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }

  void put_u16(uint16_t v) {
    put_u8(static_cast<uint8_t>(v));
    put_u8(static_cast<uint8_t>(v >> 8));
  }

  void put_u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) put_u8(static_cast<uint8_t>(v >> (8 * i)));
  }

  void put_u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) put_u8(static_cast<uint8_t>(v >> (8 * i)));
  }

  void put_f64(double v) { put_u64(std::bit_cast<uint64_t>(v)); }

  void put_bytes(const void* data, size_t len) {
    buf_.append(static_cast<const char*>(data), len);
  }

  void put_string(const std::string& s) {
    put_u32(static_cast<uint32_t>(s.size()));
    put_bytes(s.data(), s.size());
  }

  const std::string& buffer() const { return buf_; }
  std::string&& take() { return std::move(buf_); }
  size_t size() const { return buf_.size(); }

 private:
  std::string buf_;
};

// Bounds-checked little-endian reader over a byte buffer. Any attempt to
// read past the end throws CorruptIndexError.
class ByteReader {
 public:
  explicit ByteReader(const std::string& buf) : buf_(buf) {}

  uint8_t get_u8() {
    need(1);
    return static_cast<uint8_t>(buf_[pos_++]);
  }

  uint16_t get_u16() {
    uint16_t v = get_u8();
    return static_cast<uint16_t>(v | (uint16_t(get_u8()) << 8));
  }

  uint32_t get_u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(get_u8()) << (8 * i);
    return v;
  }

  uint64_t get_u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(get_u8()) << (8 * i);
    return v;
  }

  double get_f64() { return std::bit_cast<double>(get_u64()); }

  std::string get_string() {
    uint32_t len = get_u32();
    need(len);
    std::string s(buf_.data() + pos_, len);
    pos_ += len;
    return s;
  }

  size_t remaining() const { return buf_.size() - pos_; }
  size_t position() const { return pos_; }

 private:
  void need(size_t len) const {
    if (buf_.size() - pos_ < len) throw CorruptIndexError("truncated index data");
  }

  const std::string& buf_;
  size_t pos_ = 0;
};

// CRC-64/XZ (reflected ECMA-182 polynomial), used as the index file checksum.
inline uint64_t crc64(const void* data, size_t len) {
  static const std::array<uint64_t, 256> table = [] {
    std::array<uint64_t, 256> t{};
    for (uint64_t i = 0; i < 256; ++i) {
      uint64_t c = i;
      for (int k = 0; k < 8; ++k)
        c = (c & 1) ? (0xC96C5795D7870F42ull ^ (c >> 1)) : (c >> 1);
      t[i] = c;
    }
    return t;
  }();
  uint64_t crc = ~uint64_t(0);
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) crc = table[(crc ^ p[i]) & 0xff] ^ (crc >> 8);
  return ~crc;
}

}  // namespace ccount

#endif  // CCOUNT_BYTES_HPP
