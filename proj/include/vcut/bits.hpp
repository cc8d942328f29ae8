#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcut {

// Number of bits needed to write any value in [0, n], i.e. ceil(log2(n+1)).
inline int id_width(std::int64_t n) {
  int w = 1;
  while ((std::int64_t{1} << w) <= n) ++w;
  return w;
}

class BitError : public std::runtime_error {
 public:
  explicit BitError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Bits are stored MSB-first: append order i maps to bit (63 - i%64) of word i/64,
// so the hex dump reads in append order nibble by nibble.
inline void put_bits(std::uint64_t* words, std::uint32_t pos, std::uint64_t value,
                     int width) {
  for (int b = width - 1; b >= 0; --b, ++pos) {
    if ((value >> b) & 1u)
      words[pos >> 6] |= std::uint64_t{1} << (63 - (pos & 63));
  }
}

inline std::uint64_t get_bits(const std::uint64_t* words, std::uint32_t pos, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b, ++pos)
    v = (v << 1) | ((words[pos >> 6] >> (63 - (pos & 63))) & 1u);
  return v;
}

inline void check_width(std::uint64_t value, int width, const char* what) {
  if (width < 0 || width > 64)
    throw BitError(std::string(what) + ": field width " + std::to_string(width) +
                   " out of range");
  if (width < 64 && (value >> width) != 0)
    throw BitError(std::string(what) + ": value " + std::to_string(value) +
                   " does not fit in " + std::to_string(width) + " bits");
}

inline std::string hex_of(const std::uint64_t* words, std::uint32_t nbits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  std::uint32_t nibbles = (nbits + 3) / 4;
  out.reserve(nibbles);
  for (std::uint32_t i = 0; i < nibbles; ++i) {
    std::uint32_t pos = 4 * i;
    int take = static_cast<int>(std::min<std::uint32_t>(4, nbits - pos));
    // Partial trailing nibble is left-aligned, matching the bit stream order.
    std::uint64_t v = get_bits(words, pos, take) << (4 - take);
    out.push_back(digits[v]);
  }
  return out;
}

}  // namespace detail

// Growable bit string for node outputs and extra inputs.
class BitVec {
 public:
  BitVec() = default;

  void append_bits(std::uint64_t value, int width) {
    detail::check_width(value, width, "BitVec::append_bits");
    std::uint32_t need = (nbits_ + width + 63) / 64;
    if (words_.size() < need) words_.resize(need, 0);
    detail::put_bits(words_.data(), nbits_, value, width);
    nbits_ += width;
  }
  void append_flag(bool b) { append_bits(b ? 1 : 0, 1); }

  std::uint32_t size_bits() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }
  std::uint64_t read_bits(std::uint32_t pos, int width) const {
    if (pos + width > nbits_) throw BitError("BitVec::read_bits: past end");
    return detail::get_bits(words_.data(), pos, width);
  }
  std::string hex() const { return detail::hex_of(words_.data(), nbits_); }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

 private:
  std::uint32_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Hard cap on per-message size, enforced at append time. The configured
// bandwidth may be larger; payloads just cannot grow past this.
inline constexpr int kMaxMessageBits = 128;

// Fixed-capacity message payload. Kept inline and trivially copyable because the
// simulator moves millions of these per run.
struct Payload {
  std::uint16_t nbits = 0;
  std::array<std::uint64_t, 2> w{0, 0};

  void append_bits(std::uint64_t value, int width) {
    detail::check_width(value, width, "Payload::append_bits");
    if (nbits + width > kMaxMessageBits)
      throw BitError("Payload::append_bits: exceeds " +
                     std::to_string(kMaxMessageBits) + " bit capacity");
    detail::put_bits(w.data(), nbits, value, width);
    nbits = static_cast<std::uint16_t>(nbits + width);
  }
  void append_flag(bool b) { append_bits(b ? 1 : 0, 1); }

  std::uint64_t read_bits(std::uint32_t pos, int width) const {
    if (pos + width > nbits) throw BitError("Payload::read_bits: past end");
    return detail::get_bits(w.data(), pos, width);
  }
  std::string hex() const { return detail::hex_of(w.data(), nbits); }

  friend bool operator==(const Payload& a, const Payload& b) {
    return a.nbits == b.nbits && a.w == b.w;
  }
};

// Sequential reader over either bit container.
template <class Bits>
class BitReader {
 public:
  explicit BitReader(const Bits& bits) : bits_(&bits) {}
  std::uint64_t take(int width) {
    std::uint64_t v = bits_->read_bits(pos_, width);
    pos_ += width;
    return v;
  }
  bool take_flag() { return take(1) != 0; }
  std::uint32_t pos() const { return pos_; }

 private:
  const Bits* bits_;
  std::uint32_t pos_ = 0;
};

}  // namespace vcut
