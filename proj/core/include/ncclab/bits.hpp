#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ncclab {

// Append-only bit string with a read cursor helper. Bit i of the string is
// bit (i % 8) of byte i / 8 when packed (LSB first).
class BitVector {
 public:
  BitVector() = default;

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_.at(i); }

  void push_back(bool b) { bits_.push_back(b); }
  // Appends the low `width` bits of v, most significant first.
  void append(std::uint64_t v, unsigned width);
  void append(const BitVector& other);

  // Reads `width` bits starting at pos, most significant first.
  std::uint64_t read(std::size_t pos, unsigned width) const;

  std::vector<std::uint8_t> pack() const;
  static BitVector unpack(const std::vector<std::uint8_t>& bytes, std::size_t nbits);

  std::string to_string() const;  // "0101..."

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<bool> bits_;
};

// Sequential reader over a BitVector.
class BitReader {
 public:
  explicit BitReader(const BitVector& bits) : bits_(bits) {}
  std::uint64_t take(unsigned width);
  bool take_bit() { return take(1) != 0; }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_.size() - pos_; }

 private:
  const BitVector& bits_;
  std::size_t pos_ = 0;
};

struct AdviceString {
  BitVector bits;
  std::size_t declared_budget = 0;

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const AdviceString&, const AdviceString&) = default;
};

// 8-byte little-endian bit count followed by the packed bits, lowercase hex.
std::string advice_to_hex(const BitVector& bits);
// Throws Errc::ParseError on malformed input.
BitVector advice_from_hex(std::string_view hex);

// ceil(log2 n) with log of 1 taken as 0.
unsigned ceil_log2(std::uint64_t n);

}  // namespace ncclab
