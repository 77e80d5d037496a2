#include "ncclab/bits.hpp"

#include <bit>

#include "ncclab/error.hpp"

namespace ncclab {

void BitVector::append(std::uint64_t v, unsigned width) {
  for (unsigned k = width; k-- > 0;) bits_.push_back(((v >> k) & 1U) != 0);
}

void BitVector::append(const BitVector& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitVector::read(std::size_t pos, unsigned width) const {
  if (pos + width > bits_.size()) {
    throw Error(Errc::InvalidArgument, "bit read past end of advice");
  }
  std::uint64_t v = 0;
  for (unsigned k = 0; k < width; ++k) v = (v << 1) | (bits_[pos + k] ? 1U : 0U);
  return v;
}

std::vector<std::uint8_t> BitVector::pack() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  return out;
}

BitVector BitVector::unpack(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
  BitVector v;
  for (std::size_t i = 0; i < nbits; ++i) v.push_back(((bytes.at(i / 8) >> (i % 8)) & 1U) != 0);
  return v;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::uint64_t BitReader::take(unsigned width) {
  const std::uint64_t v = bits_.read(pos_, width);
  pos_ += width;
  return v;
}

std::string advice_to_hex(const BitVector& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::vector<std::uint8_t> bytes;
  const std::uint64_t n = bits.size();
  for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  const auto packed = bits.pack();
  bytes.insert(bytes.end(), packed.begin(), packed.end());
  std::string out;
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

BitVector advice_from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0 || hex.size() < 16) throw Error(Errc::ParseError, "bad advice hex length");
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::ParseError, "bad hex digit in advice");
    bytes.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= std::uint64_t{bytes[i]} << (8 * i);
  std::vector<std::uint8_t> body(bytes.begin() + 8, bytes.end());
  if (body.size() != (n + 7) / 8) throw Error(Errc::ParseError, "advice length header mismatch");
  return BitVector::unpack(body, n);
}

unsigned ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

}  // namespace ncclab
