#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccdc {

// A byte-aligned bit string. Bit i lives in byte i/8 at position i%8.
class BitString {
 public:
  BitString() = default;
  // All-zero string of `bits` bits; `bits` must be a multiple of 8.
  explicit BitString(std::size_t bits);
  explicit BitString(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  static BitString from_hex(std::string_view hex);

  std::size_t bit_size() const { return bytes_.size() * 8; }
  std::size_t byte_size() const { return bytes_.size(); }
  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::span<std::uint8_t> bytes() { return bytes_; }

  bool bit(std::size_t i) const;
  void flip_bit(std::size_t i);
  bool is_zero() const;

  void append(const BitString& tail);
  // Bits [first_bit, first_bit + bits); both byte-aligned.
  BitString slice(std::size_t first_bit, std::size_t bits) const;

  std::string to_hex() const;

  BitString& operator^=(const BitString& other);
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

// A T-bit intermediate value v_{q,n}. Exactly T bits wherever it is produced.
using IntermediateValue = BitString;

// The abelian group instantiating the linear reduction.
enum class Group { Xor, Add8, Add32 };

std::string_view to_string(Group group);
Group parse_group(std::string_view name);

BitString group_identity(std::size_t bits);
BitString group_add(Group group, const BitString& a, const BitString& b);
BitString group_negate(Group group, const BitString& a);
// acc <- acc + x
void group_accumulate(Group group, BitString& acc, const BitString& x);

BitString xor_bits(const BitString& a, const BitString& b);

// Zero bits appended so `bits` splits into `parts` byte-aligned segments.
std::size_t padding_bits(std::size_t bits, int parts);

// Even split into `parts` segments after zero padding (see padding_bits).
std::vector<BitString> split_packet(const BitString& packet, int parts);

// Inverse of split_packet: concatenates and drops the padding.
BitString join_segments(std::span<const BitString> segments, std::size_t original_bits);

}  // namespace ccdc
