#include "ccdc/payload.hpp"

#include <algorithm>
#include <cstring>

#include "ccdc/error.hpp"

namespace ccdc {
namespace {

void require_same_length(const BitString& a, const BitString& b, const char* op) {
  if (a.byte_size() != b.byte_size()) {
    throw PayloadError(std::string(op) + ": length mismatch (" + std::to_string(a.bit_size()) +
                       " vs " + std::to_string(b.bit_size()) + " bits)");
  }
}

std::uint32_t load_word(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void store_word(std::uint8_t* p, std::uint32_t w) {
  p[0] = static_cast<std::uint8_t>(w);
  p[1] = static_cast<std::uint8_t>(w >> 8);
  p[2] = static_cast<std::uint8_t>(w >> 16);
  p[3] = static_cast<std::uint8_t>(w >> 24);
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw PayloadError(std::string("invalid hex digit '") + c + "'");
}

}  // namespace

BitString::BitString(std::size_t bits) {
  if (bits % 8 != 0) {
    throw PayloadError("bit strings must be byte aligned, got " + std::to_string(bits) + " bits");
  }
  bytes_.assign(bits / 8, 0);
}

BitString BitString::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw PayloadError("hex string needs an even number of digits");
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(hex_digit(hex[2 * i]) * 16 + hex_digit(hex[2 * i + 1]));
  }
  return BitString(std::move(bytes));
}

bool BitString::bit(std::size_t i) const {
  if (i >= bit_size()) throw PayloadError("bit index out of range");
  return (bytes_[i / 8] >> (i % 8)) & 1U;
}

void BitString::flip_bit(std::size_t i) {
  if (i >= bit_size()) throw PayloadError("bit index out of range");
  bytes_[i / 8] ^= static_cast<std::uint8_t>(1U << (i % 8));
}

bool BitString::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

void BitString::append(const BitString& tail) {
  bytes_.insert(bytes_.end(), tail.bytes_.begin(), tail.bytes_.end());
}

BitString BitString::slice(std::size_t first_bit, std::size_t bits) const {
  if (first_bit % 8 != 0 || bits % 8 != 0) throw PayloadError("slice must be byte aligned");
  if (first_bit + bits > bit_size()) throw PayloadError("slice out of range");
  const auto begin = bytes_.begin() + static_cast<std::ptrdiff_t>(first_bit / 8);
  return BitString(std::vector<std::uint8_t>(begin, begin + static_cast<std::ptrdiff_t>(bits / 8)));
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  require_same_length(*this, other, "xor_bits");
  for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
  return *this;
}

std::string_view to_string(Group group) {
  switch (group) {
    case Group::Xor: return "xor";
    case Group::Add8: return "add8";
    case Group::Add32: return "add32";
  }
  return "?";
}

Group parse_group(std::string_view name) {
  if (name == "xor") return Group::Xor;
  if (name == "add8") return Group::Add8;
  if (name == "add32") return Group::Add32;
  throw ConfigError("unknown aggregation group '" + std::string(name) +
                    "' (expected xor, add8 or add32)");
}

BitString group_identity(std::size_t bits) { return BitString(bits); }

void group_accumulate(Group group, BitString& acc, const BitString& x) {
  require_same_length(acc, x, "group_add");
  auto dst = acc.bytes();
  auto src = x.bytes();
  switch (group) {
    case Group::Xor:
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
      break;
    case Group::Add8:
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<std::uint8_t>(dst[i] + src[i]);
      break;
    case Group::Add32:
      if (dst.size() % 4 != 0) throw PayloadError("add32 needs a multiple of 32 bits");
      for (std::size_t i = 0; i < dst.size(); i += 4) {
        store_word(&dst[i], load_word(&dst[i]) + load_word(&src[i]));
      }
      break;
  }
}

BitString group_add(Group group, const BitString& a, const BitString& b) {
  BitString out = a;
  group_accumulate(group, out, b);
  return out;
}

BitString group_negate(Group group, const BitString& a) {
  BitString out = a;
  auto bytes = out.bytes();
  switch (group) {
    case Group::Xor:
      break;
    case Group::Add8:
      for (auto& b : bytes) b = static_cast<std::uint8_t>(0U - b);
      break;
    case Group::Add32:
      if (bytes.size() % 4 != 0) throw PayloadError("add32 needs a multiple of 32 bits");
      for (std::size_t i = 0; i < bytes.size(); i += 4) store_word(&bytes[i], 0U - load_word(&bytes[i]));
      break;
  }
  return out;
}

BitString xor_bits(const BitString& a, const BitString& b) {
  BitString out = a;
  out ^= b;
  return out;
}

std::size_t padding_bits(std::size_t bits, int parts) {
  if (parts < 1) throw PayloadError("split_packet: parts must be at least 1");
  const std::size_t unit = static_cast<std::size_t>(parts) * 8;
  return (unit - bits % unit) % unit;
}

std::vector<BitString> split_packet(const BitString& packet, int parts) {
  const std::size_t pad = padding_bits(packet.bit_size(), parts);
  BitString padded = packet;
  if (pad != 0) padded.append(BitString(pad));
  const std::size_t seg = padded.bit_size() / static_cast<std::size_t>(parts);
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(parts));
  for (int i = 0; i < parts; ++i) out.push_back(padded.slice(static_cast<std::size_t>(i) * seg, seg));
  return out;
}

BitString join_segments(std::span<const BitString> segments, std::size_t original_bits) {
  BitString joined;
  for (const auto& s : segments) joined.append(s);
  if (original_bits > joined.bit_size()) throw PayloadError("join_segments: segments too short");
  return joined.slice(0, original_bits);
}

}  // namespace ccdc
