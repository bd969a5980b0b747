#include "qcauth/bits.hpp"

#include <array>

#include "qcauth/errors.hpp"

namespace qcauth {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string bits_to_hex(const Bits& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bytes[i >> 3] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i & 7u));
  }
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

Bits hex_to_bits(std::string_view hex, std::size_t bit_count) {
  if (bit_count == SIZE_MAX) bit_count = hex.size() * 4;
  if (bit_count > hex.size() * 4) {
    throw ConfigError("hex string too short for requested bit count");
  }
  std::vector<std::uint8_t> bytes((hex.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    int v = hex_value(hex[i]);
    if (v < 0) {
      throw ConfigError("invalid hexadecimal digit in secret/bit string");
    }
    // Digit pairs are bytes; low nibble printed second, matching bits_to_hex.
    if (i % 2 == 0) {
      bytes[i / 2] |= static_cast<std::uint8_t>(v << 4);
    } else {
      bytes[i / 2] |= static_cast<std::uint8_t>(v);
    }
  }
  Bits bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits[i] = static_cast<Bit>((bytes[i >> 3] >> (i & 7u)) & 1u);
  }
  return bits;
}

std::size_t hamming_distance(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("bit sequences differ in length");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += static_cast<std::size_t>((a[i] ^ b[i]) & 1u);
  }
  return d;
}

Bits xor_bits(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("bit sequences differ in length");
  }
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<Bit>((a[i] ^ b[i]) & 1u);
  }
  return out;
}

std::string times_to_hex(const std::vector<std::size_t>& times) {
  std::string out;
  out.reserve(times.size() * 8);
  for (std::size_t t : times) {
    auto w = static_cast<std::uint32_t>(t);
    for (int shift = 0; shift < 32; shift += 8) {
      auto byte = static_cast<std::uint8_t>((w >> shift) & 0xffu);
      out.push_back(kHexDigits[byte >> 4]);
      out.push_back(kHexDigits[byte & 0x0f]);
    }
  }
  return out;
}

}  // namespace qcauth
