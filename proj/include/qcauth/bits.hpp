#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qcauth {

using Bit = std::uint8_t;        // always 0 or 1
using Bits = std::vector<Bit>;   // one bit per element

// Packs bits LSB-first within each byte and renders lowercase hex.
// bits_to_hex({1,0,0,1,1,0,1,1}) == "d9".
std::string bits_to_hex(const Bits& bits);

// Inverse of bits_to_hex. bit_count defaults to 4 * hex digits.
// Throws ConfigError on non-hex input or bit_count > 4 * digits.
Bits hex_to_bits(std::string_view hex, std::size_t bit_count = SIZE_MAX);

// Number of positions where a and b differ. Throws LengthMismatchError.
std::size_t hamming_distance(const Bits& a, const Bits& b);

Bits xor_bits(const Bits& a, const Bits& b);  // throws LengthMismatchError

// Encodes a list of slot indices as little-endian uint32 words, hex rendered.
std::string times_to_hex(const std::vector<std::size_t>& times);

}  // namespace qcauth
