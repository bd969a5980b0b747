#pragma once

// Shared helpers for the session drivers. Not installed.

#include <cstddef>
#include <string>
#include <vector>

#include "qcauth/bits.hpp"
#include "qcauth/protocol.hpp"

namespace qcauth::internal {

inline Bits gather(const Bits& source, const std::vector<std::size_t>& indices) {
  Bits out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(source[i]);
  return out;
}

inline Bits basis_bits(const std::vector<Basis>& bases) {
  Bits out(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) out[i] = basis_bit(bases[i]);
  return out;
}

inline std::size_t count_set(const std::vector<std::uint8_t>& flags) {
  std::size_t c = 0;
  for (std::uint8_t f : flags) c += (f != 0);
  return c;
}

// EC correction data as wire payload: one little-endian uint32 per revealed
// position, (position << 1) | reference_bit.
inline std::string ec_corrections_hex(const EcResult& ec, const Bits& reference) {
  std::vector<std::size_t> words;
  words.reserve(ec.revealed_error_positions.size());
  for (std::size_t pos : ec.revealed_error_positions) {
    words.push_back((pos << 1) | reference[pos]);
  }
  return times_to_hex(words);
}

inline std::string verdict_payload(Verdict v) {
  return v == Verdict::accept ? "01" : "00";
}

}  // namespace qcauth::internal
