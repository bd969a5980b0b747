#include "qcauth/keystream.hpp"

#include <string>

#include "qcauth/errors.hpp"
#include "qcauth/rng.hpp"

namespace qcauth {

GeneratorId generator_from_string(std::string_view name) {
  if (name == "ctr_v1") return GeneratorId::ctr_v1;
  throw ConfigError("unknown generator \"" + std::string(name) + "\"");
}

std::string_view to_string(GeneratorId id) {
  switch (id) {
    case GeneratorId::ctr_v1:
      return "ctr_v1";
  }
  return "?";
}

SharedSecret SharedSecret::from_bits(Bits bits) {
  if (bits.size() < kMinSecretBits) {
    throw ConfigError("secret must be at least 16 bits");
  }
  for (Bit& b : bits) b &= 1u;
  return SharedSecret{std::move(bits)};
}

SharedSecret SharedSecret::from_hex(std::string_view hex) {
  return from_bits(hex_to_bits(hex));
}

Keystream::Keystream(const SharedSecret& secret, GeneratorId id,
                     std::size_t max_stream_bits)
    : id_(id), max_stream_bits_(max_stream_bits) {
  if (secret.n() < kMinSecretBits) {
    throw ConfigError("secret must be at least 16 bits");
  }
  // Absorb the secret 64 bits at a time into a running mix, then derive
  // independent lanes for the counter-mode block function.
  std::uint64_t h = mix64(0x710b3d4a26c19e57ull ^ static_cast<std::uint64_t>(id));
  const Bits& bits = secret.bits;
  for (std::size_t base = 0; base < bits.size(); base += 64) {
    std::uint64_t chunk = 0;
    for (std::size_t j = 0; j < 64 && base + j < bits.size(); ++j) {
      chunk |= static_cast<std::uint64_t>(bits[base + j] & 1u) << j;
    }
    h = mix64((h + 0x9e3779b97f4a7c15ull) ^ chunk);
  }
  h = mix64(h ^ static_cast<std::uint64_t>(bits.size()));
  lanes_[0] = mix64(h ^ 0xa0761fca4629d3b1ull);
  lanes_[1] = mix64(h ^ 0x1f83d9abfb41bd6bull) | 1ull;  // odd stride
  lanes_[2] = mix64(h ^ 0x5be0cd19137e2179ull);
  fingerprint_ = mix64(h ^ 0x243f6a8885a308d3ull);
}

std::uint64_t Keystream::block(std::uint64_t block_index) const {
  std::uint64_t w = mix64(lanes_[0] + block_index * lanes_[1]);
  return mix64(w ^ lanes_[2]);
}

Bit Keystream::bit(std::size_t index) const {
  if (index >= max_stream_bits_) {
    throw BoundsError("keystream index exceeds the configured stream length");
  }
  return static_cast<Bit>((block(index >> 6) >> (index & 63u)) & 1u);
}

Bits Keystream::expand(std::size_t lo, std::size_t hi) const {
  if (lo >= hi) {
    throw BoundsError("keystream range is empty");
  }
  if (hi > max_stream_bits_) {
    throw BoundsError("keystream range exceeds the configured stream length");
  }
  Bits out;
  out.reserve(hi - lo);
  std::uint64_t cached_block = 0;
  std::uint64_t cached_index = UINT64_MAX;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::uint64_t bi = i >> 6;
    if (bi != cached_index) {
      cached_block = block(bi);
      cached_index = bi;
    }
    out.push_back(static_cast<Bit>((cached_block >> (i & 63u)) & 1u));
  }
  return out;
}

Bits expand(const SharedSecret& secret, std::size_t lo, std::size_t hi,
            GeneratorId id, std::size_t max_stream_bits) {
  return Keystream(secret, id, max_stream_bits).expand(lo, hi);
}

RefreshResult refresh_secret(const Bits& distilled_key, std::size_t n) {
  if (n < kMinSecretBits) {
    throw ConfigError("refreshed secret length n must be at least 16 bits");
  }
  if (distilled_key.size() < n) {
    throw InsufficientMaterialError(
        "distilled key is shorter than the requested secret length");
  }
  Bits prefix(distilled_key.begin(),
              distilled_key.begin() + static_cast<std::ptrdiff_t>(n));
  return RefreshResult{SharedSecret::from_bits(std::move(prefix)), n};
}

}  // namespace qcauth
