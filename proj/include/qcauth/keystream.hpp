#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "qcauth/bits.hpp"

namespace qcauth {

// Key expansion generator family. One generator ships; the tag is part of the
// stream derivation so adding another cannot silently alias an existing one.
enum class GeneratorId : std::uint8_t { ctr_v1 = 0 };

GeneratorId generator_from_string(std::string_view name);  // throws ConfigError
std::string_view to_string(GeneratorId id);

inline constexpr std::size_t kMinSecretBits = 16;
inline constexpr std::size_t kDefaultMaxStreamBits = std::size_t{1} << 26;

// The n-bit shared secret K.
struct SharedSecret {
  Bits bits;

  std::size_t n() const { return bits.size(); }

  // Both factories enforce the n >= 16 floor.
  static SharedSecret from_bits(Bits bits);
  static SharedSecret from_hex(std::string_view hex);
};

// Deterministic expansion of a shared secret into a pseudo-random bit stream.
// bit(i) is a pure function of (secret, generator id, i); any two calls that
// cover index i agree on it.
class Keystream {
 public:
  explicit Keystream(const SharedSecret& secret,
                     GeneratorId id = GeneratorId::ctr_v1,
                     std::size_t max_stream_bits = kDefaultMaxStreamBits);

  Bit bit(std::size_t index) const;          // throws BoundsError past the cap
  Bits expand(std::size_t lo, std::size_t hi) const;  // [lo,hi), throws BoundsError

  std::uint64_t secret_fingerprint() const { return fingerprint_; }
  GeneratorId generator_id() const { return id_; }
  std::size_t max_stream_bits() const { return max_stream_bits_; }

 private:
  std::uint64_t block(std::uint64_t block_index) const;

  std::array<std::uint64_t, 3> lanes_{};
  std::uint64_t fingerprint_ = 0;
  GeneratorId id_ = GeneratorId::ctr_v1;
  std::size_t max_stream_bits_ = kDefaultMaxStreamBits;
};

// One-shot expansion without keeping the stream handle around.
Bits expand(const SharedSecret& secret, std::size_t lo, std::size_t hi,
            GeneratorId id = GeneratorId::ctr_v1,
            std::size_t max_stream_bits = kDefaultMaxStreamBits);

struct RefreshResult {
  SharedSecret secret;
  std::size_t consumed;  // bits taken off the front of the distilled key
};

// Takes the first n bits of the distilled key as the next shared secret.
// Throws InsufficientMaterialError if fewer than n bits are available and
// ConfigError for n below the secret floor.
RefreshResult refresh_secret(const Bits& distilled_key, std::size_t n);

}  // namespace qcauth
