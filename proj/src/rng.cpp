#include "qcauth/rng.hpp"

namespace qcauth {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc908ull);
  for (unsigned char c : label) {
    h = mix64((h + 0x9e3779b97f4a7c15ull) ^ c);
  }
  return mix64(h ^ (static_cast<std::uint64_t>(label.size()) << 32));
}

std::size_t Rng::below(std::size_t n) {
  // Rejection sampling over the top of the 64-bit range keeps it unbiased.
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return static_cast<std::size_t>(v % bound);
}

}  // namespace qcauth
