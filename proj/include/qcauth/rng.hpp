#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qcauth/bits.hpp"

namespace qcauth {

// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z);

// Stable seed derivation: hashes a label string into a master seed so each
// party/channel/stage gets an independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

// Deterministic random source. All draws go through fixed-width integer
// arithmetic on mt19937_64 output, never std::*_distribution, so sequences
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  Bit bit() { return static_cast<Bit>(engine_() & 1u); }

  // Uniform in [0,1) with 53 random bits.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Consumes exactly one draw regardless of p.
  bool bernoulli(double p) { return u01() < p; }

  // Uniform in [0,n); rejection-sampled, n >= 1.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcauth
