#pragma once

#include <optional>

#include "qcauth/bits.hpp"
#include "qcauth/rng.hpp"

namespace qcauth {

// The two conjugate bases of the observable. Measuring in the wrong basis
// yields a uniformly random outcome.
enum class Basis : Bit { b0 = 0, b1 = 1 };

inline Bit basis_bit(Basis b) { return static_cast<Bit>(b); }
inline Basis basis_from_bit(Bit v) { return static_cast<Basis>(v & 1u); }
inline Basis basis_xor(Basis b, Bit k) {
  return basis_from_bit(static_cast<Bit>(basis_bit(b) ^ (k & 1u)));
}

// One prepared photon: encoding basis and encoded bit.
struct QuantumSymbol {
  Basis basis;
  Bit bit;
};

struct ChannelParams {
  double p_loss = 0.0;   // probability of no detection event
  double p_noise = 0.0;  // bit-flip probability on a matched-basis measurement
};

// Loss happens in flight; noise is applied at measurement so symbols stay
// immutable through taps. Consumes exactly one draw per call.
std::optional<QuantumSymbol> transmit(const QuantumSymbol& symbol,
                                      const ChannelParams& params, Rng& rng);

// Matched basis: the encoded bit, flipped with probability p_noise.
// Mismatched basis: a uniform random bit. Consumes exactly one draw.
Bit measure(const QuantumSymbol& symbol, Basis measurement_basis,
            double p_noise, Rng& rng);

}  // namespace qcauth
