#include "qcauth/channel.hpp"

namespace qcauth {

std::optional<QuantumSymbol> transmit(const QuantumSymbol& symbol,
                                      const ChannelParams& params, Rng& rng) {
  if (rng.bernoulli(params.p_loss)) return std::nullopt;
  return symbol;
}

Bit measure(const QuantumSymbol& symbol, Basis measurement_basis,
            double p_noise, Rng& rng) {
  if (measurement_basis == symbol.basis) {
    const Bit flip = rng.bernoulli(p_noise) ? 1u : 0u;
    return static_cast<Bit>(symbol.bit ^ flip);
  }
  // Conjugate-basis rule: the outcome carries no information about the bit.
  return rng.bit();
}

}  // namespace qcauth
