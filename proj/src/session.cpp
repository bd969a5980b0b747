#include <cmath>
#include <limits>

#include "internal.hpp"
#include "qcauth/adversary.hpp"
#include "qcauth/errors.hpp"
#include "qcauth/protocol.hpp"

namespace qcauth {

using internal::count_set;
using internal::ec_corrections_hex;
using internal::gather;

namespace {

struct SessionRngs {
  Rng alice;
  Rng bob;
  Rng hop1;
  Rng hop2;
  Rng eve_tap;
  Rng eve_classical;
  Rng ec_honest;
  Rng ec_alice_eve;
  Rng ec_eve_bob;

  explicit SessionRngs(std::uint64_t seed)
      : alice(derive_seed(seed, "alice/source")),
        bob(derive_seed(seed, "bob/receiver")),
        hop1(derive_seed(seed, "channel/hop1")),
        hop2(derive_seed(seed, "channel/hop2")),
        eve_tap(derive_seed(seed, "eve/tap")),
        eve_classical(derive_seed(seed, "eve/classical")),
        ec_honest(derive_seed(seed, "ec/alice-bob")),
        ec_alice_eve(derive_seed(seed, "ec/alice-eve")),
        ec_eve_bob(derive_seed(seed, "ec/eve-bob")) {}
};

AliceLog make_alice_log(std::size_t n) {
  return AliceLog{Bits(n, 0), std::vector<Basis>(n, Basis::b0)};
}

BobLog make_bob_log(std::size_t n) {
  return BobLog{std::vector<Basis>(n, Basis::b0),
                std::vector<std::uint8_t>(n, 0), Bits(n, 0)};
}

void alice_emit(const SessionConfig& cfg, const Keystream& ks, AliceLog& alice,
                std::size_t t, Rng& rng, QuantumSymbol& symbol) {
  alice.bits[t] = rng.bit();
  alice.bases[t] = basis_from_bit(rng.bit());
  symbol = alice_prepare(cfg.variant.tag, t, alice.bits[t], alice.bases[t], ks);
}

void bob_receive(const SessionConfig& cfg, const Keystream& ks, BobLog& bob,
                 std::size_t t, const std::optional<QuantumSymbol>& delivered,
                 Rng& rng) {
  // The apparatus basis is set every slot, detection or not.
  bob.bases[t] = basis_from_bit(rng.bit());
  if (!delivered) return;
  const Basis mb = bob_measurement_basis(cfg.variant.tag, t, bob.bases[t], ks);
  const Bit measured = measure(*delivered, mb, cfg.channel.p_noise, rng);
  bob.detected[t] = 1;
  bob.recorded[t] = bob_record(cfg.variant.tag, t, measured, bob.bases[t], ks);
}

void photon_phase_honest(const SessionConfig& cfg, const Keystream& ks,
                         SessionRngs& rngs, AliceLog& alice, BobLog& bob) {
  for (std::size_t t = 0; t < cfg.num_pulses; ++t) {
    QuantumSymbol symbol{};
    alice_emit(cfg, ks, alice, t, rngs.alice, symbol);
    bob_receive(cfg, ks, bob, t, transmit(symbol, cfg.channel, rngs.hop1),
                rngs.bob);
  }
}

// Eve forwards (or omits) each photon within the slot.
void photon_phase_interleaved(const SessionConfig& cfg, const Keystream& ks,
                              SessionRngs& rngs, EveState& eve, AliceLog& alice,
                              BobLog& bob) {
  for (std::size_t t = 0; t < cfg.num_pulses; ++t) {
    QuantumSymbol symbol{};
    alice_emit(cfg, ks, alice, t, rngs.alice, symbol);
    std::optional<QuantumSymbol> tapped = transmit(symbol, cfg.channel, rngs.hop1);
    std::optional<QuantumSymbol> resent;
    if (tapped) {
      resent = eve_intercept_resend(eve, t, *tapped, cfg.channel.p_noise,
                                    rngs.eve_tap);
    }
    std::optional<QuantumSymbol> delivered;
    if (resent) delivered = transmit(*resent, cfg.channel, rngs.hop2);
    bob_receive(cfg, ks, bob, t, delivered, rngs.bob);
  }
}

// Sequential timing: the whole sender-side session finishes before Eve sends
// a single photon towards Bob, so her keystream estimate exists by then.
void photon_phase_alice_to_eve(const SessionConfig& cfg, const Keystream& ks,
                               SessionRngs& rngs, EveState& eve,
                               AliceLog& alice) {
  for (std::size_t t = 0; t < cfg.num_pulses; ++t) {
    QuantumSymbol symbol{};
    alice_emit(cfg, ks, alice, t, rngs.alice, symbol);
    std::optional<QuantumSymbol> tapped = transmit(symbol, cfg.channel, rngs.hop1);
    if (!tapped) continue;
    const Basis mb = basis_from_bit(rngs.eve_tap.bit());
    const Bit measured = measure(*tapped, mb, cfg.channel.p_noise, rngs.eve_tap);
    eve.tapped[t] = 1;
    eve.meas_basis[t] = mb;
    eve.meas_bit[t] = measured;
    eve.resend_basis[t] = mb;
    eve.resend_bit[t] = measured;
  }
}

void photon_phase_eve_to_bob(const SessionConfig& cfg, const Keystream& ks,
                             SessionRngs& rngs, EveState& eve, BobLog& bob) {
  for (std::size_t t = 0; t < cfg.num_pulses; ++t) {
    std::optional<QuantumSymbol> delivered;
    if (eve.tapped[t] && eve.slot_known(t)) {
      eve.forwarded[t] = 1;
      delivered = transmit(QuantumSymbol{eve.resend_basis[t], eve.resend_bit[t]},
                           cfg.channel, rngs.hop2);
    }
    bob_receive(cfg, ks, bob, t, delivered, rngs.bob);
  }
}

SessionOutcome inconclusive_outcome(std::size_t sifted, std::size_t detected) {
  SessionOutcome out;
  out.qber = std::numeric_limits<double>::quiet_NaN();
  out.verdict = Verdict::inconclusive;
  out.sifted_count = sifted;
  out.detected_count = detected;
  return out;
}

SessionOutcome honest_classical(const SessionConfig& cfg, const Keystream& ks,
                                SessionRngs& rngs, const AliceLog& alice,
                                const BobLog& bob, Transcript& transcript) {
  const std::size_t n = cfg.num_pulses;
  SiftResult sifted = sift(cfg.variant, alice, bob, ks, transcript);
  const std::size_t detected = count_set(bob.detected);

  if (sifted.retained.size() < cfg.min_sifted) {
    return inconclusive_outcome(sifted.retained.size(), detected);
  }

  Bits alice_bits = gather(alice.bits, sifted.retained);
  Bits bob_bits = gather(bob.recorded, sifted.retained);
  if (cfg.variant.tag == VariantTag::p1b) {
    alice_bits = apply_post_sift_keystream(alice_bits, ks);
    bob_bits = apply_post_sift_keystream(bob_bits, ks);
  }

  const bool reversed = cfg.variant.direction == Direction::bob_authenticated;
  const Bits& reference = reversed ? bob_bits : alice_bits;
  const Bits& noisy = reversed ? alice_bits : bob_bits;
  const char* corrector = reversed ? "bob" : "alice";
  const char* judge = reversed ? "alice" : "bob";

  SessionOutcome out;
  out.sifted_count = sifted.retained.size();
  out.detected_count = detected;
  out.qber = estimate_qber(reference, noisy);

  EcResult ec = error_correct(reference, noisy, cfg.delta, rngs.ec_honest);
  transcript.append(corrector, "ec_corrections", ec_corrections_hex(ec, reference),
                    0, n);
  out.residual_error_count = ec.residual_error_count;
  out.verdict = session_verdict(out.qber, cfg.theta_detect);
  transcript.append(judge, "verdict", internal::verdict_payload(out.verdict), 0, n);

  if (out.verdict == Verdict::accept) {
    transcript.append("alice+bob", "privacy_amplification", "", 0, n);
    Bits key = ec.corrected_key;
    if (cfg.variant.tag == VariantTag::p1b) {
      key = apply_post_sift_keystream(key, ks);
    }
    if (key.size() >= cfg.secret.n()) {
      RefreshResult refreshed = refresh_secret(key, cfg.secret.n());
      out.next_secret = refreshed.secret;
      out.final_key.assign(
          key.begin() + static_cast<std::ptrdiff_t>(refreshed.consumed),
          key.end());
      transcript.append("alice+bob", "key_refresh", "", 0, n);
    } else {
      out.final_key = key;
    }
  }
  return out;
}

bool is_mitm(AttackKind kind) {
  return kind == AttackKind::mitm_p1a || kind == AttackKind::mitm_p1b ||
         kind == AttackKind::mitm_p2a || kind == AttackKind::mitm_p2b;
}

bool is_suppression(AttackKind kind) {
  return kind == AttackKind::suppression_p1a ||
         kind == AttackKind::suppression_p2a;
}

}  // namespace

SessionOutcome run_session(const SessionConfig& config,
                           const std::optional<AttackStrategy>& attack) {
  config.validate();
  if (attack) attack->validate(config);
  const AttackKind kind = attack ? attack->kind : AttackKind::none;

  Keystream ks(config.secret, config.generator, config.max_stream_bits);
  SessionRngs rngs(config.master_seed);
  Transcript transcript(config.record_transcript);
  AliceLog alice = make_alice_log(config.num_pulses);
  BobLog bob = make_bob_log(config.num_pulses);

  if (kind == AttackKind::none) {
    photon_phase_honest(config, ks, rngs, alice, bob);
    SessionOutcome out = honest_classical(config, ks, rngs, alice, bob, transcript);
    out.transcript = std::move(transcript);
    return out;
  }

  EveState eve(*attack, config.num_pulses);

  if (kind == AttackKind::intercept_resend_plain) {
    // Eve only touches the quantum channel; the classical phases stay honest.
    photon_phase_interleaved(config, ks, rngs, eve, alice, bob);
    SessionOutcome out = honest_classical(config, ks, rngs, alice, bob, transcript);
    out.transcript = std::move(transcript);
    return out;
  }

  if (is_suppression(kind)) {
    photon_phase_alice_to_eve(config, ks, rngs, eve, alice);
    eve_run_alice_session(config, ks, eve, alice, transcript, rngs.ec_alice_eve,
                          rngs.eve_classical);
    photon_phase_eve_to_bob(config, ks, rngs, eve, bob);
    SessionOutcome out =
        eve_run_bob_session(config, ks, eve, bob, transcript, rngs.ec_eve_bob);
    out.transcript = std::move(transcript);
    return out;
  }

  if (is_mitm(kind)) {
    photon_phase_interleaved(config, ks, rngs, eve, alice, bob);
    eve_run_alice_session(config, ks, eve, alice, transcript, rngs.ec_alice_eve,
                          rngs.eve_classical);
    SessionOutcome out =
        eve_run_bob_session(config, ks, eve, bob, transcript, rngs.ec_eve_bob);
    out.transcript = std::move(transcript);
    return out;
  }

  throw ConfigError("unsupported attack kind");
}

}  // namespace qcauth
