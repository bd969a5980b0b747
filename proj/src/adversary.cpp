#include "qcauth/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "internal.hpp"
#include "qcauth/errors.hpp"

namespace qcauth {

using internal::basis_bits;
using internal::count_set;
using internal::ec_corrections_hex;
using internal::gather;

AttackKind attack_from_string(std::string_view name) {
  if (name == "none") return AttackKind::none;
  if (name == "intercept_resend_plain") return AttackKind::intercept_resend_plain;
  if (name == "mitm_p1a") return AttackKind::mitm_p1a;
  if (name == "mitm_p1b") return AttackKind::mitm_p1b;
  if (name == "mitm_p2a") return AttackKind::mitm_p2a;
  if (name == "mitm_p2b") return AttackKind::mitm_p2b;
  if (name == "suppression_p1a") return AttackKind::suppression_p1a;
  if (name == "suppression_p2a") return AttackKind::suppression_p2a;
  throw ConfigError("unknown attack \"" + std::string(name) + "\"");
}

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::none: return "none";
    case AttackKind::intercept_resend_plain: return "intercept_resend_plain";
    case AttackKind::mitm_p1a: return "mitm_p1a";
    case AttackKind::mitm_p1b: return "mitm_p1b";
    case AttackKind::mitm_p2a: return "mitm_p2a";
    case AttackKind::mitm_p2b: return "mitm_p2b";
    case AttackKind::suppression_p1a: return "suppression_p1a";
    case AttackKind::suppression_p2a: return "suppression_p2a";
  }
  return "?";
}

Timing timing_from_string(std::string_view name) {
  if (name == "interleaved") return Timing::interleaved;
  if (name == "sequential") return Timing::sequential;
  throw ConfigError("unknown timing \"" + std::string(name) + "\"");
}

std::string_view to_string(Timing t) {
  return t == Timing::interleaved ? "interleaved" : "sequential";
}

GuessPolicy policy_from_string(std::string_view name) {
  if (name == "paper_naive") return GuessPolicy::paper_naive;
  if (name == "bayesian") return GuessPolicy::bayesian;
  throw ConfigError("unknown policy \"" + std::string(name) + "\"");
}

std::string_view to_string(GuessPolicy p) {
  return p == GuessPolicy::paper_naive ? "paper_naive" : "bayesian";
}

namespace {

bool is_suppression(AttackKind kind) {
  return kind == AttackKind::suppression_p1a ||
         kind == AttackKind::suppression_p2a;
}

VariantTag required_variant(AttackKind kind) {
  switch (kind) {
    case AttackKind::mitm_p1a:
    case AttackKind::suppression_p1a: return VariantTag::p1a;
    case AttackKind::mitm_p1b: return VariantTag::p1b;
    case AttackKind::mitm_p2a:
    case AttackKind::suppression_p2a: return VariantTag::p2a;
    case AttackKind::mitm_p2b: return VariantTag::p2b;
    default: return VariantTag::p1a;  // unreached; none/plain fit any variant
  }
}

bool variant_specific(AttackKind kind) {
  return kind != AttackKind::none && kind != AttackKind::intercept_resend_plain;
}

}  // namespace

void AttackStrategy::validate(const SessionConfig& config) const {
  if (is_suppression(kind) && timing != Timing::sequential) {
    throw ConfigError(
        "timing must be sequential for suppression attacks: Eve needs the "
        "complete sender session before she forwards any photon");
  }
  if (variant_specific(kind) && config.variant.tag != required_variant(kind)) {
    throw ConfigError("attack " + std::string(to_string(kind)) +
                      " targets variant " +
                      std::string(to_string(required_variant(kind))));
  }
  if (!tau.empty()) {
    if (kind != AttackKind::mitm_p2a) {
      throw ConfigError("tau is only meaningful for attack mitm_p2a");
    }
    for (std::size_t t : tau) {
      if (t >= config.num_pulses) {
        throw ConfigError("tau contains a slot beyond num_pulses");
      }
    }
  }
  if (config.variant.direction == Direction::bob_authenticated &&
      variant_specific(kind)) {
    throw ConfigError(
        "attack kind is not supported for direction bob_authenticated");
  }
}

EveState::EveState(const AttackStrategy& strategy_, std::size_t num_pulses_)
    : strategy(strategy_),
      num_pulses(num_pulses_),
      meas_basis(num_pulses_, Basis::b0),
      meas_bit(num_pulses_, 0),
      tapped(num_pulses_, 0),
      resend_basis(num_pulses_, Basis::b0),
      resend_bit(num_pulses_, 0),
      forwarded(num_pulses_, 0),
      in_tau(num_pulses_, 1),
      ks_estimate(num_pulses_) {
  if (strategy.kind == AttackKind::mitm_p2a && !strategy.tau.empty()) {
    std::fill(in_tau.begin(), in_tau.end(), 0);
    for (std::size_t t : strategy.tau) in_tau[t] = 1;
  }
}

std::size_t EveState::known_count() const {
  std::size_t c = 0;
  for (const KsGuess& g : ks_estimate) c += (g.conf == KsGuess::Conf::known);
  return c;
}

bool EveState::slot_known(std::size_t t) const {
  return t < ks_estimate.size() &&
         ks_estimate[t].conf == KsGuess::Conf::known;
}

std::optional<QuantumSymbol> eve_intercept_resend(EveState& state, std::size_t t,
                                                  const QuantumSymbol& symbol,
                                                  double p_noise, Rng& rng) {
  const Basis mb = basis_from_bit(rng.bit());
  const Bit measured = measure(symbol, mb, p_noise, rng);
  state.tapped[t] = 1;
  state.meas_basis[t] = mb;
  state.meas_bit[t] = measured;
  // Default resend rule: same basis, same bit.
  state.resend_basis[t] = mb;
  state.resend_bit[t] = measured;

  bool forward = true;
  switch (state.strategy.kind) {
    case AttackKind::mitm_p2a:
      forward = state.in_tau[t] != 0;
      break;
    case AttackKind::suppression_p1a:
    case AttackKind::suppression_p2a:
      forward = state.slot_known(t);
      break;
    default:
      break;
  }
  if (!forward) return std::nullopt;
  state.forwarded[t] = 1;
  return QuantumSymbol{state.resend_basis[t], state.resend_bit[t]};
}

void eve_run_alice_session(const SessionConfig& config, const Keystream& ks,
                           EveState& state, const AliceLog& alice,
                           Transcript& transcript, Rng& ec_rng, Rng& guess_rng) {
  const std::size_t n = config.num_pulses;
  const VariantTag tag = config.variant.tag;
  const bool bayesian = state.strategy.policy == GuessPolicy::bayesian;

  std::vector<std::size_t> retained;
  Bits reference;
  Bits noisy;
  Bits alice_payload;  // P2b encrypted basis disclosure, ordinal-indexed

  if (tag == VariantTag::p2b) {
    // Eve sits in Bob's chair: she discloses her detection events, Alice
    // answers with {y'} xor F(K), and Eve claims every ordinal agreed.
    std::vector<std::size_t> detections;
    for (std::size_t t = 0; t < n; ++t) {
      if (state.tapped[t]) detections.push_back(t);
    }
    transcript.append("eve", "detection_times", times_to_hex(detections), 0, n);
    Bits alice_restricted(detections.size());
    for (std::size_t i = 0; i < detections.size(); ++i) {
      alice_restricted[i] = basis_bit(alice.bases[detections[i]]);
    }
    Bits mask = detections.empty() ? Bits{} : ks.expand(0, detections.size());
    alice_payload = xor_bits(alice_restricted, mask);
    transcript.append("alice", "basis_disclosure", bits_to_hex(alice_payload), 0, n);
    retained = detections;
    transcript.append("eve", "valid_times", times_to_hex(retained), 0, n);
  } else {
    transcript.append("alice", "basis_disclosure",
                      bits_to_hex(basis_bits(alice.bases)), 0, n);
    for (std::size_t t = 0; t < n; ++t) {
      if (!state.tapped[t]) continue;
      if (tag == VariantTag::p2a) {
        // She cannot check basis agreement, so she claims it for all of {tau}.
        if (state.in_tau[t]) retained.push_back(t);
      } else if (state.meas_basis[t] == alice.bases[t]) {
        retained.push_back(t);
      }
    }
    transcript.append("eve", "valid_times", times_to_hex(retained), 0, n);
  }

  reference = gather(alice.bits, retained);
  noisy = gather(state.meas_bit, retained);
  if (tag == VariantTag::p1b) {
    // Alice masks her retained bits; Eve has nothing to mask with.
    reference = apply_post_sift_keystream(reference, ks);
  }

  EcResult ec = error_correct(reference, noisy, config.delta, ec_rng);
  transcript.append("alice", "ec_corrections", ec_corrections_hex(ec, reference),
                    0, n);
  state.ae_retained = retained;
  state.ae_corrected_key = ec.corrected_key;

  std::vector<std::uint8_t> revealed(retained.size(), 0);
  for (std::size_t pos : ec.revealed_error_positions) revealed[pos] = 1;

  auto& est = state.ks_estimate;
  switch (tag) {
    case VariantTag::p1a:
    case VariantTag::p1b:
      // A corrected position means the stream bit was set; assuming the
      // corrected key is right pins the estimate everywhere she was sifted.
      for (std::size_t j = 0; j < retained.size(); ++j) {
        const std::size_t idx = tag == VariantTag::p1a ? retained[j] : j;
        est[idx].bit = static_cast<Bit>(
            (state.meas_bit[retained[j]] ^ ec.corrected_key[j]) & 1u);
        est[idx].conf =
            revealed[j] ? KsGuess::Conf::known : KsGuess::Conf::guessed;
      }
      break;
    case VariantTag::p2a:
      // A revealed error implies her basis disagreed with the encrypted one,
      // which pins the stream bit. Elsewhere she can only guess.
      for (std::size_t j = 0; j < retained.size(); ++j) {
        const std::size_t t = retained[j];
        const Bit match_guess = static_cast<Bit>(
            (basis_bit(state.meas_basis[t]) ^ basis_bit(alice.bases[t])) & 1u);
        if (revealed[j]) {
          est[t] = KsGuess{static_cast<Bit>(match_guess ^ 1u),
                           KsGuess::Conf::known};
        } else if (bayesian) {
          est[t] = KsGuess{match_guess, KsGuess::Conf::guessed};
        }
      }
      break;
    case VariantTag::p2b:
      for (std::size_t j = 0; j < retained.size(); ++j) {
        const Bit match_guess = static_cast<Bit>(
            (alice_payload[j] ^ basis_bit(state.meas_basis[retained[j]])) & 1u);
        if (revealed[j]) {
          est[j] = KsGuess{static_cast<Bit>(match_guess ^ 1u),
                           KsGuess::Conf::known};
        } else if (bayesian) {
          est[j] = KsGuess{match_guess, KsGuess::Conf::guessed};
        }
      }
      break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (est[i].conf == KsGuess::Conf::unknown) {
      est[i] = KsGuess{guess_rng.bit(), KsGuess::Conf::guessed};
    }
  }

  // She completes the exchange without aborting.
  transcript.append("eve", "verdict", "01", 0, n);
  transcript.append("alice", "privacy_amplification", "", 0, n);
  transcript.append("alice", "key_refresh", "", 0, n);
}

namespace {

EveReport make_eve_report(VariantTag tag, const EveState& state,
                          const Keystream& ks,
                          const std::vector<std::size_t>& eb_retained) {
  EveReport report;
  report.known_count = state.known_count();
  report.ae_retained_count = state.ae_retained.size();
  report.eb_retained_count = eb_retained.size();

  std::size_t sifted_err = 0;
  const bool slot_indexed = keystream_indexed_by_slot(tag);
  for (std::size_t j = 0; j < state.ae_retained.size(); ++j) {
    const std::size_t idx = slot_indexed ? state.ae_retained[j] : j;
    sifted_err += (state.ks_estimate[idx].bit != ks.bit(idx));
  }
  report.ks_sifted_error_rate =
      state.ae_retained.empty()
          ? 0.0
          : static_cast<double>(sifted_err) /
                static_cast<double>(state.ae_retained.size());

  std::size_t full_err = 0;
  for (std::size_t i = 0; i < state.num_pulses; ++i) {
    full_err += (state.ks_estimate[i].bit != ks.bit(i));
  }
  report.ks_full_error_rate =
      state.num_pulses == 0
          ? 0.0
          : static_cast<double>(full_err) / static_cast<double>(state.num_pulses);

  std::size_t overlap = 0;
  std::size_t a = 0;
  for (std::size_t t : eb_retained) {
    while (a < state.ae_retained.size() && state.ae_retained[a] < t) ++a;
    if (a < state.ae_retained.size() && state.ae_retained[a] == t) ++overlap;
  }
  report.overlap_ae_fraction =
      state.ae_retained.empty()
          ? 0.0
          : static_cast<double>(overlap) /
                static_cast<double>(state.ae_retained.size());
  report.overlap_eb_fraction =
      eb_retained.empty() ? 0.0
                          : static_cast<double>(overlap) /
                                static_cast<double>(eb_retained.size());
  return report;
}

}  // namespace

SessionOutcome eve_run_bob_session(const SessionConfig& config,
                                   const Keystream& ks, EveState& state,
                                   const BobLog& bob, Transcript& transcript,
                                   Rng& ec_rng) {
  const std::size_t n = config.num_pulses;
  const VariantTag tag = config.variant.tag;

  SessionOutcome out;
  out.detected_count = count_set(bob.detected);

  std::vector<std::size_t> retained;
  Bits eve_reference;
  Bits bob_bits;

  switch (tag) {
    case VariantTag::p1a:
    case VariantTag::p1b: {
      transcript.append("eve", "basis_disclosure",
                        bits_to_hex(basis_bits(state.resend_basis)), 0, n);
      for (std::size_t t = 0; t < n; ++t) {
        if (bob.detected[t] && state.resend_basis[t] == bob.bases[t]) {
          retained.push_back(t);
        }
      }
      transcript.append("bob", "valid_times", times_to_hex(retained), 0, n);
      if (tag == VariantTag::p1a) {
        for (std::size_t t : retained) {
          eve_reference.push_back(static_cast<Bit>(
              (state.resend_bit[t] ^ state.ks_estimate[t].bit) & 1u));
        }
        bob_bits = gather(bob.recorded, retained);
      } else {
        for (std::size_t i = 0; i < retained.size(); ++i) {
          eve_reference.push_back(static_cast<Bit>(
              (state.resend_bit[retained[i]] ^ state.ks_estimate[i].bit) & 1u));
        }
        bob_bits = apply_post_sift_keystream(gather(bob.recorded, retained), ks);
      }
      break;
    }
    case VariantTag::p2a: {
      // The basis list she discloses is her resend list decrypted with F(K').
      Bits claimed(n);
      for (std::size_t t = 0; t < n; ++t) {
        claimed[t] = static_cast<Bit>(
            (basis_bit(state.resend_basis[t]) ^ state.ks_estimate[t].bit) & 1u);
      }
      transcript.append("eve", "basis_disclosure", bits_to_hex(claimed), 0, n);
      for (std::size_t t = 0; t < n; ++t) {
        if (bob.detected[t] && claimed[t] == basis_bit(bob.bases[t])) {
          retained.push_back(t);
        }
      }
      transcript.append("bob", "valid_times", times_to_hex(retained), 0, n);
      eve_reference = gather(state.resend_bit, retained);
      bob_bits = gather(bob.recorded, retained);
      break;
    }
    case VariantTag::p2b: {
      std::vector<std::size_t> detections;
      for (std::size_t t = 0; t < n; ++t) {
        if (bob.detected[t]) detections.push_back(t);
      }
      transcript.append("bob", "detection_times", times_to_hex(detections), 0, n);
      Bits eve_payload(detections.size());
      for (std::size_t i = 0; i < detections.size(); ++i) {
        eve_payload[i] = static_cast<Bit>(
            (basis_bit(state.resend_basis[detections[i]]) ^
             state.ks_estimate[i].bit) &
            1u);
      }
      transcript.append("eve", "basis_disclosure", bits_to_hex(eve_payload), 0, n);
      Bits bob_restricted(detections.size());
      for (std::size_t i = 0; i < detections.size(); ++i) {
        bob_restricted[i] = basis_bit(bob.bases[detections[i]]);
      }
      Bits mask = detections.empty() ? Bits{} : ks.expand(0, detections.size());
      Bits bob_payload = xor_bits(bob_restricted, mask);
      for (std::size_t i : p2b_retained_ordinals(eve_payload, bob_payload)) {
        retained.push_back(detections[i]);
      }
      transcript.append("bob", "valid_times", times_to_hex(retained), 0, n);
      eve_reference = gather(state.resend_bit, retained);
      bob_bits = gather(bob.recorded, retained);
      break;
    }
  }

  out.sifted_count = retained.size();
  out.eve = make_eve_report(tag, state, ks, retained);

  if (retained.size() < config.min_sifted) {
    out.qber = std::numeric_limits<double>::quiet_NaN();
    out.verdict = Verdict::inconclusive;
    return out;
  }

  out.qber = estimate_qber(eve_reference, bob_bits);
  EcResult ec = error_correct(eve_reference, bob_bits, config.delta, ec_rng);
  transcript.append("eve", "ec_corrections", ec_corrections_hex(ec, eve_reference),
                    0, n);
  out.residual_error_count = ec.residual_error_count;
  out.verdict = session_verdict(out.qber, config.theta_detect);
  transcript.append("bob", "verdict", internal::verdict_payload(out.verdict), 0, n);

  if (out.verdict == Verdict::accept) {
    transcript.append("alice+bob", "privacy_amplification", "", 0, n);
    Bits key = ec.corrected_key;
    if (tag == VariantTag::p1b) key = apply_post_sift_keystream(key, ks);
    if (key.size() >= config.secret.n()) {
      RefreshResult refreshed = refresh_secret(key, config.secret.n());
      out.next_secret = refreshed.secret;
      out.final_key.assign(key.begin() + static_cast<std::ptrdiff_t>(refreshed.consumed),
                           key.end());
      transcript.append("alice+bob", "key_refresh", "", 0, n);
    } else {
      out.final_key = key;
    }
  }
  return out;
}

double alpha_for_delta(double delta) { return std::max(0.0, 0.5 - delta); }

double gamma_for_delta(double delta) {
  return std::max(0.375, (1.0 - delta) / 2.0);
}

Prediction predict_attack_qber(AttackKind kind, double delta,
                               GuessPolicy policy) {
  if (delta < 0.0 || delta > 1.0) throw ConfigError("delta must be in [0,1]");
  Prediction p;
  p.alpha = alpha_for_delta(delta);
  p.gamma = gamma_for_delta(delta);
  switch (kind) {
    case AttackKind::intercept_resend_plain:
      p.expected_qber = 0.25;
      return p;
    case AttackKind::mitm_p1a:
      p.expected_qber = 0.25 + p.alpha / 2.0;
      return p;
    case AttackKind::mitm_p1b:
      p.expected_qber = p.alpha;
      return p;
    case AttackKind::mitm_p2a:
    case AttackKind::mitm_p2b:
      if (policy != GuessPolicy::paper_naive) {
        throw NoPredictionError(
            "no closed form for the bayesian policy on p2 attacks");
      }
      p.expected_qber = p.gamma / 2.0;
      return p;
    default:
      throw NoPredictionError("no closed-form prediction for attack " +
                              std::string(to_string(kind)));
  }
}

}  // namespace qcauth
