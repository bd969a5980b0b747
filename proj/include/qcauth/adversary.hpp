#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcauth/protocol.hpp"

namespace qcauth {

enum class AttackKind : std::uint8_t {
  none,
  intercept_resend_plain,
  mitm_p1a,
  mitm_p1b,
  mitm_p2a,
  mitm_p2b,
  suppression_p1a,
  suppression_p2a,
};

enum class Timing : std::uint8_t { interleaved, sequential };
enum class GuessPolicy : std::uint8_t { paper_naive, bayesian };

AttackKind attack_from_string(std::string_view name);  // throws ConfigError
std::string_view to_string(AttackKind kind);
Timing timing_from_string(std::string_view name);
std::string_view to_string(Timing t);
GuessPolicy policy_from_string(std::string_view name);
std::string_view to_string(GuessPolicy p);

struct AttackStrategy {
  AttackKind kind = AttackKind::none;
  Timing timing = Timing::interleaved;
  GuessPolicy policy = GuessPolicy::paper_naive;
  // Slot set {tau} for mitm_p2a: Eve forwards a photon only at these slots.
  // Empty means all slots.
  std::vector<std::size_t> tau;

  // Throws ConfigError: suppression_* requires sequential timing, each mitm_*
  // matches exactly its protocol variant, and the reversed direction only
  // admits quantum-channel-only attacks.
  void validate(const SessionConfig& config) const;
};

// Per-index keystream estimate with confidence tag. "known" is set only at
// indices revealed through the Alice-Eve error correction.
struct KsGuess {
  enum class Conf : std::uint8_t { unknown, guessed, known };
  Bit bit = 0;
  Conf conf = Conf::unknown;
};

struct EveState {
  AttackStrategy strategy;
  std::size_t num_pulses = 0;

  // Photon-phase logs, slot-indexed.
  std::vector<Basis> meas_basis;           // Eve's measurement basis choice
  Bits meas_bit;                           // what she measured
  std::vector<std::uint8_t> tapped;        // photon reached Eve's tap
  std::vector<Basis> resend_basis;         // what she sent on (= meas_basis)
  Bits resend_bit;                         // (= meas_bit)
  std::vector<std::uint8_t> forwarded;     // photon sent on towards Bob
  std::vector<std::uint8_t> in_tau;        // resolved {tau} membership

  // Alice-Eve classical session results.
  std::vector<std::size_t> ae_retained;    // slots kept in Alice-Eve sifting
  Bits ae_corrected_key;                   // Eve's post-EC key on ae_retained
  // Keystream estimate F(K'), indexed by slot (P1a/P2a) or ordinal (P1b/P2b).
  std::vector<KsGuess> ks_estimate;

  explicit EveState(const AttackStrategy& strategy, std::size_t num_pulses);

  std::size_t known_count() const;
  bool slot_known(std::size_t t) const;
};

// Intercept-resend tap for slot t. Measures in a uniform random basis, logs
// the result, and returns the re-prepared photon, or nullopt when the
// strategy omits this slot (outside {tau}, or outside the known-keystream
// slots for suppression attacks).
std::optional<QuantumSymbol> eve_intercept_resend(EveState& state, std::size_t t,
                                                  const QuantumSymbol& symbol,
                                                  double p_noise, Rng& rng);

// Completes sifting and EC with honest Alice, absorbs the EC-revealed
// positions into ks_estimate, and fills the remaining indices per the guess
// policy. Appends the classical messages to the transcript.
void eve_run_alice_session(const SessionConfig& config, const Keystream& ks,
                           EveState& state, const AliceLog& alice,
                           Transcript& transcript, Rng& ec_rng, Rng& guess_rng);

// Plays the sender role toward Bob using F(K') and returns Bob's outcome.
// The transcript keeps accumulating; the session driver owns it.
SessionOutcome eve_run_bob_session(const SessionConfig& config,
                                   const Keystream& ks, EveState& state,
                                   const BobLog& bob, Transcript& transcript,
                                   Rng& ec_rng);

struct Prediction {
  double alpha = 0.0;         // max(0, 0.5 - delta)
  double gamma = 0.0;         // max(0.375, (1 - delta) / 2)
  double expected_qber = 0.0;
};

double alpha_for_delta(double delta);
double gamma_for_delta(double delta);

// Closed-form expected QBER for an attack. Throws NoPredictionError where no
// formula exists (suppression attacks, kind none, bayesian policy on P2).
Prediction predict_attack_qber(AttackKind kind, double delta,
                               GuessPolicy policy = GuessPolicy::paper_naive);

}  // namespace qcauth
