#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcauth/channel.hpp"
#include "qcauth/keystream.hpp"
#include "qcauth/rng.hpp"
#include "qcauth/transcript.hpp"

namespace qcauth {

enum class VariantTag : std::uint8_t { p1a, p1b, p2a, p2b };
enum class Direction : std::uint8_t { alice_authenticated, bob_authenticated };

VariantTag variant_from_string(std::string_view name);  // throws ConfigError
std::string_view to_string(VariantTag tag);
Direction direction_from_string(std::string_view name);  // throws ConfigError
std::string_view to_string(Direction d);

struct Variant {
  VariantTag tag = VariantTag::p1a;
  Direction direction = Direction::alice_authenticated;
};

// Which index feeds the keystream for a variant: absolute time slot for the
// photon-layer ciphers, ordinal position in the post-sift / detection-event
// list for the others.
inline bool keystream_indexed_by_slot(VariantTag tag) {
  return tag == VariantTag::p1a || tag == VariantTag::p2a;
}

struct SessionConfig {
  Variant variant;
  std::size_t num_pulses = 200000;
  ChannelParams channel{0.1, 0.02};
  double delta = 0.25;         // EC correction capacity
  double theta_detect = 0.15;  // QBER acceptance threshold, must be < 0.25
  SharedSecret secret;
  std::uint64_t master_seed = 1;
  std::size_t min_sifted = 1000;  // below this the session is inconclusive
  GeneratorId generator = GeneratorId::ctr_v1;
  std::size_t max_stream_bits = kDefaultMaxStreamBits;
  bool record_transcript = true;

  SessionConfig();
  void validate() const;  // throws ConfigError naming the offending field
};

// Sender-side per-slot choices.
struct AliceLog {
  Bits bits;                 // data bit per slot
  std::vector<Basis> bases;  // basis choice per slot
};

// Receiver-side per-slot record. recorded[t] is meaningful iff detected[t].
struct BobLog {
  std::vector<Basis> bases;
  std::vector<std::uint8_t> detected;
  Bits recorded;
};

enum class SiftKind : std::uint8_t { basis_disclosure, detection_times, valid_times };
std::string_view to_string(SiftKind kind);

struct SiftMessage {
  SiftKind kind;
  std::string sender;
  Bits bit_payload;                      // basis lists (possibly encrypted)
  std::vector<std::size_t> time_payload;  // detection / valid time lists
  bool encrypted = false;                // true only for P2b basis disclosures
};

// Validates classical sift-message ordering for a variant+direction.
// Throws ProtocolViolationError on any deviation.
void check_sift_order(const Variant& variant,
                      const std::vector<SiftMessage>& messages);

struct SiftResult {
  std::vector<std::size_t> retained;  // kept slot indices, ascending
  std::vector<SiftMessage> messages;
};

struct EcResult {
  Bits corrected_key;
  std::vector<std::size_t> revealed_error_positions;
  std::size_t residual_error_count = 0;
};

enum class Verdict : std::uint8_t { accept, reject, inconclusive };
std::string_view to_string(Verdict v);

// Eve-side diagnostics attached to attacked sessions; see adversary.hpp.
struct EveReport {
  double ks_sifted_error_rate = 0.0;  // keystream estimate error on Alice-Eve retained indices
  double ks_full_error_rate = 0.0;    // over the variant's full index range
  double overlap_ae_fraction = 0.0;   // |AE retained ∩ EB retained| / |AE retained|
  double overlap_eb_fraction = 0.0;   // |AE retained ∩ EB retained| / |EB retained|
  std::size_t known_count = 0;        // keystream indices marked known (EC-revealed)
  std::size_t ae_retained_count = 0;
  std::size_t eb_retained_count = 0;
};

struct SessionOutcome {
  double qber = 0.0;  // pre-EC mismatch fraction of the EC inputs; NaN if inconclusive
  Verdict verdict = Verdict::inconclusive;
  Bits final_key;     // empty unless verdict == accept
  std::size_t sifted_count = 0;
  std::size_t detected_count = 0;
  std::size_t residual_error_count = 0;
  Transcript transcript;
  std::optional<SharedSecret> next_secret;  // refreshed K after an accepted session
  std::optional<EveReport> eve;
};

// --- photon-phase operations -------------------------------------------------

// What goes on the wire at slot t. P1a encrypts the bit, P2a the basis;
// P1b/P2b send the raw symbol.
QuantumSymbol alice_prepare(VariantTag tag, std::size_t t, Bit data_bit,
                            Basis basis, const Keystream& ks);

// The basis Bob's measurement apparatus is set to at slot t (z, or z xor
// F(K)^t for P2a).
Basis bob_measurement_basis(VariantTag tag, std::size_t t, Basis basis,
                            const Keystream& ks);

// What Bob writes down for a detection at slot t given the measured bit.
Bit bob_record(VariantTag tag, std::size_t t, Bit measured, Basis basis,
               const Keystream& ks);

// --- classical-phase operations ----------------------------------------------

// Runs the honest sifting exchange and returns the retained slots plus the
// messages that crossed the classical channel, already appended to transcript.
SiftResult sift(const Variant& variant, const AliceLog& alice, const BobLog& bob,
                const Keystream& ks, Transcript& transcript);

// P2b ordinal comparison core: retained ordinals where the encrypted basis
// lists agree. Exposed for direct testing against worked examples.
std::vector<std::size_t> p2b_retained_ordinals(const Bits& sender_payload,
                                               const Bits& receiver_payload);

// P1b post-sift mask: bit i of the result is bits[i] xor mask_bits[i].
Bits apply_post_sift_keystream(const Bits& sifted_bits, const Bits& mask_bits);
Bits apply_post_sift_keystream(const Bits& sifted_bits, const Keystream& ks);

// Statistical EC model: corrects a uniformly random subset of the mismatches,
// at most floor(delta * len) of them, and reports which positions were fixed.
EcResult error_correct(const Bits& reference, const Bits& noisy, double delta,
                       Rng& rng);

// Exact Hamming fraction. Throws InsufficientDataError on empty input and
// LengthMismatchError on unequal lengths.
double estimate_qber(const Bits& reference, const Bits& noisy);

// accept iff qber <= theta_detect (boundary accepts).
Verdict session_verdict(double qber, double theta_detect);

struct AttackStrategy;  // adversary.hpp

// One full session: photon phase, sifting, optional post-sift mask, EC,
// verdict, privacy-amplification pass-through, key refresh. Deterministic in
// config.master_seed. With an attack, the outcome is the authenticating
// party's view of its session with Eve.
SessionOutcome run_session(const SessionConfig& config,
                           const std::optional<AttackStrategy>& attack = {});

}  // namespace qcauth
