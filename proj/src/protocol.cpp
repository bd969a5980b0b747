#include "qcauth/protocol.hpp"

#include <algorithm>
#include <string>

#include "qcauth/errors.hpp"

namespace qcauth {

namespace {

// Arbitrary fixed default so a bare config is runnable and reproducible.
constexpr std::string_view kDefaultSecretHex = "8d4f2a9c61e07b53f0c3d6a8124e9b75";

}  // namespace

VariantTag variant_from_string(std::string_view name) {
  if (name == "p1a") return VariantTag::p1a;
  if (name == "p1b") return VariantTag::p1b;
  if (name == "p2a") return VariantTag::p2a;
  if (name == "p2b") return VariantTag::p2b;
  throw ConfigError("unknown variant \"" + std::string(name) + "\"");
}

std::string_view to_string(VariantTag tag) {
  switch (tag) {
    case VariantTag::p1a: return "p1a";
    case VariantTag::p1b: return "p1b";
    case VariantTag::p2a: return "p2a";
    case VariantTag::p2b: return "p2b";
  }
  return "?";
}

Direction direction_from_string(std::string_view name) {
  if (name == "alice_authenticated") return Direction::alice_authenticated;
  if (name == "bob_authenticated") return Direction::bob_authenticated;
  throw ConfigError("unknown direction \"" + std::string(name) + "\"");
}

std::string_view to_string(Direction d) {
  return d == Direction::alice_authenticated ? "alice_authenticated"
                                             : "bob_authenticated";
}

std::string_view to_string(SiftKind kind) {
  switch (kind) {
    case SiftKind::basis_disclosure: return "basis_disclosure";
    case SiftKind::detection_times: return "detection_times";
    case SiftKind::valid_times: return "valid_times";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

SessionConfig::SessionConfig() : secret(SharedSecret::from_hex(kDefaultSecretHex)) {}

void SessionConfig::validate() const {
  if (num_pulses < 1) throw ConfigError("num_pulses must be at least 1");
  if (channel.p_loss < 0.0 || channel.p_loss > 1.0) {
    throw ConfigError("p_loss must be in [0,1]");
  }
  if (channel.p_noise < 0.0 || channel.p_noise > 1.0) {
    throw ConfigError("p_noise must be in [0,1]");
  }
  if (delta < 0.0 || delta > 1.0) throw ConfigError("delta must be in [0,1]");
  if (theta_detect < 0.0 || theta_detect >= 0.25) {
    throw ConfigError(
        "theta_detect must be in [0,0.25) to separate honest sessions from "
        "attacked ones");
  }
  if (secret.n() < kMinSecretBits) {
    throw ConfigError("secret must be at least 16 bits");
  }
  if (min_sifted < 1) throw ConfigError("min_sifted must be at least 1");
  if (num_pulses > max_stream_bits) {
    throw ConfigError("num_pulses exceeds max_stream_bits");
  }
  if (variant.direction == Direction::bob_authenticated &&
      variant.tag != VariantTag::p2b) {
    throw ConfigError(
        "direction bob_authenticated is only supported for variant p2b");
  }
}

QuantumSymbol alice_prepare(VariantTag tag, std::size_t t, Bit data_bit,
                            Basis basis, const Keystream& ks) {
  switch (tag) {
    case VariantTag::p1a:
      return QuantumSymbol{basis, static_cast<Bit>((data_bit ^ ks.bit(t)) & 1u)};
    case VariantTag::p2a:
      return QuantumSymbol{basis_xor(basis, ks.bit(t)), data_bit};
    case VariantTag::p1b:
    case VariantTag::p2b:
      return QuantumSymbol{basis, data_bit};
  }
  return QuantumSymbol{basis, data_bit};
}

Basis bob_measurement_basis(VariantTag tag, std::size_t t, Basis basis,
                            const Keystream& ks) {
  if (tag == VariantTag::p2a) return basis_xor(basis, ks.bit(t));
  return basis;
}

Bit bob_record(VariantTag tag, std::size_t t, Bit measured, Basis /*basis*/,
               const Keystream& ks) {
  if (tag == VariantTag::p1a) {
    return static_cast<Bit>((measured ^ ks.bit(t)) & 1u);
  }
  return measured;
}

void check_sift_order(const Variant& variant,
                      const std::vector<SiftMessage>& messages) {
  struct Step {
    SiftKind kind;
    std::string_view sender;
    bool encrypted;
  };
  std::vector<Step> expected;
  if (variant.tag == VariantTag::p2b) {
    const bool reversed = variant.direction == Direction::bob_authenticated;
    expected = {{SiftKind::detection_times, "bob", false},
                {SiftKind::basis_disclosure, reversed ? "bob" : "alice", true},
                {SiftKind::valid_times, reversed ? "alice" : "bob", false}};
  } else {
    expected = {{SiftKind::basis_disclosure, "alice", false},
                {SiftKind::valid_times, "bob", false}};
  }
  if (messages.size() != expected.size()) {
    throw ProtocolViolationError("unexpected number of sifting messages");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (messages[i].kind != expected[i].kind ||
        messages[i].sender != expected[i].sender) {
      throw ProtocolViolationError(
          "sifting message " + std::to_string(i) + " out of order: got " +
          std::string(to_string(messages[i].kind)) + " from " +
          messages[i].sender);
    }
    if (messages[i].encrypted != expected[i].encrypted) {
      throw ProtocolViolationError(
          "sifting message " + std::to_string(i) +
          " has the wrong encryption layer");
    }
  }
}

namespace {

Bits basis_bits(const std::vector<Basis>& bases) {
  Bits out(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) out[i] = basis_bit(bases[i]);
  return out;
}

void append_to_transcript(Transcript& transcript, const SiftMessage& msg,
                          std::size_t num_pulses) {
  std::string payload = msg.kind == SiftKind::basis_disclosure
                            ? bits_to_hex(msg.bit_payload)
                            : times_to_hex(msg.time_payload);
  transcript.append(msg.sender, std::string(to_string(msg.kind)),
                    std::move(payload), 0, num_pulses);
}

}  // namespace

std::vector<std::size_t> p2b_retained_ordinals(const Bits& sender_payload,
                                               const Bits& receiver_payload) {
  if (sender_payload.size() != receiver_payload.size()) {
    throw LengthMismatchError("encrypted basis lists differ in length");
  }
  std::vector<std::size_t> ordinals;
  for (std::size_t i = 0; i < sender_payload.size(); ++i) {
    if (sender_payload[i] == receiver_payload[i]) ordinals.push_back(i);
  }
  return ordinals;
}

SiftResult sift(const Variant& variant, const AliceLog& alice, const BobLog& bob,
                const Keystream& ks, Transcript& transcript) {
  const std::size_t n = alice.bits.size();
  SiftResult result;

  if (variant.tag == VariantTag::p2b) {
    // Bob first discloses his detection events; both sides then restrict
    // their basis lists to those times and compare them under the keystream.
    std::vector<std::size_t> detections;
    for (std::size_t t = 0; t < n; ++t) {
      if (bob.detected[t]) detections.push_back(t);
    }
    result.messages.push_back(
        SiftMessage{SiftKind::detection_times, "bob", {}, detections, false});

    Bits alice_restricted(detections.size());
    Bits bob_restricted(detections.size());
    for (std::size_t i = 0; i < detections.size(); ++i) {
      alice_restricted[i] = basis_bit(alice.bases[detections[i]]);
      bob_restricted[i] = basis_bit(bob.bases[detections[i]]);
    }
    Bits mask =
        detections.empty() ? Bits{} : ks.expand(0, detections.size());
    Bits alice_payload = xor_bits(alice_restricted, mask);
    Bits bob_payload = xor_bits(bob_restricted, mask);

    const bool reversed = variant.direction == Direction::bob_authenticated;
    // Forward direction: Alice sends {y'} xor F(K); Bob compares locally.
    // Reversed: Bob sends {z'} xor F(K) and Alice answers with valid times.
    result.messages.push_back(SiftMessage{SiftKind::basis_disclosure,
                                          reversed ? "bob" : "alice", {},
                                          {},
                                          false});
    result.messages.back().bit_payload = reversed ? bob_payload : alice_payload;
    result.messages.back().encrypted = true;

    std::vector<std::size_t> ordinals =
        p2b_retained_ordinals(alice_payload, bob_payload);
    result.retained.reserve(ordinals.size());
    for (std::size_t i : ordinals) result.retained.push_back(detections[i]);
    result.messages.push_back(SiftMessage{SiftKind::valid_times,
                                          reversed ? "alice" : "bob", {},
                                          result.retained, false});
  } else {
    // Alice publicly discloses her basis choices; Bob answers with the times
    // that have valid bits (detection and matching basis).
    result.messages.push_back(SiftMessage{
        SiftKind::basis_disclosure, "alice", basis_bits(alice.bases), {}, false});
    for (std::size_t t = 0; t < n; ++t) {
      if (bob.detected[t] && alice.bases[t] == bob.bases[t]) {
        result.retained.push_back(t);
      }
    }
    result.messages.push_back(
        SiftMessage{SiftKind::valid_times, "bob", {}, result.retained, false});
  }

  check_sift_order(variant, result.messages);
  for (const SiftMessage& msg : result.messages) {
    append_to_transcript(transcript, msg, n);
  }
  return result;
}

Bits apply_post_sift_keystream(const Bits& sifted_bits, const Bits& mask_bits) {
  if (mask_bits.size() < sifted_bits.size()) {
    throw LengthMismatchError("mask shorter than the sifted sequence");
  }
  Bits out(sifted_bits.size());
  for (std::size_t i = 0; i < sifted_bits.size(); ++i) {
    out[i] = static_cast<Bit>((sifted_bits[i] ^ mask_bits[i]) & 1u);
  }
  return out;
}

Bits apply_post_sift_keystream(const Bits& sifted_bits, const Keystream& ks) {
  if (sifted_bits.empty()) return {};
  return apply_post_sift_keystream(sifted_bits, ks.expand(0, sifted_bits.size()));
}

EcResult error_correct(const Bits& reference, const Bits& noisy, double delta,
                       Rng& rng) {
  if (reference.size() != noisy.size()) {
    throw LengthMismatchError("reference and noisy keys differ in length");
  }
  std::vector<std::size_t> mismatches;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] != noisy[i]) mismatches.push_back(i);
  }
  const auto budget = static_cast<std::size_t>(
      delta * static_cast<double>(reference.size()));
  const std::size_t correct_count = std::min(mismatches.size(), budget);

  // Uniform random subset of the mismatches: partial Fisher-Yates.
  for (std::size_t i = 0; i < correct_count; ++i) {
    const std::size_t j = i + rng.below(mismatches.size() - i);
    std::swap(mismatches[i], mismatches[j]);
  }
  std::vector<std::size_t> revealed(mismatches.begin(),
                                    mismatches.begin() +
                                        static_cast<std::ptrdiff_t>(correct_count));
  std::sort(revealed.begin(), revealed.end());

  EcResult result;
  result.corrected_key = noisy;
  for (std::size_t pos : revealed) result.corrected_key[pos] = reference[pos];
  result.residual_error_count = mismatches.size() - correct_count;
  result.revealed_error_positions = std::move(revealed);
  return result;
}

double estimate_qber(const Bits& reference, const Bits& noisy) {
  if (reference.empty() || noisy.empty()) {
    throw InsufficientDataError("cannot estimate QBER of an empty sequence");
  }
  return static_cast<double>(hamming_distance(reference, noisy)) /
         static_cast<double>(reference.size());
}

Verdict session_verdict(double qber, double theta_detect) {
  return qber <= theta_detect ? Verdict::accept : Verdict::reject;
}

}  // namespace qcauth
