#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace qcauth {

// One classical message or stage marker. Serialized as line-delimited JSON
// {seq, sender, kind, payload_hex, slot_range}.
struct TranscriptRecord {
  std::size_t seq;
  std::string sender;
  std::string kind;
  std::string payload_hex;
  std::array<std::size_t, 2> slot_range;  // half-open [lo, hi)
};

class Transcript {
 public:
  explicit Transcript(bool enabled = true) : enabled_(enabled) {}

  void append(std::string sender, std::string kind, std::string payload_hex,
              std::size_t slot_lo, std::size_t slot_hi);

  const std::vector<TranscriptRecord>& records() const { return records_; }
  bool enabled() const { return enabled_; }

  std::string to_jsonl() const;

 private:
  bool enabled_;
  std::vector<TranscriptRecord> records_;
};

}  // namespace qcauth
