#include "qcauth/transcript.hpp"

#include "json.hpp"

namespace qcauth {

void Transcript::append(std::string sender, std::string kind,
                        std::string payload_hex, std::size_t slot_lo,
                        std::size_t slot_hi) {
  if (!enabled_) return;
  records_.push_back(TranscriptRecord{records_.size(), std::move(sender),
                                      std::move(kind), std::move(payload_hex),
                                      {slot_lo, slot_hi}});
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const TranscriptRecord& r : records_) {
    nlohmann::ordered_json line{{"seq", r.seq},
                                {"sender", r.sender},
                                {"kind", r.kind},
                                {"payload_hex", r.payload_hex},
                                {"slot_range", r.slot_range}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace qcauth
