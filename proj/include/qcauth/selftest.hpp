#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcauth {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the full acceptance suite, printing one line per criterion to out.
// Returns the per-criterion results; all-pass iff every .pass is true.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out,
                                                  std::uint64_t seed = 424242);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qcauth
