#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qcauth/adversary.hpp"
#include "qcauth/protocol.hpp"

namespace qcauth {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct EveAggregate {
  double mean_ks_sifted_error = 0.0;
  double mean_ks_full_error = 0.0;
  double mean_overlap_ae = 0.0;
  double mean_overlap_eb = 0.0;
  double mean_known_fraction = 0.0;  // known keystream indices / num_pulses
};

struct TrialAggregate {
  std::size_t trials = 0;        // conclusive sessions
  std::size_t inconclusive = 0;  // counted separately, excluded from means
  double mean_qber = 0.0;
  double std_qber = 0.0;
  Interval ci95{};               // normal-approximation CI for the mean
  double detection_rate = 0.0;   // fraction of conclusive trials with verdict reject
  double mean_sifted = 0.0;
  double mean_detected_fraction = 0.0;   // detections / pulses
  double mean_retained_fraction = 0.0;   // sifted / detections
  std::optional<EveAggregate> eve;
};

// Runs n_trials independent sessions with per-trial seeds derived from seed
// and folds the outcomes in trial order.
TrialAggregate run_trials(const SessionConfig& config,
                          const std::optional<AttackStrategy>& attack,
                          std::size_t n_trials, std::uint64_t seed);

struct ComparisonResult {
  bool pass = false;
  double mean_qber = 0.0;
  double expected_qber = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  std::string report;
};

// pass iff |mean_qber - expected_qber| <= tolerance.
ComparisonResult compare_to_prediction(const TrialAggregate& aggregate,
                                       const Prediction& prediction,
                                       double tolerance);

// Normal-approximation binomial confidence interval, clipped to [0,1].
Interval binomial_ci(std::size_t successes, std::size_t n, double level);

// Inverse standard normal CDF (Acklam's rational approximation).
double normal_quantile(double p);

}  // namespace qcauth
