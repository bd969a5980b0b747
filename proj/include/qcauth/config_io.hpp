#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcauth/analysis.hpp"

namespace qcauth {

enum class ReportFormat : std::uint8_t { json, csv };
ReportFormat format_from_string(std::string_view name);  // throws ConfigError

// Everything one experiment needs: a session config, the attack strategy,
// trial count, and output options.
struct ExperimentConfig {
  SessionConfig session;
  AttackStrategy attack;
  std::size_t n_trials = 8;
  ReportFormat format = ReportFormat::json;
  std::optional<std::string> transcript_path;

  void validate() const;  // session + attack + cross-field checks

  std::optional<AttackStrategy> attack_or_none() const;
};

// Parses the JSON config file schema. Unknown keys are rejected with a
// ConfigError naming them.
ExperimentConfig load_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Effective-config echo included in every report.
std::string config_to_json(const ExperimentConfig& config);

// Single-session report: {config, outcome} with the outcome fields
// qber, verdict, sifted_count, variant, delta, theta_detect, seed.
std::string outcome_report_json(const ExperimentConfig& config,
                                const SessionOutcome& outcome);

// One aggregate row per sweep value. Fixed column set:
// variant, attack, delta, policy, trials, mean_qber, std, ci_lo, ci_hi,
// detection_rate, expected_qber, pass.
struct AggregateRow {
  std::string variant;
  std::string attack;
  double delta = 0.0;
  std::string policy;
  std::size_t trials = 0;
  double mean_qber = 0.0;
  double std_qber = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double detection_rate = 0.0;
  std::optional<double> expected_qber;
  std::optional<bool> pass;
};

AggregateRow make_aggregate_row(const ExperimentConfig& config,
                                const TrialAggregate& aggregate);

std::string rows_to_csv(const ExperimentConfig& base,
                        const std::vector<AggregateRow>& rows);
std::string rows_to_json(const ExperimentConfig& base,
                         const std::vector<AggregateRow>& rows);

}  // namespace qcauth
