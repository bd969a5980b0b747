#include "qcauth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcauth/errors.hpp"
#include "qcauth/rng.hpp"

namespace qcauth {

TrialAggregate run_trials(const SessionConfig& config,
                          const std::optional<AttackStrategy>& attack,
                          std::size_t n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw ConfigError("trials must be at least 1");
  config.validate();
  if (attack) attack->validate(config);

  TrialAggregate agg;
  std::vector<double> qbers;
  double sifted_sum = 0.0;
  double detected_fraction_sum = 0.0;
  double retained_fraction_sum = 0.0;
  std::size_t rejects = 0;
  EveAggregate eve_sum;
  std::size_t eve_count = 0;

  for (std::size_t i = 0; i < n_trials; ++i) {
    SessionConfig trial = config;
    trial.master_seed = derive_seed(seed, "trial/" + std::to_string(i));
    trial.record_transcript = false;
    SessionOutcome out = run_session(trial, attack);
    if (out.verdict == Verdict::inconclusive) {
      ++agg.inconclusive;
      continue;
    }
    qbers.push_back(out.qber);
    sifted_sum += static_cast<double>(out.sifted_count);
    detected_fraction_sum += static_cast<double>(out.detected_count) /
                             static_cast<double>(trial.num_pulses);
    if (out.detected_count > 0) {
      retained_fraction_sum += static_cast<double>(out.sifted_count) /
                               static_cast<double>(out.detected_count);
    }
    rejects += (out.verdict == Verdict::reject);
    if (out.eve) {
      ++eve_count;
      eve_sum.mean_ks_sifted_error += out.eve->ks_sifted_error_rate;
      eve_sum.mean_ks_full_error += out.eve->ks_full_error_rate;
      eve_sum.mean_overlap_ae += out.eve->overlap_ae_fraction;
      eve_sum.mean_overlap_eb += out.eve->overlap_eb_fraction;
      eve_sum.mean_known_fraction += static_cast<double>(out.eve->known_count) /
                                     static_cast<double>(trial.num_pulses);
    }
  }

  agg.trials = qbers.size();
  if (agg.trials == 0) {
    agg.mean_qber = std::numeric_limits<double>::quiet_NaN();
    agg.std_qber = std::numeric_limits<double>::quiet_NaN();
    agg.detection_rate = std::numeric_limits<double>::quiet_NaN();
    agg.ci95 = {agg.mean_qber, agg.mean_qber};
    return agg;
  }

  const double t = static_cast<double>(agg.trials);
  double sum = 0.0;
  for (double q : qbers) sum += q;
  agg.mean_qber = sum / t;
  double ss = 0.0;
  for (double q : qbers) ss += (q - agg.mean_qber) * (q - agg.mean_qber);
  agg.std_qber = agg.trials > 1 ? std::sqrt(ss / (t - 1.0)) : 0.0;
  const double half = 1.959963984540054 * agg.std_qber / std::sqrt(t);
  agg.ci95 = {agg.mean_qber - half, agg.mean_qber + half};
  agg.detection_rate = static_cast<double>(rejects) / t;
  agg.mean_sifted = sifted_sum / t;
  agg.mean_detected_fraction = detected_fraction_sum / t;
  agg.mean_retained_fraction = retained_fraction_sum / t;
  if (eve_count > 0) {
    const double e = static_cast<double>(eve_count);
    agg.eve = EveAggregate{eve_sum.mean_ks_sifted_error / e,
                           eve_sum.mean_ks_full_error / e,
                           eve_sum.mean_overlap_ae / e,
                           eve_sum.mean_overlap_eb / e,
                           eve_sum.mean_known_fraction / e};
  }
  return agg;
}

ComparisonResult compare_to_prediction(const TrialAggregate& aggregate,
                                       const Prediction& prediction,
                                       double tolerance) {
  ComparisonResult result;
  result.mean_qber = aggregate.mean_qber;
  result.expected_qber = prediction.expected_qber;
  result.abs_diff = std::fabs(aggregate.mean_qber - prediction.expected_qber);
  result.tolerance = tolerance;
  result.pass = result.abs_diff <= tolerance;
  result.report = std::string(result.pass ? "pass" : "fail") + ": mean_qber=" +
                  std::to_string(result.mean_qber) +
                  " expected=" + std::to_string(result.expected_qber) +
                  " |diff|=" + std::to_string(result.abs_diff) +
                  " tol=" + std::to_string(tolerance);
  return result;
}

double normal_quantile(double p) {
  // Acklam's rational approximation, |relative error| < 1.15e-9.
  if (p <= 0.0 || p >= 1.0) {
    throw ConfigError("quantile level must be in (0,1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

Interval binomial_ci(std::size_t successes, std::size_t n, double level) {
  if (n < 1) throw ConfigError("binomial_ci requires n >= 1");
  if (successes > n) throw ConfigError("successes cannot exceed n");
  if (level <= 0.0 || level >= 1.0) {
    throw ConfigError("confidence level must be in (0,1)");
  }
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double z = normal_quantile(0.5 + level / 2.0);
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return Interval{std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace qcauth
