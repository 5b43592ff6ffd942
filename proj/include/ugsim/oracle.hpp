#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ugsim/emotion_utility.hpp"
#include "ugsim/proposer_bandit.hpp"
#include "ugsim/random.hpp"
#include "ugsim/responder.hpp"

namespace ugsim {

struct AcceptanceEstimate {
  double probability;
  double standard_error;  // binomial, sqrt(p (1 - p) / reps)
};

/// Fraction of Accept over `reps` independent decisions (reps >= 1000).
/// Offers whose gamble is all gains or all losses are forced and return
/// exactly 1 or 0 without drawing.
AcceptanceEstimate acceptance_probability(double offer, const ResponderModel& model, int reps,
                                          Rng& rng);

struct RewardPoint {
  double offer;
  double p_accept;
  double standard_error;
  double expected_reward;  // proposer_u(T - offer) * p_accept
  double reward_error;     // proposer_u(T - offer) * standard_error
};

struct RewardCurve {
  std::vector<RewardPoint> points;

  /// Lowest-index arm with the highest expected reward.
  std::size_t argmax() const;
  /// (best - runner-up) / sqrt(se_best^2 + se_runner_up^2); +inf when both
  /// rewards are exact and the gap is positive.
  double gap_in_se() const;
};

/// Arm a uses the stream derive_seed(seed, {a}), so the curve does not depend
/// on evaluation order. Arms run in parallel when OpenMP is available.
RewardCurve reward_curve(const ResponderModel& model, const OfferGrid& grid,
                         const Utility& proposer_u, int reps, std::uint64_t seed);

/// Emotion -> arm index the reward curve should peak at.
struct CalibrationTarget {
  std::size_t neutral = 5;
  std::size_t negative = 6;
  std::size_t positive = 4;

  std::size_t arm_for(Emotion e) const;
  void validate(std::size_t arm_count) const;
};

/// Grids for the free Responder parameters. Scan order is lexicographic with
/// lambda_negative outermost and samples innermost, each grid in list order.
struct SearchSpace {
  std::vector<double> lambda_negative;
  std::vector<double> lambda_positive;
  std::vector<double> mean_frac;
  std::vector<double> sd_frac;
  std::vector<int> samples;

  std::size_t size() const;
};

struct CalibrationSettings {
  double total = 10.0;
  std::size_t arm_count = 11;
  double lambda_neutral = 2.25;
  double alpha = 1.0;
  double epsilon = 1e-12;
  int reps = 100000;
  std::uint64_t seed = 20220101;
  Utility proposer_u = [](double x) { return x; };
  double min_gap_se = 2.0;
  /// Evaluate the whole grid instead of stopping at the first match.
  bool scan_all = false;
};

struct CalibrationPoint {
  std::size_t index = 0;
  EmotionConfig emotions;
  double mean_frac = 0.0;
  double sd_frac = 0.0;
  int samples = 0;
};

struct CalibrationRow {
  CalibrationPoint point;
  Emotion emotion;
  std::size_t argmax_arm;
  double gap_in_se;
};

struct CalibrationResult {
  CalibrationPoint selected;
  /// Rows for every point scanned up to `selected` (or the full grid with
  /// scan_all), three per point in neutral, negative, positive order.
  std::vector<CalibrationRow> rows;
  std::vector<CalibrationPoint> feasible;
};

class CalibrationInfeasible : public std::runtime_error {
 public:
  explicit CalibrationInfeasible(std::vector<CalibrationRow> rows);
  const std::vector<CalibrationRow>& rows() const { return rows_; }

 private:
  std::vector<CalibrationRow> rows_;
};

/// Grid search for Responder parameters whose reward-curve argmax matches the
/// target for every emotion with a gap above min_gap_se standard errors.
/// Throws std::invalid_argument on an empty grid or a grid value breaking
/// the lambda ordering, and CalibrationInfeasible when nothing matches.
CalibrationResult calibrate(const CalibrationTarget& target, const SearchSpace& space,
                            const CalibrationSettings& settings);

namespace reference {

/// Serial versions of the parallel kernels above, with identical results.
RewardCurve reward_curve(const ResponderModel& model, const OfferGrid& grid,
                         const Utility& proposer_u, int reps, std::uint64_t seed);
CalibrationResult calibrate(const CalibrationTarget& target, const SearchSpace& space,
                            const CalibrationSettings& settings);

}  // namespace reference

}  // namespace ugsim
