#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ugsim/emotion_utility.hpp"
#include "ugsim/random.hpp"
#include "ugsim/sbeu.hpp"

namespace ugsim {

/// The Responder's expectation (reference point) distribution over money levels.
struct ExpectationBelief {
  std::vector<double> levels;
  std::vector<double> probabilities;

  /// Checks alignment, positivity, normalization and levels in [0, total].
  void validate(double total) const;
};

/// Discretized Gaussian with mean mean_frac*T and sd sd_frac*T on the uniform
/// grid {0, T/(n-1), ..., T}, renormalized to sum to one.
ExpectationBelief default_belief(double total, double mean_frac, double sd_frac, int grid_size);

enum class Decision { Reject, Accept };

struct ResponderModel {
  double total = 10.0;
  ExpectationBelief belief;
  UtilityParams params;
  EstimatorConfig estimator;
  Emotion emotion = Emotion::Neutral;

  /// Builds a model whose utility params come from the emotion config.
  static ResponderModel make(double total, ExpectationBelief belief, Emotion emotion,
                             const EmotionConfig& emotions, EstimatorConfig estimator);

  void validate() const;
};

/// Gamble over relative payoffs offer - e, one outcome per expectation level,
/// with exactly-equal differences merged.
Gamble offer_gamble(double offer, const ResponderModel& model);

/// Accepts iff the SbEU estimate of E[value(offer - e)] is strictly positive.
/// Consumes exactly model.estimator.samples draws from rng.
Decision decide(double offer, const ResponderModel& model, Rng& rng);

/// A Responder with the estimator for every offer on a fixed grid prepared
/// up front. decide(i, rng) is draw-for-draw identical to
/// decide(offers[i], model, rng).
class Responder {
 public:
  Responder(ResponderModel model, std::span<const double> offers);

  Decision decide(std::size_t offer_index, Rng& rng) const;
  const ResponderModel& model() const { return model_; }
  const ImportanceEstimator& estimator(std::size_t offer_index) const {
    return estimators_.at(offer_index);
  }

 private:
  ResponderModel model_;
  std::vector<ImportanceEstimator> estimators_;
};

}  // namespace ugsim
