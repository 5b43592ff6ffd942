#include "ugsim/responder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ugsim {

void ExpectationBelief::validate(double total) const {
  if (levels.empty() || levels.size() != probabilities.size()) {
    throw std::invalid_argument("belief levels and probabilities must be non-empty and aligned");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(probabilities[i] > 0.0)) {
      throw std::invalid_argument("belief probabilities must be strictly positive");
    }
    if (!(levels[i] >= 0.0 && levels[i] <= total)) {
      throw std::invalid_argument("belief levels must lie in [0, T]");
    }
  }
  const double sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("belief probabilities must sum to 1");
  }
}

ExpectationBelief default_belief(double total, double mean_frac, double sd_frac, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("belief grid needs at least 2 points");
  if (!(total > 0.0)) throw std::invalid_argument("total stake T must be positive");
  if (!(mean_frac > 0.0 && mean_frac < 1.0)) {
    throw std::invalid_argument("mean_frac must lie in (0, 1)");
  }
  if (!(sd_frac > 0.0)) throw std::invalid_argument("sd_frac must be positive");

  const double mean = mean_frac * total;
  const double sd = sd_frac * total;
  ExpectationBelief b;
  b.levels.resize(grid_size);
  b.probabilities.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double level = total * i / (grid_size - 1);
    const double z = (level - mean) / sd;
    b.levels[i] = level;
    b.probabilities[i] = std::exp(-0.5 * z * z);
  }
  const double norm = std::accumulate(b.probabilities.begin(), b.probabilities.end(), 0.0);
  if (!(norm > 0.0)) throw std::domain_error("belief densities underflow to zero");
  for (double& p : b.probabilities) {
    p /= norm;
    if (!(p > 0.0)) throw std::domain_error("belief density underflows on the grid");
  }
  return b;
}

ResponderModel ResponderModel::make(double total, ExpectationBelief belief, Emotion emotion,
                                    const EmotionConfig& emotions, EstimatorConfig estimator) {
  ResponderModel m{total, std::move(belief), params_for_emotion(emotion, emotions), estimator,
                   emotion};
  m.validate();
  return m;
}

void ResponderModel::validate() const {
  if (!(total > 0.0)) throw std::invalid_argument("total stake T must be positive");
  belief.validate(total);
  params.validate();
  estimator.validate();
}

Gamble offer_gamble(double offer, const ResponderModel& model) {
  if (!(offer >= 0.0 && offer <= model.total)) {
    throw std::invalid_argument("offer must lie in [0, T]");
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(model.belief.levels.size());
  for (std::size_t i = 0; i < model.belief.levels.size(); ++i) {
    const double z = offer - model.belief.levels[i];
    auto same = std::find_if(outcomes.begin(), outcomes.end(),
                             [z](const Outcome& o) { return o.value == z; });
    if (same != outcomes.end()) {
      same->probability += model.belief.probabilities[i];
    } else {
      outcomes.push_back({z, model.belief.probabilities[i]});
    }
  }
  return Gamble(std::move(outcomes));
}

namespace {

ImportanceEstimator prepare(double offer, const ResponderModel& model) {
  const Gamble g = offer_gamble(offer, model);
  const UtilityParams params = model.params;
  return ImportanceEstimator::optimal(g, [params](double z) { return value(z, params); },
                                      model.estimator);
}

Decision decide_with(const ImportanceEstimator& est, int samples, Rng& rng) {
  return est.estimate(samples, rng) > 0.0 ? Decision::Accept : Decision::Reject;
}

}  // namespace

Decision decide(double offer, const ResponderModel& model, Rng& rng) {
  return decide_with(prepare(offer, model), model.estimator.samples, rng);
}

Responder::Responder(ResponderModel model, std::span<const double> offers)
    : model_(std::move(model)) {
  model_.validate();
  estimators_.reserve(offers.size());
  for (double offer : offers) estimators_.push_back(prepare(offer, model_));
}

Decision Responder::decide(std::size_t offer_index, Rng& rng) const {
  return decide_with(estimators_.at(offer_index), model_.estimator.samples, rng);
}

}  // namespace ugsim
