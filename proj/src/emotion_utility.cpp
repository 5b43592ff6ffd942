#include "ugsim/emotion_utility.hpp"

#include <cmath>
#include <stdexcept>

namespace ugsim {

std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::Neutral: return "neutral";
    case Emotion::Negative: return "negative";
    case Emotion::Positive: return "positive";
  }
  return "unknown";
}

Emotion parse_emotion(std::string_view name) {
  if (name == "neutral") return Emotion::Neutral;
  if (name == "negative") return Emotion::Negative;
  if (name == "positive") return Emotion::Positive;
  throw std::invalid_argument("unknown emotion '" + std::string(name) +
                              "' (expected neutral, negative or positive)");
}

void UtilityParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be a positive finite number");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
}

void EmotionConfig::validate() const {
  for (double l : {lambda_neutral, lambda_negative, lambda_positive}) {
    UtilityParams{l, alpha}.validate();
  }
  if (!(lambda_positive < lambda_neutral && lambda_neutral < lambda_negative)) {
    throw std::invalid_argument(
        "emotion config requires lambda_positive < lambda_neutral < lambda_negative");
  }
}

double value(double z, const UtilityParams& params) {
  if (z >= 0.0) {
    return params.alpha == 1.0 ? z : std::pow(z, params.alpha);
  }
  const double loss = params.alpha == 1.0 ? -z : std::pow(-z, params.alpha);
  return -params.lambda * loss;
}

UtilityParams params_for_emotion(Emotion state, const EmotionConfig& cfg) {
  cfg.validate();
  switch (state) {
    case Emotion::Neutral: return {cfg.lambda_neutral, cfg.alpha};
    case Emotion::Negative: return {cfg.lambda_negative, cfg.alpha};
    case Emotion::Positive: return {cfg.lambda_positive, cfg.alpha};
  }
  throw std::invalid_argument("invalid emotion state");
}

Utility value_function(const UtilityParams& params) {
  params.validate();
  return [params](double z) { return value(z, params); };
}

}  // namespace ugsim
