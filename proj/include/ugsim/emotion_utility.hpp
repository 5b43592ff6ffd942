#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace ugsim {

enum class Emotion { Neutral, Negative, Positive };

std::string_view to_string(Emotion e);
/// Parses "neutral", "negative" or "positive". Throws std::invalid_argument.
Emotion parse_emotion(std::string_view name);

/// Loss aversion and value curvature of the reference-dependent value function.
struct UtilityParams {
  double lambda = 2.25;
  double alpha = 1.0;

  void validate() const;
};

/// Per-emotion loss aversion. Negative emotions raise lambda, positive
/// emotions lower it: lambda_positive < lambda_neutral < lambda_negative.
struct EmotionConfig {
  double lambda_neutral = 2.25;
  double lambda_negative = 4.5;
  double lambda_positive = 1.0;
  double alpha = 1.0;

  void validate() const;
};

/// Piecewise-power value of a payoff relative to the reference point:
/// z^alpha for gains, -lambda * (-z)^alpha for losses.
double value(double z, const UtilityParams& params);

/// Throws std::invalid_argument when cfg breaks the lambda ordering.
UtilityParams params_for_emotion(Emotion state, const EmotionConfig& cfg);

using Utility = std::function<double(double)>;

Utility value_function(const UtilityParams& params);

}  // namespace ugsim
