#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ugsim/emotion_utility.hpp"
#include "ugsim/random.hpp"

namespace ugsim {

struct Outcome {
  double value;
  double probability;
};

/// A discrete gamble: distinct finite outcomes with strictly positive
/// probabilities summing to one (within 1e-9). Outcome order is preserved
/// and defines the inverse-CDF sampling order.
class Gamble {
 public:
  /// Throws std::invalid_argument when the invariants do not hold.
  explicit Gamble(std::vector<Outcome> outcomes);

  std::span<const Outcome> outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }

 private:
  std::vector<Outcome> outcomes_;
};

struct EstimatorConfig {
  int samples = 10;
  /// Floor on |u(o)| inside the proposal weights, keeps q* at full support.
  double epsilon = 1e-12;

  void validate() const;
};

struct ProposalDistribution {
  std::vector<double> probabilities;
};

std::vector<double> evaluate_utilities(const Gamble& g, const Utility& u);

/// MSE-optimal importance distribution over the gamble's outcomes:
///   q*(o) ∝ p(o) |u(o)| sqrt((1 + |u(o)| sqrt(s)) / (|u(o)| sqrt(s)))
/// with |u(o)| floored at cfg.epsilon. Deterministic.
ProposalDistribution build_qstar(const Gamble& g, std::span<const double> utilities,
                                 const EstimatorConfig& cfg);
ProposalDistribution build_qstar(const Gamble& g, const Utility& u, const EstimatorConfig& cfg);

/// Exact expected utility, sum of p(o) u(o).
double true_eu(const Gamble& g, const Utility& u);

/// Self-normalized importance-sampling estimator over a fixed gamble and
/// proposal. Construction does all the per-gamble work so repeated
/// estimates only cost the draws.
class ImportanceEstimator {
 public:
  ImportanceEstimator(const Gamble& g, std::vector<double> utilities,
                      const ProposalDistribution& proposal);

  /// q* proposal for (g, u, cfg).
  static ImportanceEstimator optimal(const Gamble& g, const Utility& u, const EstimatorConfig& cfg);
  /// Proposal equal to p itself (plain Monte Carlo, weights all one).
  static ImportanceEstimator direct(const Gamble& g, const Utility& u);

  /// Inverse-CDF categorical draw over the outcome order; one uniform.
  std::size_t draw(Rng& rng) const;

  /// Ê = sum(w_i u(o_i)) / sum(w_i), o_i ~ q, w_i = p(o_i) / q(o_i).
  /// Consumes exactly `samples` uniforms. The result is clamped to
  /// [min u, max u], which the exact quantity always satisfies, so float
  /// rounding cannot push it outside.
  double estimate(int samples, Rng& rng) const;

  std::span<const double> utilities() const { return utilities_; }
  std::span<const double> proposal() const { return proposal_; }
  double min_utility() const { return min_u_; }
  double max_utility() const { return max_u_; }

 private:
  std::vector<double> utilities_;
  std::vector<double> proposal_;
  std::vector<double> cdf_;
  std::vector<double> weights_;  // p / q
  double min_u_ = 0.0;
  double max_u_ = 0.0;
};

/// One SbEU estimate of expected utility. Consumes exactly cfg.samples
/// categorical draws from rng.
double estimate_eu(const Gamble& g, const Utility& u, const EstimatorConfig& cfg, Rng& rng);

}  // namespace ugsim
