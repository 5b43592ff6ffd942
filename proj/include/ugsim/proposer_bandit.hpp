#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ugsim/emotion_utility.hpp"
#include "ugsim/random.hpp"

namespace ugsim {

/// Equally spaced offers {0, T/k, ..., T}; k + 1 = arm_count (default 11).
class OfferGrid {
 public:
  explicit OfferGrid(double total = 10.0, std::size_t arm_count = 11);

  double total() const { return total_; }
  std::size_t arm_count() const { return offers_.size(); }
  double offer(std::size_t arm) const { return offers_.at(arm); }
  double fraction(std::size_t arm) const { return static_cast<double>(arm) / (arm_count() - 1); }
  std::span<const double> offers() const { return offers_; }

 private:
  double total_;
  std::vector<double> offers_;
};

struct ArmState {
  std::int64_t successes = 0;
  std::int64_t failures = 0;
};

struct BanditState {
  explicit BanditState(OfferGrid g) : grid(std::move(g)), arms(grid.arm_count()) {}

  OfferGrid grid;
  std::vector<ArmState> arms;

  std::int64_t trials() const;
};

struct Selection {
  std::size_t arm;
  double offer;
};

/// One draw from Beta(a, b).
double sample_beta(double a, double b, Rng& rng);

/// Proposer utility of the amount it keeps, u(T - a), for every arm.
std::vector<double> proposer_payoffs(const OfferGrid& grid, const Utility& proposer_u);

/// Scores s_a = payoffs[a] * betas[a] and returns the lowest-index argmax.
/// Test seam: takes the posterior draws as input.
Selection select_offer_with_betas(const BanditState& state, std::span<const double> payoffs,
                                  std::span<const double> betas);

/// Thompson step: draws beta_a ~ Beta(S_a + 1, F_a + 1) for each arm in
/// arm order (exactly arm_count draws), then picks the best score.
Selection select_offer(const BanditState& state, std::span<const double> payoffs, Rng& rng);
Selection select_offer(const BanditState& state, const Utility& proposer_u, Rng& rng);

/// Increments S or F of one arm. Throws std::out_of_range for a bad index.
void update(BanditState& state, std::size_t arm, bool accepted);

}  // namespace ugsim
