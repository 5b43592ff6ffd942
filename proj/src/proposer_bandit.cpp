#include "ugsim/proposer_bandit.hpp"

#include <stdexcept>

namespace ugsim {

OfferGrid::OfferGrid(double total, std::size_t arm_count) : total_(total) {
  if (!(total > 0.0)) throw std::invalid_argument("total stake T must be positive");
  if (arm_count < 2) throw std::invalid_argument("offer grid needs at least 2 arms");
  offers_.resize(arm_count);
  const double k = static_cast<double>(arm_count - 1);
  for (std::size_t a = 0; a < arm_count; ++a) {
    offers_[a] = total * static_cast<double>(a) / k;
  }
}

std::int64_t BanditState::trials() const {
  std::int64_t n = 0;
  for (const auto& a : arms) n += a.successes + a.failures;
  return n;
}

double sample_beta(double a, double b, Rng& rng) { return rng.beta(a, b); }

std::vector<double> proposer_payoffs(const OfferGrid& grid, const Utility& proposer_u) {
  std::vector<double> out(grid.arm_count());
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = proposer_u(grid.total() - grid.offer(a));
  }
  return out;
}

Selection select_offer_with_betas(const BanditState& state, std::span<const double> payoffs,
                                  std::span<const double> betas) {
  const std::size_t n = state.arms.size();
  if (payoffs.size() != n || betas.size() != n) {
    throw std::invalid_argument("payoff and beta vectors must match the arm count");
  }
  std::size_t best = 0;
  double best_score = payoffs[0] * betas[0];
  for (std::size_t a = 1; a < n; ++a) {
    const double score = payoffs[a] * betas[a];
    if (score > best_score) {
      best = a;
      best_score = score;
    }
  }
  return {best, state.grid.offer(best)};
}

Selection select_offer(const BanditState& state, std::span<const double> payoffs, Rng& rng) {
  std::vector<double> betas(state.arms.size());
  for (std::size_t a = 0; a < betas.size(); ++a) {
    const auto& arm = state.arms[a];
    betas[a] = sample_beta(static_cast<double>(arm.successes) + 1.0,
                           static_cast<double>(arm.failures) + 1.0, rng);
  }
  return select_offer_with_betas(state, payoffs, betas);
}

Selection select_offer(const BanditState& state, const Utility& proposer_u, Rng& rng) {
  const auto payoffs = proposer_payoffs(state.grid, proposer_u);
  return select_offer(state, payoffs, rng);
}

void update(BanditState& state, std::size_t arm, bool accepted) {
  if (arm >= state.arms.size()) throw std::out_of_range("arm index out of range");
  if (accepted) {
    ++state.arms[arm].successes;
  } else {
    ++state.arms[arm].failures;
  }
}

}  // namespace ugsim
