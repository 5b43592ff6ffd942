#include "ugsim/sbeu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ugsim {

Gamble::Gamble(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) {
    throw std::invalid_argument("gamble needs at least one outcome");
  }
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if (!std::isfinite(o.value)) {
      throw std::invalid_argument("gamble outcomes must be finite");
    }
    if (!(o.probability > 0.0)) {
      throw std::invalid_argument("gamble probabilities must be strictly positive");
    }
    total += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("gamble probabilities must sum to 1");
  }
  std::vector<double> values;
  values.reserve(outcomes_.size());
  for (const auto& o : outcomes_) values.push_back(o.value);
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw std::invalid_argument("gamble outcomes must be distinct");
  }
}

void EstimatorConfig::validate() const {
  if (samples < 1) {
    throw std::invalid_argument("sample count s must be at least 1");
  }
  if (!(epsilon > 0.0 && epsilon <= 1e-6)) {
    throw std::invalid_argument("epsilon must lie in (0, 1e-6]");
  }
}

std::vector<double> evaluate_utilities(const Gamble& g, const Utility& u) {
  std::vector<double> out;
  out.reserve(g.size());
  for (const auto& o : g.outcomes()) out.push_back(u(o.value));
  return out;
}

ProposalDistribution build_qstar(const Gamble& g, std::span<const double> utilities,
                                 const EstimatorConfig& cfg) {
  cfg.validate();
  if (utilities.size() != g.size()) {
    throw std::invalid_argument("utility vector does not match gamble size");
  }
  const double root_s = std::sqrt(static_cast<double>(cfg.samples));
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mag = std::max(std::abs(utilities[i]), cfg.epsilon);
    const double scaled = mag * root_s;
    w[i] = g.outcomes()[i].probability * mag * std::sqrt((1.0 + scaled) / scaled);
  }
  const double norm = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::domain_error("degenerate proposal: normalization constant is not positive");
  }
  for (double& x : w) x /= norm;
  return {std::move(w)};
}

ProposalDistribution build_qstar(const Gamble& g, const Utility& u, const EstimatorConfig& cfg) {
  const auto utilities = evaluate_utilities(g, u);
  return build_qstar(g, utilities, cfg);
}

double true_eu(const Gamble& g, const Utility& u) {
  double eu = 0.0;
  for (const auto& o : g.outcomes()) eu += o.probability * u(o.value);
  return eu;
}

ImportanceEstimator::ImportanceEstimator(const Gamble& g, std::vector<double> utilities,
                                         const ProposalDistribution& proposal)
    : utilities_(std::move(utilities)), proposal_(proposal.probabilities) {
  if (utilities_.size() != g.size() || proposal_.size() != g.size()) {
    throw std::invalid_argument("estimator inputs do not match gamble size");
  }
  cdf_.resize(g.size());
  weights_.resize(g.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(proposal_[i] > 0.0)) {
      throw std::invalid_argument("proposal must cover the gamble's support");
    }
    acc += proposal_[i];
    cdf_[i] = acc;
    weights_[i] = g.outcomes()[i].probability / proposal_[i];
  }
  if (std::abs(acc - 1.0) > 1e-9) {
    throw std::invalid_argument("proposal probabilities must sum to 1");
  }
  cdf_.back() = 1.0;
  const auto [lo, hi] = std::minmax_element(utilities_.begin(), utilities_.end());
  min_u_ = *lo;
  max_u_ = *hi;
}

ImportanceEstimator ImportanceEstimator::optimal(const Gamble& g, const Utility& u,
                                                 const EstimatorConfig& cfg) {
  auto utilities = evaluate_utilities(g, u);
  auto q = build_qstar(g, utilities, cfg);
  return ImportanceEstimator(g, std::move(utilities), q);
}

ImportanceEstimator ImportanceEstimator::direct(const Gamble& g, const Utility& u) {
  ProposalDistribution p;
  for (const auto& o : g.outcomes()) p.probabilities.push_back(o.probability);
  return ImportanceEstimator(g, evaluate_utilities(g, u), p);
}

std::size_t ImportanceEstimator::draw(Rng& rng) const {
  const double x = rng.uniform();
  const std::size_t last = cdf_.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    if (x < cdf_[i]) return i;
  }
  return last;
}

double ImportanceEstimator::estimate(int samples, Rng& rng) const {
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < samples; ++k) {
    const std::size_t i = draw(rng);
    num += weights_[i] * utilities_[i];
    den += weights_[i];
  }
  return std::clamp(num / den, min_u_, max_u_);
}

double estimate_eu(const Gamble& g, const Utility& u, const EstimatorConfig& cfg, Rng& rng) {
  return ImportanceEstimator::optimal(g, u, cfg).estimate(cfg.samples, rng);
}

}  // namespace ugsim
