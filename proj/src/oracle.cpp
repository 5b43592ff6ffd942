#include "ugsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <tuple>

namespace ugsim {

namespace {

AcceptanceEstimate run_acceptance(const ImportanceEstimator& est, int samples, int reps, Rng& rng) {
  if (reps < 1000) throw std::invalid_argument("acceptance oracle needs reps >= 1000");
  if (est.min_utility() > 0.0) return {1.0, 0.0};
  if (est.max_utility() <= 0.0) return {0.0, 0.0};
  std::int64_t accepted = 0;
  for (int r = 0; r < reps; ++r) {
    if (est.estimate(samples, rng) > 0.0) ++accepted;
  }
  const double p = static_cast<double>(accepted) / reps;
  return {p, std::sqrt(p * (1.0 - p) / reps)};
}

RewardPoint reward_point(const Responder& responder, std::size_t arm, double offer, double payoff,
                         int reps, std::uint64_t seed) {
  Rng rng = Rng::for_stream(seed, {arm});
  const auto acc =
      run_acceptance(responder.estimator(arm), responder.model().estimator.samples, reps, rng);
  return {offer, acc.probability, acc.standard_error, payoff * acc.probability,
          std::abs(payoff) * acc.standard_error};
}

RewardCurve curve_impl(const ResponderModel& model, const OfferGrid& grid,
                       std::span<const double> payoffs, int reps, std::uint64_t seed,
                       bool parallel) {
  const Responder responder(model, grid.offers());
  RewardCurve curve;
  curve.points.resize(grid.arm_count());
  const auto n = static_cast<std::int64_t>(grid.arm_count());
#if defined(UGSIM_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::int64_t a = 0; a < n; ++a) {
    const auto arm = static_cast<std::size_t>(a);
    curve.points[arm] = reward_point(responder, arm, grid.offer(arm), payoffs[arm], reps, seed);
  }
  (void)parallel;
  return curve;
}

}  // namespace

AcceptanceEstimate acceptance_probability(double offer, const ResponderModel& model, int reps,
                                          Rng& rng) {
  const Responder responder(model, std::span<const double>(&offer, 1));
  return run_acceptance(responder.estimator(0), model.estimator.samples, reps, rng);
}

std::size_t RewardCurve::argmax() const {
  if (points.empty()) throw std::invalid_argument("empty reward curve");
  std::size_t best = 0;
  for (std::size_t a = 1; a < points.size(); ++a) {
    if (points[a].expected_reward > points[best].expected_reward) best = a;
  }
  return best;
}

double RewardCurve::gap_in_se() const {
  const std::size_t best = argmax();
  std::optional<std::size_t> second;
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (a == best) continue;
    if (!second || points[a].expected_reward > points[*second].expected_reward) second = a;
  }
  if (!second) return std::numeric_limits<double>::infinity();
  const auto& b = points[best];
  const auto& r = points[*second];
  const double gap = b.expected_reward - r.expected_reward;
  const double se = std::hypot(b.reward_error, r.reward_error);
  if (se == 0.0) return gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return gap / se;
}

RewardCurve reward_curve(const ResponderModel& model, const OfferGrid& grid,
                         const Utility& proposer_u, int reps, std::uint64_t seed) {
  return curve_impl(model, grid, proposer_payoffs(grid, proposer_u), reps, seed, true);
}

std::size_t CalibrationTarget::arm_for(Emotion e) const {
  switch (e) {
    case Emotion::Neutral: return neutral;
    case Emotion::Negative: return negative;
    case Emotion::Positive: return positive;
  }
  throw std::invalid_argument("invalid emotion");
}

void CalibrationTarget::validate(std::size_t arm_count) const {
  if (neutral >= arm_count || negative >= arm_count || positive >= arm_count) {
    throw std::invalid_argument("calibration target arm out of range");
  }
}

std::size_t SearchSpace::size() const {
  return lambda_negative.size() * lambda_positive.size() * mean_frac.size() * sd_frac.size() *
         samples.size();
}

CalibrationInfeasible::CalibrationInfeasible(std::vector<CalibrationRow> rows)
    : std::runtime_error("calibration infeasible: no grid point reproduces the target arms"),
      rows_(std::move(rows)) {}

namespace {

constexpr Emotion kEmotions[] = {Emotion::Neutral, Emotion::Negative, Emotion::Positive};

struct GridIndex {
  std::size_t lambda_negative, lambda_positive, mean_frac, sd_frac, samples;
};

GridIndex unravel(std::size_t index, const SearchSpace& space) {
  GridIndex g{};
  g.samples = index % space.samples.size();
  index /= space.samples.size();
  g.sd_frac = index % space.sd_frac.size();
  index /= space.sd_frac.size();
  g.mean_frac = index % space.mean_frac.size();
  index /= space.mean_frac.size();
  g.lambda_positive = index % space.lambda_positive.size();
  g.lambda_negative = index / space.lambda_positive.size();
  return g;
}

// A reward curve depends only on the emotion's own lambda and the belief
// and sample parameters; curves are keyed (and seeded) by exactly those, so
// a neutral curve is shared by every lambda_negative/lambda_positive pair.
using CurveKey = std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>;

CurveKey curve_key(Emotion e, const GridIndex& g) {
  std::size_t lambda = 0;
  if (e == Emotion::Negative) lambda = g.lambda_negative;
  if (e == Emotion::Positive) lambda = g.lambda_positive;
  return {static_cast<int>(e), lambda, g.mean_frac, g.sd_frac, g.samples};
}

void validate_space(const SearchSpace& space, const CalibrationSettings& settings) {
  if (space.size() == 0) throw std::invalid_argument("calibration search grid is empty");
  for (double l : space.lambda_negative) {
    if (!(l > settings.lambda_neutral)) {
      throw std::invalid_argument("lambda_negative grid values must exceed lambda_neutral");
    }
  }
  for (double l : space.lambda_positive) {
    if (!(l > 0.0 && l < settings.lambda_neutral)) {
      throw std::invalid_argument("lambda_positive grid values must lie in (0, lambda_neutral)");
    }
  }
  if (settings.reps < 1000) throw std::invalid_argument("calibration needs reps >= 1000");
}

class CurveEvaluator {
 public:
  CurveEvaluator(const SearchSpace& space, const CalibrationSettings& settings, bool parallel)
      : space_(space),
        settings_(settings),
        grid_(settings.total, settings.arm_count),
        payoffs_(proposer_payoffs(grid_, settings.proposer_u)),
        parallel_(parallel) {}

  CalibrationPoint point(std::size_t index) const {
    const GridIndex g = unravel(index, space_);
    CalibrationPoint p;
    p.index = index;
    p.emotions = {settings_.lambda_neutral, space_.lambda_negative[g.lambda_negative],
                  space_.lambda_positive[g.lambda_positive], settings_.alpha};
    p.mean_frac = space_.mean_frac[g.mean_frac];
    p.sd_frac = space_.sd_frac[g.sd_frac];
    p.samples = space_.samples[g.samples];
    return p;
  }

  /// Makes sure curves for points [begin, end) are cached.
  void prepare(std::size_t begin, std::size_t end) {
    std::vector<std::pair<CurveKey, std::size_t>> missing;
    for (std::size_t i = begin; i < end; ++i) {
      const GridIndex g = unravel(i, space_);
      for (Emotion e : kEmotions) {
        const CurveKey key = curve_key(e, g);
        const bool queued = std::any_of(missing.begin(), missing.end(),
                                        [&](const auto& m) { return m.first == key; });
        if (!cache_.contains(key) && !queued) missing.emplace_back(key, i);
      }
    }
    std::vector<RewardCurve> computed(missing.size());
    const auto n = static_cast<std::int64_t>(missing.size());
#if defined(UGSIM_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel_)
#endif
    for (std::int64_t k = 0; k < n; ++k) {
      const auto& [key, index] = missing[static_cast<std::size_t>(k)];
      computed[static_cast<std::size_t>(k)] = evaluate(key, point(index));
    }
    for (std::size_t k = 0; k < missing.size(); ++k) {
      cache_.emplace(missing[k].first, std::move(computed[k]));
    }
  }

  const RewardCurve& curve(std::size_t index, Emotion e) const {
    return cache_.at(curve_key(e, unravel(index, space_)));
  }

 private:
  RewardCurve evaluate(const CurveKey& key, const CalibrationPoint& p) const {
    const auto emotion = static_cast<Emotion>(std::get<0>(key));
    const auto belief =
        default_belief(settings_.total, p.mean_frac, p.sd_frac, static_cast<int>(grid_.arm_count()));
    const auto model = ResponderModel::make(settings_.total, belief, emotion, p.emotions,
                                            {p.samples, settings_.epsilon});
    const auto seed = derive_seed(
        settings_.seed, {static_cast<std::uint64_t>(std::get<0>(key)), std::get<1>(key),
                         std::get<2>(key), std::get<3>(key), std::get<4>(key)});
    return curve_impl(model, grid_, payoffs_, settings_.reps, seed, false);
  }

  const SearchSpace& space_;
  const CalibrationSettings& settings_;
  OfferGrid grid_;
  std::vector<double> payoffs_;
  bool parallel_;
  std::map<CurveKey, RewardCurve> cache_;
};

CalibrationResult calibrate_impl(const CalibrationTarget& target, const SearchSpace& space,
                                 const CalibrationSettings& settings, bool parallel) {
  validate_space(space, settings);
  target.validate(settings.arm_count);

  CurveEvaluator evaluator(space, settings, parallel);
  const std::size_t total_points = space.size();
  const std::size_t block = parallel ? 16 : 1;

  CalibrationResult result;
  std::optional<CalibrationPoint> selected;
  for (std::size_t begin = 0; begin < total_points; begin += block) {
    const std::size_t end = std::min(total_points, begin + block);
    evaluator.prepare(begin, end);
    for (std::size_t i = begin; i < end; ++i) {
      const CalibrationPoint p = evaluator.point(i);
      bool feasible = true;
      for (Emotion e : kEmotions) {
        const RewardCurve& c = evaluator.curve(i, e);
        const std::size_t arm = c.argmax();
        const double gap = c.gap_in_se();
        result.rows.push_back({p, e, arm, gap});
        feasible = feasible && arm == target.arm_for(e) && gap > settings.min_gap_se;
      }
      if (feasible) {
        result.feasible.push_back(p);
        if (!selected) selected = p;
        if (!settings.scan_all) {
          result.selected = *selected;
          return result;
        }
      }
    }
  }
  if (!selected) throw CalibrationInfeasible(std::move(result.rows));
  result.selected = *selected;
  return result;
}

}  // namespace

CalibrationResult calibrate(const CalibrationTarget& target, const SearchSpace& space,
                            const CalibrationSettings& settings) {
  return calibrate_impl(target, space, settings, true);
}

namespace reference {

RewardCurve reward_curve(const ResponderModel& model, const OfferGrid& grid,
                         const Utility& proposer_u, int reps, std::uint64_t seed) {
  return curve_impl(model, grid, proposer_payoffs(grid, proposer_u), reps, seed, false);
}

CalibrationResult calibrate(const CalibrationTarget& target, const SearchSpace& space,
                            const CalibrationSettings& settings) {
  return calibrate_impl(target, space, settings, false);
}

}  // namespace reference

}  // namespace ugsim
