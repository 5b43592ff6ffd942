#include "ugsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ugsim {

std::string_view to_string(ProposerUtility u) {
  return u == ProposerUtility::Linear ? "linear" : "responder_gain";
}

ProposerUtility parse_proposer_utility(std::string_view name) {
  if (name == "linear") return ProposerUtility::Linear;
  if (name == "responder_gain") return ProposerUtility::ResponderGain;
  throw std::invalid_argument("unknown proposer utility '" + std::string(name) +
                              "' (expected linear or responder_gain)");
}

Utility make_proposer_utility(ProposerUtility kind, double alpha) {
  if (kind == ProposerUtility::Linear) return [](double x) { return x; };
  const UtilityParams gain{1.0, alpha};
  gain.validate();
  return [gain](double x) { return value(x, gain); };
}

void ExperimentConfig::validate() const {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
  if (n_proposers < 1) throw std::invalid_argument("n_proposers must be at least 1");
  emotions.validate();
  (void)grid();
  (void)responder_model();
}

ResponderModel ExperimentConfig::responder_model() const { return responder_model(emotion); }

ResponderModel ExperimentConfig::responder_model(Emotion e) const {
  return ResponderModel::make(total,
                              default_belief(total, mean_frac, sd_frac, static_cast<int>(arm_count)),
                              e, emotions, {samples, epsilon});
}

namespace {

BanditState run_proposer(int proposer_id, const ExperimentConfig& cfg, const Responder& responder,
                         std::span<const double> payoffs, std::span<TrialRecord> out) {
  Rng rng = Rng::for_stream(cfg.master_seed, {static_cast<std::uint64_t>(proposer_id)});
  BanditState state(cfg.grid());
  for (std::int64_t t = 0; t < cfg.n_trials; ++t) {
    const Selection sel = select_offer(state, payoffs, rng);
    const bool accepted = responder.decide(sel.arm, rng) == Decision::Accept;
    update(state, sel.arm, accepted);
    out[static_cast<std::size_t>(t)] = {proposer_id, t + 1, sel.arm, state.grid.fraction(sel.arm),
                                        accepted};
  }
  return state;
}

ExperimentResult run_impl(const ExperimentConfig& cfg, bool parallel) {
  cfg.validate();
  const OfferGrid grid = cfg.grid();
  const Responder responder(cfg.responder_model(), grid.offers());
  const auto payoffs =
      proposer_payoffs(grid, make_proposer_utility(cfg.proposer_u, cfg.emotions.alpha));

  const auto n = static_cast<std::size_t>(cfg.n_trials);
  ExperimentResult result;
  result.records.resize(n * static_cast<std::size_t>(cfg.n_proposers));
  result.final_states.assign(static_cast<std::size_t>(cfg.n_proposers), BanditState(grid));

#if defined(UGSIM_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int m = 0; m < cfg.n_proposers; ++m) {
    const auto offset = static_cast<std::size_t>(m) * n;
    result.final_states[static_cast<std::size_t>(m)] =
        run_proposer(m, cfg, responder, payoffs, std::span(result.records).subspan(offset, n));
  }
  (void)parallel;
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_impl(cfg, true); }

namespace reference {

ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_impl(cfg, false); }

}  // namespace reference

std::size_t AggregateCurve::final_argmax() const {
  const std::size_t n = trials();
  if (n == 0) throw std::invalid_argument("empty aggregate curve");
  std::size_t best = 0;
  for (std::size_t a = 1; a < arm_count; ++a) {
    if (at(n, a) > at(n, best)) best = a;
  }
  return best;
}

double AggregateCurve::final_margin() const {
  const std::size_t n = trials();
  const std::size_t best = final_argmax();
  double runner_up = 0.0;
  for (std::size_t a = 0; a < arm_count; ++a) {
    if (a != best) runner_up = std::max(runner_up, at(n, a));
  }
  return at(n, best) - runner_up;
}

AggregateCurve aggregate(const std::vector<TrialRecord>& records, const ExperimentConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.n_trials);
  const auto m = static_cast<std::size_t>(cfg.n_proposers);
  const std::size_t k = cfg.arm_count;
  if (records.size() != n * m) {
    throw std::invalid_argument("incomplete record set: expected " + std::to_string(n * m) +
                                " records, got " + std::to_string(records.size()));
  }
  // counts[t][a] = number of proposers offering arm a at trial t
  std::vector<std::int64_t> offered(n * k, 0);
  std::vector<char> seen(n * m, 0);
  for (const auto& r : records) {
    if (r.proposer_id < 0 || static_cast<std::size_t>(r.proposer_id) >= m || r.trial < 1 ||
        static_cast<std::size_t>(r.trial) > n || r.arm >= k) {
      throw std::invalid_argument("record out of range for this experiment config");
    }
    const std::size_t t = static_cast<std::size_t>(r.trial) - 1;
    char& s = seen[static_cast<std::size_t>(r.proposer_id) * n + t];
    if (s) throw std::invalid_argument("duplicate record for a (proposer, trial) pair");
    s = 1;
    ++offered[t * k + r.arm];
  }

  AggregateCurve curve;
  curve.arm_count = k;
  curve.frequencies.resize(n * k);
  std::vector<std::int64_t> cumulative(k, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const double denom = static_cast<double>(m) * static_cast<double>(t + 1);
    for (std::size_t a = 0; a < k; ++a) {
      cumulative[a] += offered[t * k + a];
      curve.frequencies[t * k + a] = static_cast<double>(cumulative[a]) / denom;
    }
  }
  return curve;
}

}  // namespace ugsim
