#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ugsim/emotion_utility.hpp"
#include "ugsim/proposer_bandit.hpp"
#include "ugsim/responder.hpp"

namespace ugsim {

enum class ProposerUtility { Linear, ResponderGain };

std::string_view to_string(ProposerUtility u);
ProposerUtility parse_proposer_utility(std::string_view name);

/// Proposer's utility of the amount it keeps: x, or the Responder's
/// gain-domain value x^alpha.
Utility make_proposer_utility(ProposerUtility kind, double alpha);

struct ExperimentConfig {
  double total = 10.0;
  std::size_t arm_count = 11;
  Emotion emotion = Emotion::Neutral;
  EmotionConfig emotions;
  double mean_frac = 0.4;
  double sd_frac = 0.15;
  int samples = 10;
  double epsilon = 1e-12;
  std::int64_t n_trials = 10000;
  int n_proposers = 10;
  std::uint64_t master_seed = 1;
  ProposerUtility proposer_u = ProposerUtility::Linear;

  void validate() const;
  OfferGrid grid() const { return OfferGrid(total, arm_count); }
  ResponderModel responder_model() const;
  /// Same model under another emotion.
  ResponderModel responder_model(Emotion e) const;
};

struct TrialRecord {
  int proposer_id;
  std::int64_t trial;  // 1-based
  std::size_t arm;
  double offer_frac;
  bool accepted;

  bool operator==(const TrialRecord&) const = default;
};

struct ExperimentResult {
  /// Ordered by proposer id, then trial.
  std::vector<TrialRecord> records;
  std::vector<BanditState> final_states;
};

/// Runs n_proposers independent Thompson Sampling Proposers for n_trials
/// each. Proposer m owns the stream derive_seed(master_seed, {m}); both its
/// posterior draws and its Responder's samples come from that stream.
/// Proposers run in parallel when OpenMP is available.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Mean over proposers of cumulative offer frequencies, row-major
/// [trial][arm] with trial t stored at row t - 1.
struct AggregateCurve {
  std::size_t arm_count = 0;
  std::vector<double> frequencies;

  std::size_t trials() const { return arm_count == 0 ? 0 : frequencies.size() / arm_count; }
  double at(std::size_t trial, std::size_t arm) const {
    return frequencies.at((trial - 1) * arm_count + arm);
  }
  /// Arm with the highest frequency at the last trial (lowest index on ties).
  std::size_t final_argmax() const;
  /// Final-trial frequency of the leader minus that of the runner-up.
  double final_margin() const;
};

/// Throws std::invalid_argument if records are not exactly one per
/// (proposer, trial) for the config's M and N.
AggregateCurve aggregate(const std::vector<TrialRecord>& records, const ExperimentConfig& cfg);

namespace reference {

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace reference

}  // namespace ugsim
