#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "ugsim/experiment.hpp"

using namespace ugsim;

namespace {

ExperimentConfig small(int proposers, std::int64_t trials) {
  ExperimentConfig cfg = ugsim::testing::load_checked_in("neutral.cfg").experiment;
  cfg.n_proposers = proposers;
  cfg.n_trials = trials;
  return cfg;
}

}  // namespace

TEST(RunExperiment, SingleTrial) {
  const auto cfg = small(1, 1);
  const auto r = run_experiment(cfg);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].trial, 1);
  EXPECT_EQ(r.records[0].proposer_id, 0);
  EXPECT_EQ(r.final_states[0].trials(), 1);
}

TEST(RunExperiment, DeterministicForMasterSeed) {
  const auto cfg = small(2, 10);
  EXPECT_EQ(run_experiment(cfg).records, run_experiment(cfg).records);
  auto other = cfg;
  other.master_seed = cfg.master_seed + 1;
  EXPECT_NE(run_experiment(cfg).records, run_experiment(other).records);
}

TEST(RunExperiment, RecordLayoutAndConservation) {
  const auto cfg = small(3, 500);
  const auto r = run_experiment(cfg);
  ASSERT_EQ(r.records.size(), 1500u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    EXPECT_EQ(rec.proposer_id, static_cast<int>(i / 500));
    EXPECT_EQ(rec.trial, static_cast<std::int64_t>(i % 500) + 1);
    EXPECT_DOUBLE_EQ(rec.offer_frac, rec.arm / 10.0);
  }
  for (const auto& s : r.final_states) EXPECT_EQ(s.trials(), 500);
  // Counters agree with the log.
  std::vector<std::int64_t> accepted(11, 0);
  for (const auto& rec : r.records) {
    if (rec.proposer_id == 1 && rec.accepted) ++accepted[rec.arm];
  }
  for (std::size_t a = 0; a < 11; ++a) EXPECT_EQ(r.final_states[1].arms[a].successes, accepted[a]);
}

TEST(RunExperiment, ProposerStreamsIndependentOfCount) {
  // Proposer m's trajectory depends only on (master_seed, m).
  const auto two = run_experiment(small(2, 200));
  const auto five = run_experiment(small(5, 200));
  for (std::size_t i = 0; i < 400; ++i) EXPECT_EQ(two.records[i], five.records[i]);
}

TEST(RunExperiment, ValidatesConfig) {
  auto cfg = small(1, 1);
  cfg.n_trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = small(0, 1);
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = small(1, 1);
  cfg.emotions.lambda_positive = 3.0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(RunExperiment, ResponderGainUtilityIsSelectable) {
  auto cfg = small(1, 50);
  cfg.proposer_u = ProposerUtility::ResponderGain;
  cfg.emotions.alpha = 0.88;
  EXPECT_EQ(run_experiment(cfg).records.size(), 50u);
  EXPECT_NEAR(make_proposer_utility(ProposerUtility::ResponderGain, 0.88)(4.0), 3.3869812494501086,
              1e-12);
  EXPECT_EQ(parse_proposer_utility("responder_gain"), ProposerUtility::ResponderGain);
  EXPECT_THROW(parse_proposer_utility("quadratic"), std::invalid_argument);
}

TEST(Aggregate, SingleRecord) {
  auto cfg = small(1, 1);
  const auto c = aggregate({{0, 1, 3, 0.3, true}}, cfg);
  ASSERT_EQ(c.trials(), 1u);
  for (std::size_t a = 0; a < 11; ++a) EXPECT_EQ(c.at(1, a), a == 3 ? 1.0 : 0.0);
}

TEST(Aggregate, AveragesAcrossProposers) {
  auto cfg = small(2, 20);
  std::vector<TrialRecord> recs;
  for (int m = 0; m < 2; ++m) {
    for (std::int64_t t = 1; t <= 20; ++t) {
      const std::size_t arm = m == 0 ? 4 : 6;
      recs.push_back({m, t, arm, arm / 10.0, true});
    }
  }
  const auto c = aggregate(recs, cfg);
  for (std::size_t t = 1; t <= 20; ++t) {
    EXPECT_EQ(c.at(t, 4), 0.5);
    EXPECT_EQ(c.at(t, 6), 0.5);
  }
}

TEST(Aggregate, RowsArePartitions) {
  const auto cfg = small(4, 300);
  const auto c = aggregate(run_experiment(cfg).records, cfg);
  for (std::size_t t = 1; t <= c.trials(); ++t) {
    double sum = 0.0;
    for (std::size_t a = 0; a < 11; ++a) {
      EXPECT_GE(c.at(t, a), 0.0);
      EXPECT_LE(c.at(t, a), 1.0);
      sum += c.at(t, a);
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Aggregate, RejectsIncompleteOrDuplicateRecords) {
  auto cfg = small(1, 2);
  EXPECT_THROW(aggregate({{0, 1, 3, 0.3, true}}, cfg), std::invalid_argument);
  EXPECT_THROW(aggregate({{0, 1, 3, 0.3, true}, {0, 1, 4, 0.4, true}}, cfg), std::invalid_argument);
  EXPECT_THROW(aggregate({{0, 1, 3, 0.3, true}, {0, 3, 4, 0.4, true}}, cfg), std::invalid_argument);
}

TEST(RunExperiment, NeutralResponderLeadsToFairOffers) {
  const auto cfg = small(10, 10000);
  const auto c = aggregate(run_experiment(cfg).records, cfg);
  EXPECT_EQ(c.final_argmax(), 5u);
  EXPECT_GE(c.final_margin(), 0.05);
}
