#include <gtest/gtest.h>

#if defined(UGSIM_HAVE_OPENMP)
#include <omp.h>
#endif

#include "test_support.hpp"
#include "ugsim/experiment.hpp"
#include "ugsim/oracle.hpp"

using namespace ugsim;

namespace {

class ParallelConsistency : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
#if defined(UGSIM_HAVE_OPENMP)
    omp_set_num_threads(GetParam());
#endif
  }
};

ExperimentConfig base() { return ugsim::testing::load_checked_in("negative.cfg").experiment; }

}  // namespace

TEST_P(ParallelConsistency, ExperimentMatchesSerialReference) {
  auto cfg = base();
  cfg.n_proposers = 7;
  cfg.n_trials = 3000;
  const auto par = run_experiment(cfg);
  const auto ser = reference::run_experiment(cfg);
  EXPECT_EQ(par.records, ser.records);
  ASSERT_EQ(par.final_states.size(), ser.final_states.size());
  for (std::size_t m = 0; m < par.final_states.size(); ++m) {
    for (std::size_t a = 0; a < 11; ++a) {
      EXPECT_EQ(par.final_states[m].arms[a].successes, ser.final_states[m].arms[a].successes);
      EXPECT_EQ(par.final_states[m].arms[a].failures, ser.final_states[m].arms[a].failures);
    }
  }
  EXPECT_EQ(aggregate(par.records, cfg).frequencies, aggregate(ser.records, cfg).frequencies);
}

TEST_P(ParallelConsistency, RewardCurveMatchesSerialReference) {
  const auto cfg = base();
  const Utility u = [](double x) { return x; };
  const auto par = reward_curve(cfg.responder_model(), cfg.grid(), u, 5000, 3);
  const auto ser = reference::reward_curve(cfg.responder_model(), cfg.grid(), u, 5000, 3);
  for (std::size_t a = 0; a < 11; ++a) {
    EXPECT_EQ(par.points[a].p_accept, ser.points[a].p_accept);
    EXPECT_EQ(par.points[a].expected_reward, ser.points[a].expected_reward);
  }
}

TEST_P(ParallelConsistency, CalibrationMatchesSerialReference) {
  const SearchSpace space{{4.5, 6.0}, {1.0, 0.75}, {0.4, 0.35}, {0.2, 0.15}, {10, 5}};
  CalibrationSettings settings;
  settings.reps = 2000;
  for (bool all : {false, true}) {
    settings.scan_all = all;
    const auto par = calibrate(CalibrationTarget{}, space, settings);
    const auto ser = reference::calibrate(CalibrationTarget{}, space, settings);
    EXPECT_EQ(par.selected.index, ser.selected.index);
    ASSERT_EQ(par.rows.size(), ser.rows.size());
    for (std::size_t i = 0; i < par.rows.size(); ++i) {
      EXPECT_EQ(par.rows[i].argmax_arm, ser.rows[i].argmax_arm);
      EXPECT_EQ(par.rows[i].gap_in_se, ser.rows[i].gap_in_se);
    }
    EXPECT_EQ(par.feasible.size(), ser.feasible.size());
  }
}

INSTANTIATE_TEST_SUITE_P(Threads, ParallelConsistency, ::testing::Values(1, 2, 4));
