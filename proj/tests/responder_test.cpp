#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "ugsim/oracle.hpp"
#include "ugsim/responder.hpp"

using namespace ugsim;

namespace {

ResponderModel model_with(ExpectationBelief belief, Emotion e = Emotion::Neutral, int s = 10) {
  return ResponderModel::make(10.0, std::move(belief), e, EmotionConfig{2.25, 4.5, 0.75, 1.0},
                              {s, 1e-12});
}

ResponderModel calibrated(Emotion e) {
  return ugsim::testing::load_checked_in("neutral.cfg").experiment.responder_model(e);
}

// Exact acceptance probabilities of the checked-in calibration, by
// multinomial enumeration (tests/oracles/exact_acceptance.py, see
// tests/oracles/exact_curves_calibrated.txt). Index = arm, offer = arm.
constexpr double kExactNeutral[] = {0.0, 0.0000000001, 0.0000018346, 0.0027946200, 0.2406141998,
                                    0.9244787834, 0.9996775752, 0.9999998878, 1.0, 1.0, 1.0};

}  // namespace

TEST(DefaultBelief, SymmetricAroundMean) {
  const auto b = default_belief(10.0, 0.5, 0.1, 11);
  ASSERT_EQ(b.levels.size(), 11u);
  EXPECT_DOUBLE_EQ(b.levels[5], 5.0);
  EXPECT_NEAR(b.probabilities[4], b.probabilities[6], 1e-15);
  EXPECT_NEAR(b.probabilities[3], b.probabilities[7], 1e-15);
  EXPECT_EQ(std::max_element(b.probabilities.begin(), b.probabilities.end()) - b.probabilities.begin(), 5);
  // renormalized density, tests/oracles/frozen_values.py
  EXPECT_NEAR(b.probabilities[5], 0.39894228312200725, 1e-12);
}

TEST(DefaultBelief, ModeAtMean) {
  const auto b = default_belief(10.0, 0.4, 0.15, 11);
  EXPECT_EQ(std::max_element(b.probabilities.begin(), b.probabilities.end()) - b.probabilities.begin(), 4);
  EXPECT_NO_THROW(b.validate(10.0));
}

TEST(DefaultBelief, RejectsBadArguments) {
  EXPECT_THROW(default_belief(10.0, 0.4, 0.15, 1), std::invalid_argument);
  EXPECT_THROW(default_belief(10.0, 1.2, 0.15, 11), std::invalid_argument);
  EXPECT_THROW(default_belief(10.0, 0.4, 0.0, 11), std::invalid_argument);
  EXPECT_THROW(default_belief(10.0, 0.01, 1e-6, 11), std::domain_error);
}

TEST(OfferGamble, OutcomesAreOfferMinusExpectation) {
  const auto m = model_with(default_belief(10.0, 0.4, 0.15, 11));
  const Gamble g = offer_gamble(5.0, m);
  ASSERT_EQ(g.size(), 11u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_DOUBLE_EQ(g.outcomes()[i].value, 5.0 - m.belief.levels[i]);
    EXPECT_DOUBLE_EQ(g.outcomes()[i].probability, m.belief.probabilities[i]);
  }
  const Gamble full = offer_gamble(10.0, m);
  for (const auto& o : full.outcomes()) EXPECT_GE(o.value, 0.0);
}

TEST(OfferGamble, ZeroOfferAgainstPositiveBeliefIsAllLoss) {
  const auto m = model_with({{2.0, 4.0, 6.0}, {0.25, 0.5, 0.25}});
  const Gamble zero = offer_gamble(0.0, m);
  for (const auto& o : zero.outcomes()) EXPECT_LT(o.value, 0.0);
  EXPECT_THROW(offer_gamble(10.5, m), std::invalid_argument);
}

TEST(OfferGamble, MergesDuplicateLevels) {
  const auto m = model_with({{4.0, 4.0, 6.0}, {0.25, 0.25, 0.5}});
  const Gamble g = offer_gamble(5.0, m);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g.outcomes()[0].value, 1.0);
  EXPECT_DOUBLE_EQ(g.outcomes()[0].probability, 0.5);
}

TEST(Decide, ForcedDecisions) {
  const ExpectationBelief below_t{{1.0, 3.0, 5.0, 9.0}, {0.1, 0.4, 0.4, 0.1}};
  for (Emotion e : {Emotion::Neutral, Emotion::Negative, Emotion::Positive}) {
    for (int s : {1, 2, 10, 50}) {
      const auto m = model_with(below_t, e, s);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        EXPECT_EQ(decide(10.0, m, rng), Decision::Accept);
        EXPECT_EQ(decide(0.0, m, rng), Decision::Reject);
      }
    }
  }
}

TEST(Decide, AllLossWithDefaultBeliefRejects) {
  // The default belief puts mass on e = 0, so offer 0 has one zero outcome
  // and the rest losses; a zero estimate is a rejection.
  const auto m = calibrated(Emotion::Positive);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(decide(0.0, m, rng), Decision::Reject);
  }
}

TEST(Decide, ReplayAndDrawCount) {
  const auto m = calibrated(Emotion::Neutral);
  Rng a(42), b(42), manual(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(decide(5.0, m, a), decide(5.0, m, b));
  for (int i = 0; i < 100 * m.estimator.samples; ++i) (void)manual.uniform();
  EXPECT_EQ(a.next_u64(), manual.next_u64());
}

TEST(Responder, CachedDecisionsMatchFreeFunction) {
  const auto m = calibrated(Emotion::Negative);
  const OfferGrid grid(10.0, 11);
  const Responder r(m, grid.offers());
  Rng a(9), b(9);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t arm = static_cast<std::size_t>(i) % 11;
    EXPECT_EQ(r.decide(arm, a), decide(grid.offer(arm), m, b));
  }
}

TEST(Decide, FairOfferAcceptanceMatchesExactOracle) {
  const auto m = calibrated(Emotion::Neutral);
  Rng rng(2024);
  const auto est = acceptance_probability(5.0, m, 100000, rng);
  EXPECT_NEAR(est.probability, kExactNeutral[5], 4.0 * est.standard_error);
}

TEST(Decide, AcceptanceMonotoneInOffer) {
  for (Emotion e : {Emotion::Neutral, Emotion::Negative, Emotion::Positive}) {
    const auto m = calibrated(e);
    double prev_p = -1.0, prev_se = 0.0;
    for (int offer = 0; offer <= 10; ++offer) {
      Rng rng = Rng::for_stream(77, {static_cast<std::uint64_t>(offer)});
      const auto est = acceptance_probability(offer, m, 20000, rng);
      EXPECT_GE(est.probability, prev_p - std::max(prev_se, est.standard_error)) << "offer " << offer;
      prev_p = est.probability;
      prev_se = est.standard_error;
    }
  }
}

TEST(Decide, EmotionOrdersAcceptance) {
  bool strict_somewhere = false;
  for (int offer = 1; offer < 10; ++offer) {
    double p[3];
    double se[3];
    int k = 0;
    for (Emotion e : {Emotion::Positive, Emotion::Neutral, Emotion::Negative}) {
      Rng rng = Rng::for_stream(5, {static_cast<std::uint64_t>(offer)});
      const auto est = acceptance_probability(offer, calibrated(e), 50000, rng);
      p[k] = est.probability;
      se[k++] = est.standard_error;
    }
    EXPECT_GE(p[0], p[1] - 2.0 * std::hypot(se[0], se[1])) << "offer " << offer;
    EXPECT_GE(p[1], p[2] - 2.0 * std::hypot(se[1], se[2])) << "offer " << offer;
    if (p[0] - p[1] > 3.0 * std::hypot(se[0], se[1])) strict_somewhere = true;
  }
  EXPECT_TRUE(strict_somewhere);
}
