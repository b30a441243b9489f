#include <gtest/gtest.h>

#include "tcsp/demo.hpp"
#include "tcsp/reduction.hpp"

namespace tcsp {
namespace {

TwinAdversary perfect_adversary(const CcsInstance& inst) {
  return [&inst](const TwinChallenge& ch, DecisionOracle&) -> TwinAnswer {
    return std::pair{conjugate(ch.public1, inst.witness_y), conjugate(ch.public2, inst.witness_y)};
  };
}

TEST(Reduction, PerfectAdversarySolvesCcs) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(81);
  for (int t = 0; t < 50; ++t) {
    const CcsInstance inst = make_ccs_instance(p, rng);
    const ReductionOutcome out = run_reduction(inst.challenge, perfect_adversary(inst), rng);
    ASSERT_FALSE(out.failed());
    EXPECT_EQ(*out.result, ccs_from_witnesses(inst));
    EXPECT_TRUE(out.transcript.empty());
  }
}

TEST(Reduction, AdversaryIsHandedTheChallengeHeader) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(82);
  const CcsInstance inst = make_ccs_instance(p, rng);
  std::optional<TwinChallenge> seen;
  run_reduction(inst.challenge, [&](const TwinChallenge& ch, DecisionOracle&) -> TwinAnswer {
    seen = ch;
    return std::nullopt;
  }, rng);
  ASSERT_TRUE(seen);
  EXPECT_EQ(seen->public1, inst.challenge.public_x);
  EXPECT_EQ(seen->header, inst.challenge.public_y);
  EXPECT_NE(seen->public2, seen->public1);
}

TEST(Reduction, GuessingAdversaryFails) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(83);
  for (int t = 0; t < 50; ++t) {
    const CcsInstance inst = make_ccs_instance(p, rng);
    SeededRng guesses = rng.fork("guess");
    const ReductionOutcome out = run_reduction(inst.challenge, [&](const TwinChallenge& ch, DecisionOracle&) -> TwinAnswer {
      return std::pair{random_conjugate(ch.params, guesses), random_conjugate(ch.params, guesses)};
    }, rng);
    EXPECT_TRUE(out.failed());
  }
}

TEST(Reduction, DecliningAdversaryFails) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(84);
  const CcsInstance inst = make_ccs_instance(p, rng);
  EXPECT_TRUE(run_reduction(inst.challenge, [](const TwinChallenge&, DecisionOracle&) -> TwinAnswer {
    return std::nullopt;
  }, rng).failed());
}

// Right Z_1 with a wrong Z_2 must not be passed through.
TEST(Reduction, HalfRightAnswerFails) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(85);
  const CcsInstance inst = make_ccs_instance(p, rng);
  const ReductionOutcome out = run_reduction(inst.challenge, [&](const TwinChallenge& ch, DecisionOracle&) -> TwinAnswer {
    return std::pair{conjugate(ch.public1, inst.witness_y), ch.public2};
  }, rng);
  EXPECT_TRUE(out.failed());
}

TEST(Reduction, TranscriptAudit) {
  SeededRng rng = SeededRng::from_u64(86);
  const ReductionReport report = reduction_demo(GroupParams::defaults(), 50, rng);
  EXPECT_EQ(report.queries, 50u);
  EXPECT_EQ(report.honest_queries, 17u);
  EXPECT_EQ(report.honest_agreements, report.honest_queries);
  EXPECT_EQ(report.dishonest_agreements, report.dishonest_queries);
  EXPECT_TRUE(report.succeeded);
  EXPECT_TRUE(report.matches_ground_truth);
}

TEST(Reduction, TranscriptRecordsEveryQuery) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(87);
  const CcsInstance inst = make_ccs_instance(p, rng);
  SeededRng adv = rng.fork("adv");
  std::vector<bool> answers;
  const ReductionOutcome out = run_reduction(inst.challenge, [&](const TwinChallenge& ch, DecisionOracle& oracle) -> TwinAnswer {
    for (int k = 0; k < 10; ++k) {
      DecisionQuery q = honest_query(ch.params, sample_subgroup(ch.params, SubgroupSide::Right, adv), ch.public1, ch.public2);
      if (k % 2) q.shared1 = random_conjugate(ch.params, adv);
      answers.push_back(oracle.ask(q));
      EXPECT_EQ(oracle.queries_used(), static_cast<std::size_t>(k + 1));
    }
    return std::nullopt;
  }, rng);
  ASSERT_EQ(out.transcript.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(out.transcript[k].answer, answers[k]);
    EXPECT_EQ(out.transcript[k].answer, k % 2 == 0);
  }
}

TEST(Reduction, BudgetExhaustionIsFailure) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(88);
  const CcsInstance inst = make_ccs_instance(p, rng);
  const ReductionOutcome out = run_reduction(inst.challenge, [&](const TwinChallenge& ch, DecisionOracle& oracle) -> TwinAnswer {
    const DecisionQuery q{ch.header, ch.public1, ch.public2};
    for (;;) oracle.ask(q);
  }, rng, 7);
  EXPECT_TRUE(out.failed());
  EXPECT_EQ(out.transcript.size(), 7u);
}

TEST(OracleLeak, DecryptionOracleDecidesCcsp) {
  const GroupParams p = GroupParams::defaults();
  SeededRng rng = SeededRng::from_u64(89);
  const CsKeyPair kp = cs_keygen(p, rng);
  int true_cases = 0;
  for (int t = 0; t < 500; ++t) {
    const BraidWord y = sample_subgroup(p, SubgroupSide::Right, rng);
    const CanonicalForm header = public_conjugate(p, y);
    CanonicalForm shared = ccs_shared(y, kp.element);
    if (t % 2) shared = random_conjugate(p, rng);
    const bool truth = ccsp_truth(kp.secret, header, shared);
    true_cases += truth;
    EXPECT_EQ(oracle_leak_demo(kp, header, shared, rng), truth) << t;
  }
  EXPECT_EQ(true_cases, 250);
}

}  // namespace
}  // namespace tcsp
