#pragma once

// Batch experiments behind the trapdoor-demo and reduce-demo commands.

#include <cstdio>
#include <string>

#include "tcsp/reduction.hpp"
#include "tcsp/trapdoor.hpp"

namespace tcsp {

inline CanonicalForm random_conjugate(const GroupParams& params, SeededRng& rng) {
  return normal_form(conjugate(params.base(), sample_full_group(params, rng)));
}

// Honest shared values for a query header y g y^-1: (y X_1 y^-1, y X_2 y^-1).
inline DecisionQuery honest_query(const GroupParams& params, const BraidWord& y, const CanonicalForm& x1,
                                  const CanonicalForm& x2) {
  return {public_conjugate(params, y), conjugate(x1, y), conjugate(x2, y)};
}

inline double rate(std::size_t hits, std::size_t total) {
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

inline std::string percent(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * r);
  return buf;
}

struct TrapdoorStats {
  std::size_t trials = 0;
  std::size_t honest_accepted = 0;
  std::size_t half_dishonest_rejected = 0;
  std::size_t random_accepted = 0;

  double completeness() const { return rate(honest_accepted, trials); }
  double half_dishonest_rejection() const { return rate(half_dishonest_rejected, trials); }
  double random_pass() const { return rate(random_accepted, trials); }

  std::string summary() const {
    return "trials=" + std::to_string(trials) + " completeness=" + percent(completeness()) +
           " half-dishonest-rejection=" + percent(half_dishonest_rejection()) +
           " random-pass=" + percent(random_pass());
  }
};

// Per trial: a fresh X_1 = x_1 g x_1^-1 and trapdoor, then one honest query,
// one with Z2^ replaced by a random conjugate, and one fully random query.
inline TrapdoorStats trapdoor_trials(const GroupParams& params, std::size_t trials, SeededRng& rng) {
  TrapdoorStats stats;
  stats.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const CanonicalForm x1 = public_conjugate(params, sample_subgroup(params, SubgroupSide::Left, rng));
    const Trapdoor td = trapdoor_setup(params, x1, rng);
    const BraidWord y = sample_subgroup(params, SubgroupSide::Right, rng);

    DecisionQuery q = honest_query(params, y, td.public1, td.public2);
    if (trapdoor_check(td, q)) ++stats.honest_accepted;

    q.shared2 = random_conjugate(params, rng);
    if (!trapdoor_check(td, q)) ++stats.half_dishonest_rejected;

    const DecisionQuery noise{random_conjugate(params, rng), random_conjugate(params, rng), random_conjugate(params, rng)};
    if (trapdoor_check(td, noise)) ++stats.random_accepted;
  }
  return stats;
}

struct ReductionReport {
  std::size_t queries = 0;
  std::size_t honest_queries = 0;
  std::size_t honest_agreements = 0;
  std::size_t dishonest_queries = 0;
  std::size_t dishonest_agreements = 0;
  bool succeeded = false;
  bool matches_ground_truth = false;

  double agreement() const { return rate(honest_agreements + dishonest_agreements, queries); }

  std::string summary() const {
    return "queries=" + std::to_string(queries) + " oracle-agreement=" + percent(agreement()) +
           " (honest " + std::to_string(honest_agreements) + "/" + std::to_string(honest_queries) + ", dishonest " +
           std::to_string(dishonest_agreements) + "/" + std::to_string(dishonest_queries) + ")" +
           " outcome=" + (succeeded ? "success" : "failure") +
           " ground-truth-match=" + (matches_ground_truth ? "yes" : "no");
  }
};

// One reduction run against a scripted adversary that first issues `queries`
// decision queries (alternating honest, Z1^-perturbed, Z2^-perturbed,
// honest, ...) and then answers perfectly from the challenge witness y. Each
// oracle answer is compared with the ephemeral-witness ground truth.
inline ReductionReport reduction_demo(const GroupParams& params, std::size_t queries, SeededRng& rng) {
  const CcsInstance inst = make_ccs_instance(params, rng);
  SeededRng adversary_rng = rng.fork("adversary");
  ReductionReport report;

  const TwinAdversary adversary = [&](const TwinChallenge& ch, DecisionOracle& oracle) -> TwinAnswer {
    for (std::size_t k = 0; k < queries; ++k) {
      const BraidWord y = sample_subgroup(ch.params, SubgroupSide::Right, adversary_rng);
      DecisionQuery q = honest_query(ch.params, y, ch.public1, ch.public2);
      if (k % 3 == 1) q.shared1 = random_conjugate(ch.params, adversary_rng);
      if (k % 3 == 2) q.shared2 = random_conjugate(ch.params, adversary_rng);
      const bool truth = truth_2ccsp_by_ephemeral(y, ch.public1, ch.public2, q);
      const bool answer = oracle.ask(q);
      if (truth) {
        ++report.honest_queries;
        report.honest_agreements += answer == truth;
      } else {
        ++report.dishonest_queries;
        report.dishonest_agreements += answer == truth;
      }
    }
    return std::pair{conjugate(ch.public1, inst.witness_y), conjugate(ch.public2, inst.witness_y)};
  };

  const ReductionOutcome outcome = run_reduction(inst.challenge, adversary, rng);
  report.queries = outcome.transcript.size();
  report.succeeded = !outcome.failed();
  report.matches_ground_truth = report.succeeded && *outcome.result == ccs_from_witnesses(inst);
  return report;
}

}  // namespace tcsp
