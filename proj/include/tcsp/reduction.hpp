#pragma once

// Executable slices of the security argument:
//   * run_reduction: a CCS solver B built around any strong-twin-CCS
//     adversary A, answering A's decision queries with the trapdoor test.
//   * oracle_leak_demo: a CS decryption oracle used as a ccsp decision
//     oracle via a forged ciphertext.

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tcsp/braid.hpp"
#include "tcsp/codec.hpp"
#include "tcsp/elgamal.hpp"
#include "tcsp/rng.hpp"
#include "tcsp/sampler.hpp"
#include "tcsp/trapdoor.hpp"

namespace tcsp {

// What B is given: X = x g x^-1, Y = y g y^-1. Goal: ccs(X, Y).
struct CcsChallenge {
  GroupParams params;
  CanonicalForm public_x;
  CanonicalForm public_y;
};

// A challenge together with its witnesses. Only test oracles read the
// witnesses; run_reduction accepts the challenge alone.
struct CcsInstance {
  CcsChallenge challenge;
  BraidWord witness_x;  // in LB_l
  BraidWord witness_y;  // in RB_r
};

inline CcsInstance make_ccs_instance(const GroupParams& params, SeededRng& rng) {
  BraidWord x = sample_subgroup(params, SubgroupSide::Left, rng);
  BraidWord y = sample_subgroup(params, SubgroupSide::Right, rng);
  CcsChallenge challenge{params, public_conjugate(params, x), public_conjugate(params, y)};
  return {std::move(challenge), std::move(x), std::move(y)};
}

// (xy) g (xy)^-1 built directly from the witnesses.
inline CanonicalForm ccs_from_witnesses(const CcsInstance& inst) {
  return normal_form(conjugate(inst.challenge.params.base(), multiply(inst.witness_x, inst.witness_y)));
}

// What A is given: (X_1, X_2, Y) and the public parameters.
struct TwinChallenge {
  GroupParams params;
  CanonicalForm public1;
  CanonicalForm public2;
  CanonicalForm header;
};

struct QueryRecord {
  DecisionQuery query;
  bool answer;
};

// A's only channel to the secrets. Answers come from the trapdoor test; every
// query is recorded.
class DecisionOracle {
 public:
  static constexpr std::size_t default_budget = std::size_t{1} << 10;

  DecisionOracle(const Trapdoor& trapdoor, std::size_t budget) : trapdoor_(trapdoor), budget_(budget) {}

  // Throws ContractViolation once the budget is spent.
  bool ask(const DecisionQuery& q) {
    if (transcript_.size() >= budget_) throw ContractViolation("decision-oracle query budget exhausted");
    const bool answer = trapdoor_check(trapdoor_, q);
    transcript_.push_back({q, answer});
    return answer;
  }

  std::size_t queries_used() const noexcept { return transcript_.size(); }
  std::size_t budget() const noexcept { return budget_; }
  const std::vector<QueryRecord>& transcript() const noexcept { return transcript_; }

 private:
  const Trapdoor& trapdoor_;
  std::size_t budget_;
  std::vector<QueryRecord> transcript_;
};

using TwinAnswer = std::optional<std::pair<CanonicalForm, CanonicalForm>>;
using TwinAdversary = std::function<TwinAnswer(const TwinChallenge&, DecisionOracle&)>;

struct ReductionOutcome {
  std::optional<CanonicalForm> result;  // Z_1, or empty for "failure"
  std::vector<QueryRecord> transcript;

  bool failed() const noexcept { return !result.has_value(); }
};

inline ReductionOutcome run_reduction(const CcsChallenge& challenge, const TwinAdversary& adversary, SeededRng& rng,
                                      std::size_t budget = DecisionOracle::default_budget) {
  const Trapdoor td = trapdoor_setup(challenge.params, challenge.public_x, rng);
  DecisionOracle oracle(td, budget);
  const TwinChallenge handed{challenge.params, td.public1, td.public2, challenge.public_y};

  TwinAnswer answer;
  try {
    answer = adversary(handed, oracle);
  } catch (const ContractViolation&) {
    answer.reset();  // budget exhausted: A gave up
  }

  ReductionOutcome outcome;
  outcome.transcript = oracle.transcript();
  if (answer && trapdoor_check(td, DecisionQuery{challenge.public_y, answer->first, answer->second})) {
    outcome.result = std::move(answer->first);
  }
  return outcome;
}

// ccsp(X, Y^, Z^) decided with the secret: x Y^ x^-1 == Z^.
inline bool ccsp_truth(const BraidWord& secret, const CanonicalForm& header, const CanonicalForm& shared) {
  return ccs_shared(secret, header) == shared;
}

// Forges (Y^, Enc_{H(Y^, Z^)}(m^)) for a known m^ and submits it to the CS
// decryption oracle. Accepting and returning m^ reveals ccsp(X, Y^, Z^).
inline bool oracle_leak_demo(const CsKeyPair& kp, const CanonicalForm& header, const CanonicalForm& shared,
                             SeededRng& rng) {
  Bytes probe(32);
  rng.fill(probe);
  const SymKey forged_key = hash_elements(label::cs, {header, shared});
  const Ciphertext forged{header, sym_encrypt(forged_key, probe)};
  try {
    return cs_decrypt(kp, forged) == probe;
  } catch (const AuthenticationError&) {
    return false;
  }
}

}  // namespace tcsp
