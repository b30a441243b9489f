#pragma once

// Trapdoor test for the twin predicate 2ccsp.
//
// Given X_1, pick hidden r, s and publish
//     X_2 = (s g s^-1) * (r X_1 r^-1)^-1.
// A query (Y^, Z1^, Z2^) is then judged without any secret conjugator by
//     Z2^ * r Z1^ r^-1  ==  s Y^ s^-1.
//
// For an honest query (Y^ = y g y^-1 with y in RB_r, Zi^ = y X_i y^-1) the
// left side is y X_2 r X_1 r^-1 y^-1 = y s g s^-1 y^-1, using that r commutes
// with y. That equals s Y^ s^-1 only when s commutes with y as well, so s is
// drawn from LB_l, the same side as r.

#include "tcsp/braid.hpp"
#include "tcsp/params.hpp"
#include "tcsp/rng.hpp"
#include "tcsp/sampler.hpp"

namespace tcsp {

struct DecisionQuery {
  CanonicalForm header;   // Y^
  CanonicalForm shared1;  // Z1^
  CanonicalForm shared2;  // Z2^
};

struct Trapdoor {
  GroupParams params;
  BraidWord r;
  BraidWord s;
  CanonicalForm public1;  // X_1
  CanonicalForm public2;  // X_2
};

// Builds the trapdoor for explicit conjugators. trapdoor_setup samples them;
// tests call this directly for degenerate (r = s = e) or off-side choices.
inline Trapdoor trapdoor_from(const GroupParams& params, const CanonicalForm& x1, BraidWord r, BraidWord s) {
  require_same_strands(params.strands(), x1.n);
  require_same_strands(params.strands(), r.strands());
  require_same_strands(params.strands(), s.strands());
  CanonicalForm x2 = divide(normal_form(conjugate(params.base(), s)), conjugate(x1, r));
  return {params, std::move(r), std::move(s), x1, std::move(x2)};
}

inline Trapdoor trapdoor_setup(const GroupParams& params, const CanonicalForm& x1, SeededRng& rng) {
  BraidWord r = sample_subgroup(params, SubgroupSide::Left, rng);
  BraidWord s = sample_subgroup(params, SubgroupSide::Left, rng);
  return trapdoor_from(params, x1, std::move(r), std::move(s));
}

// X_2 * r X_1 r^-1 == s g s^-1
inline bool satisfies_defining_identity(const Trapdoor& td) {
  return multiply(td.public2, conjugate(td.public1, td.r)) == normal_form(conjugate(td.params.base(), td.s));
}

inline void require_query_strands(int n, const DecisionQuery& q) {
  require_same_strands(n, q.header.n);
  require_same_strands(n, q.shared1.n);
  require_same_strands(n, q.shared2.n);
}

inline bool trapdoor_check(const Trapdoor& td, const DecisionQuery& q) {
  require_query_strands(td.params.strands(), q);
  detail::NormalFormBuilder lhs(q.header.n);
  lhs.push(q.shared2);
  lhs.push_word(td.r);
  lhs.push(q.shared1);
  lhs.push_inverse_word(td.r);
  return lhs.finish() == conjugate(q.header, td.s);
}

// Ground truth with the secrets of a genuine twin key:
// Z1^ == x1 Y^ x1^-1 and Z2^ == x2 Y^ x2^-1.
inline bool truth_2ccsp(const BraidWord& x1, const BraidWord& x2, const DecisionQuery& q) {
  require_query_strands(x1.strands(), q);
  require_same_strands(x1.strands(), x2.strands());
  return conjugate(q.header, x1) == q.shared1 && conjugate(q.header, x2) == q.shared2;
}

// Ground truth from the query side: with Y^ = y g y^-1, y in RB_r, the shared
// values are ccs(X_i, Y^) = y X_i y^-1. This is the only ground truth for a
// synthesized X_2, which has no known conjugator.
inline bool truth_2ccsp_by_ephemeral(const BraidWord& y, const CanonicalForm& x1, const CanonicalForm& x2,
                                     const DecisionQuery& q) {
  require_query_strands(y.strands(), q);
  return conjugate(x1, y) == q.shared1 && conjugate(x2, y) == q.shared2;
}

}  // namespace tcsp
