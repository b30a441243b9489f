#include <gtest/gtest.h>

#include <numeric>

#include "support/artin_action.hpp"
#include "support/generators.hpp"
#include "tcsp/braid.hpp"

namespace tcsp {
namespace {

using testing::Engine;
using testing::artin_equal;
using testing::random_word;
using testing::random_word_upto;
using testing::rewrite;

// Oracle for permutation_of: physically track which strand sits at each
// position while the crossings are applied in order.
std::vector<std::uint8_t> track_strands(const BraidWord& w) {
  std::vector<std::uint8_t> at(static_cast<std::size_t>(w.strands()));
  std::iota(at.begin(), at.end(), std::uint8_t{0});
  for (BraidWord::Letter x : w.letters()) {
    const int i = std::abs(x);
    std::swap(at[i - 1], at[i]);
  }
  return at;
}

std::vector<std::uint8_t> table(const PermutationBraid& p) { return {p.images().begin(), p.images().end()}; }

bool left_weighted(const CanonicalForm& cf) {
  for (std::size_t i = 1; i < cf.factors.size(); ++i) {
    if ((cf.factors[i].starting_set() & ~cf.factors[i - 1].finishing_set()) != 0) return false;
  }
  return true;
}

TEST(BraidWord, RejectsOutOfRangeLetters) {
  EXPECT_THROW(BraidWord(3, {3}), ContractViolation);
  EXPECT_THROW(BraidWord(3, {0}), ContractViolation);
  EXPECT_THROW(BraidWord(1), ContractViolation);
  EXPECT_NO_THROW(BraidWord(3, {2, -2, 1}));
}

TEST(Multiply, IdentityAndCancellation) {
  const BraidWord e(4);
  const BraidWord w(4, {1, -3, 2});
  EXPECT_EQ(multiply(e, w), w);
  EXPECT_EQ(multiply(BraidWord(4, {1}), BraidWord(4, {-1})), e);  // freely reduced eagerly
  EXPECT_TRUE(normal_form(multiply(BraidWord(4, {1}), BraidWord(4, {-1}))).is_identity());
}

TEST(Multiply, FarGeneratorsCommute) {
  const BraidWord s1(4, {1});
  const BraidWord s3(4, {3});
  EXPECT_EQ(normal_form(multiply(s1, s3)), normal_form(multiply(s3, s1)));
}

TEST(Multiply, StrandMismatch) {
  EXPECT_THROW(multiply(BraidWord(3), BraidWord(4)), StrandMismatch);
  EXPECT_THROW(conjugate(BraidWord(3), BraidWord(4)), StrandMismatch);
  EXPECT_THROW(equals(BraidWord(3), BraidWord(4)), StrandMismatch);
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(BraidWord(3)), BraidWord(3));
  EXPECT_EQ(invert(BraidWord(3, {1, 2})), BraidWord(3, {-2, -1}));
  Engine rng(11);
  for (int t = 0; t < 200; ++t) {
    const BraidWord w = random_word_upto(rng, 6, 20);
    EXPECT_EQ(normal_form(multiply(w, invert(w))), CanonicalForm::identity(6));
  }
}

TEST(Conjugate, Examples) {
  const BraidWord g(4, {1, 2, -3, 2});
  EXPECT_EQ(conjugate(g, BraidWord(4)), g);
  EXPECT_TRUE(equals(conjugate(BraidWord(4, {3}), BraidWord(4, {1})), BraidWord(4, {3})));

  Engine rng(12);
  for (int t = 0; t < 100; ++t) {
    const BraidWord a = random_word_upto(rng, 6, 12);
    const BraidWord x = random_word_upto(rng, 6, 8);
    const BraidWord y = random_word_upto(rng, 6, 8);
    EXPECT_TRUE(equals(conjugate(conjugate(a, y), x), conjugate(a, multiply(x, y))));
  }
}

TEST(PermutationOf, Examples) {
  EXPECT_TRUE(permutation_of(BraidWord(5)).is_identity());
  EXPECT_EQ(table(permutation_of(BraidWord(3, {1}))), (std::vector<std::uint8_t>{1, 0, 2}));
  // Frozen from track_strands.
  EXPECT_EQ(table(permutation_of(BraidWord(3, {1, 2, 1}))), (std::vector<std::uint8_t>{2, 1, 0}));
  EXPECT_EQ(track_strands(BraidWord(3, {1, 2, 1})), (std::vector<std::uint8_t>{2, 1, 0}));
}

TEST(PermutationOf, AgreesWithStrandTracking) {
  Engine rng(13);
  for (int t = 0; t < 300; ++t) {
    const BraidWord w = random_word_upto(rng, 2 + t % 9, 25);
    EXPECT_EQ(table(permutation_of(w)), track_strands(w));
  }
}

TEST(PermutationOf, IsHomomorphism) {
  Engine rng(14);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 12;
    const BraidWord a = random_word_upto(rng, n, 20);
    const BraidWord b = random_word_upto(rng, n, 20);
    EXPECT_EQ(permutation_of(multiply(a, b)), compose(permutation_of(a), permutation_of(b)));
  }
}

TEST(Delta, Examples) {
  EXPECT_EQ(delta(2), BraidWord(2, {1}));
  EXPECT_EQ(delta(3), BraidWord(3, {1, 2, 1}));
  EXPECT_EQ(table(permutation_of(delta(4))), (std::vector<std::uint8_t>{3, 2, 1, 0}));
  EXPECT_EQ(track_strands(delta(4)), (std::vector<std::uint8_t>{3, 2, 1, 0}));
  for (int n = 2; n <= 16; ++n) {
    EXPECT_TRUE(permutation_of(delta(n)).is_half_twist());
    EXPECT_EQ(delta(n).size(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
  EXPECT_THROW(delta(1), ContractViolation);
}

TEST(PermutationBraid, StartingAndFinishingSets) {
  // s1 s2 in B_3 starts only with s1 and ends only with s2.
  const PermutationBraid p = permutation_of(BraidWord(3, {1, 2}));
  EXPECT_EQ(p.starting_set(), std::uint64_t{1} << 1);
  EXPECT_EQ(p.finishing_set(), std::uint64_t{1} << 2);
  const PermutationBraid d = PermutationBraid::half_twist(5);
  EXPECT_EQ(d.starting_set(), 0b11110u);
  EXPECT_EQ(d.finishing_set(), 0b11110u);
  EXPECT_EQ(PermutationBraid::identity(5).starting_set(), 0u);
}

TEST(PermutationBraid, FlipMapsGeneratorsAcross) {
  for (int i = 1; i < 7; ++i) {
    EXPECT_EQ(PermutationBraid::generator(7, i).flipped(), PermutationBraid::generator(7, 7 - i));
  }
}

TEST(PermutationBraid, PositiveWordRoundTrip) {
  Engine rng(15);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint8_t> images(8);
    std::iota(images.begin(), images.end(), std::uint8_t{0});
    std::shuffle(images.begin(), images.end(), rng);
    const PermutationBraid p = PermutationBraid::from_images(images);
    const BraidWord w = positive_word(p);
    EXPECT_EQ(permutation_of(w), p);
    EXPECT_EQ(static_cast<int>(w.size()), p.length());
  }
}

TEST(PermutationBraid, RejectsNonPermutations) {
  EXPECT_THROW(PermutationBraid::from_images({0, 0, 1}), ContractViolation);
  EXPECT_THROW(PermutationBraid::from_images({0, 3, 1}), ContractViolation);
}

TEST(NormalForm, Examples) {
  EXPECT_EQ(normal_form(BraidWord(3)), (CanonicalForm{3, 0, {}}));
  EXPECT_EQ(normal_form(BraidWord(3, {1, 2, 1})), normal_form(BraidWord(3, {2, 1, 2})));
  EXPECT_EQ(normal_form(BraidWord(3, {1, 2, 1})), (CanonicalForm{3, 1, {}}));
  EXPECT_EQ(normal_form(invert(delta(5))), (CanonicalForm{5, -1, {}}));
  // s1^-1 = Delta^-1 * (Delta s1^-1) in B_3; Delta s1^-1 = s1 s2.
  EXPECT_EQ(normal_form(BraidWord(3, {-1})), (CanonicalForm{3, -1, {permutation_of(BraidWord(3, {1, 2}))}}));
}

TEST(Equals, Examples) {
  const BraidWord w(5, {1, -4, 2, 2, -3});
  EXPECT_TRUE(equals(w, w));
  EXPECT_TRUE(equals(BraidWord(4, {1, 3}), BraidWord(4, {3, 1})));
  EXPECT_FALSE(equals(BraidWord(3, {1}), BraidWord(3, {2})));
  EXPECT_NE(permutation_of(BraidWord(3, {1})), permutation_of(BraidWord(3, {2})));
}

TEST(GroupLaws, BraidRelationsAtEightStrands) {
  const int n = 8;
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      const auto a = static_cast<BraidWord::Letter>(i);
      const auto b = static_cast<BraidWord::Letter>(j);
      if (std::abs(i - j) == 1) {
        EXPECT_TRUE(equals(BraidWord(n, {a, b, a}), BraidWord(n, {b, a, b}))) << i << "," << j;
      } else if (std::abs(i - j) >= 2) {
        EXPECT_TRUE(equals(BraidWord(n, {a, b}), BraidWord(n, {b, a}))) << i << "," << j;
      }
    }
  }
  // Adjacent generators do not commute.
  EXPECT_FALSE(equals(BraidWord(n, {3, 4}), BraidWord(n, {4, 3})));
}

TEST(GroupLaws, AssociativityAndInverse) {
  Engine rng(16);
  for (int t = 0; t < 300; ++t) {
    const BraidWord a = random_word_upto(rng, 16, 30);
    const BraidWord b = random_word_upto(rng, 16, 30);
    const BraidWord c = random_word_upto(rng, 16, 30);
    EXPECT_TRUE(equals(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
    // Unreduced concatenation must also normalize to the identity.
    std::vector<BraidWord::Letter> raw(a.letters().begin(), a.letters().end());
    for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) raw.push_back(static_cast<BraidWord::Letter>(-*it));
    EXPECT_TRUE(normal_form(BraidWord(16, raw)).is_identity());
  }
}

TEST(NormalForm, SoundUnderRewriting) {
  Engine rng(17);
  for (int t = 0; t < 300; ++t) {
    const int n = 3 + t % 10;
    const BraidWord w = random_word_upto(rng, n, 25);
    const BraidWord w2 = rewrite(rng, w, 50);
    EXPECT_EQ(normal_form(w), normal_form(w2)) << to_string(w) << " vs " << to_string(w2);
  }
}

TEST(NormalForm, FactorsAreLeftWeightedAndProper) {
  Engine rng(18);
  for (int t = 0; t < 300; ++t) {
    const CanonicalForm cf = normal_form(random_word_upto(rng, 2 + t % 15, 40));
    EXPECT_TRUE(left_weighted(cf));
    EXPECT_TRUE(cf.is_valid());
    for (const PermutationBraid& f : cf.factors) {
      EXPECT_FALSE(f.is_identity());
      EXPECT_FALSE(f.is_half_twist());
    }
  }
}

TEST(NormalForm, RoundTripAndIdempotence) {
  Engine rng(19);
  for (int t = 0; t < 300; ++t) {
    const BraidWord w = random_word_upto(rng, 2 + t % 15, 30);
    const CanonicalForm cf = normal_form(w);
    EXPECT_EQ(normal_form(word_of(cf)), cf);
  }
}

// Differential check against Artin's faithful action on the free group.
TEST(NormalForm, DecidesEqualityLikeArtinAction) {
  Engine rng(20);
  int equal_pairs = 0;
  for (int t = 0; t < 1500; ++t) {
    const int n = 2 + t % 5;
    const BraidWord a = random_word_upto(rng, n, 10);
    // Half the pairs are rewrites, so both outcomes are exercised.
    const BraidWord b = t % 2 ? rewrite(rng, a, 10) : random_word_upto(rng, n, 10);
    const bool expected = artin_equal(a, b);
    equal_pairs += expected;
    EXPECT_EQ(equals(a, b), expected) << to_string(a) << " vs " << to_string(b);
    EXPECT_TRUE(artin_equal(word_of(normal_form(a)), a));
  }
  EXPECT_GT(equal_pairs, 700);
}

TEST(CanonicalArithmetic, MatchesWordArithmetic) {
  Engine rng(21);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 15;
    const BraidWord a = random_word_upto(rng, n, 25);
    const BraidWord b = random_word_upto(rng, n, 25);
    const BraidWord x = random_word_upto(rng, n, 10);
    const CanonicalForm ca = normal_form(a);
    const CanonicalForm cb = normal_form(b);
    EXPECT_EQ(multiply(ca, cb), normal_form(multiply(a, b)));
    EXPECT_EQ(invert(ca), normal_form(invert(a)));
    EXPECT_EQ(divide(ca, cb), normal_form(multiply(a, invert(b))));
    EXPECT_EQ(conjugate(ca, x), normal_form(conjugate(a, x)));
  }
}

TEST(CanonicalArithmetic, StrandMismatch) {
  EXPECT_THROW(multiply(CanonicalForm::identity(3), CanonicalForm::identity(4)), StrandMismatch);
  EXPECT_THROW(conjugate(CanonicalForm::identity(3), BraidWord(4)), StrandMismatch);
}

}  // namespace
}  // namespace tcsp
