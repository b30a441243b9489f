#pragma once

// Secret conjugators from the commuting subgroups of B_{l+r}:
//   LB_l = <s_1, ..., s_{l-1}>,  RB_r = <s_{l+1}, ..., s_{l+r-1}>.
// s_l couples the halves and belongs to neither.

#include <string_view>

#include "tcsp/braid.hpp"
#include "tcsp/params.hpp"
#include "tcsp/rng.hpp"

namespace tcsp {

enum class SubgroupSide : std::uint8_t { Left = 1, Right = 2 };

inline std::string_view to_string(SubgroupSide side) { return side == SubgroupSide::Left ? "left" : "right"; }

inline SubgroupSide opposite(SubgroupSide side) {
  return side == SubgroupSide::Left ? SubgroupSide::Right : SubgroupSide::Left;
}

struct GeneratorRange {
  int first;
  int last;  // inclusive

  bool empty() const noexcept { return last < first; }
  bool contains(int i) const noexcept { return first <= i && i <= last; }
};

inline GeneratorRange generator_range(const GroupParams& params, SubgroupSide side) {
  if (side == SubgroupSide::Left) return {1, params.left() - 1};
  return {params.left() + 1, params.strands() - 1};
}

// True iff every letter of w is a generator of the given subgroup.
inline bool in_subgroup(const GroupParams& params, SubgroupSide side, const BraidWord& w) {
  if (w.strands() != params.strands()) return false;
  const GeneratorRange range = generator_range(params, side);
  for (BraidWord::Letter x : w.letters()) {
    if (!range.contains(std::abs(x))) return false;
  }
  return true;
}

// word_length() uniform letters from the side's generators with uniform
// signs, freely reduced.
inline BraidWord sample_subgroup(const GroupParams& params, SubgroupSide side, SeededRng& rng) {
  const GeneratorRange range = generator_range(params, side);
  if (range.empty()) throw ContractViolation("empty generator range for " + std::string(to_string(side)) + " subgroup");
  const auto width = static_cast<std::uint64_t>(range.last - range.first + 1);
  std::vector<BraidWord::Letter> letters;
  letters.reserve(static_cast<std::size_t>(params.word_length()));
  for (int k = 0; k < params.word_length(); ++k) {
    const auto i = static_cast<BraidWord::Letter>(range.first + static_cast<int>(rng.uniform(width)));
    letters.push_back(rng.uniform(2) ? static_cast<BraidWord::Letter>(-i) : i);
  }
  return free_reduce(BraidWord(params.strands(), std::move(letters)));
}

// word_length() uniform letters over all of s_1..s_{n-1}; a "random element"
// of B_n at demo scale.
inline BraidWord sample_full_group(const GroupParams& params, SeededRng& rng) {
  const auto width = static_cast<std::uint64_t>(params.strands() - 1);
  std::vector<BraidWord::Letter> letters;
  letters.reserve(static_cast<std::size_t>(params.word_length()));
  for (int k = 0; k < params.word_length(); ++k) {
    const auto i = static_cast<BraidWord::Letter>(1 + static_cast<int>(rng.uniform(width)));
    letters.push_back(rng.uniform(2) ? static_cast<BraidWord::Letter>(-i) : i);
  }
  return free_reduce(BraidWord(params.strands(), std::move(letters)));
}

inline bool commutes(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a.strands(), b.strands());
  return equals(multiply(a, b), multiply(b, a));
}

}  // namespace tcsp
