#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcsp/braid.hpp"
#include "tcsp/error.hpp"

namespace tcsp {

// Published base element for B_{l+r}: an alternating-sign sweep up through
// every generator, a coupling s_l, then a sweep back down with the signs
// reversed. It touches both halves and the coupling generator, so
// conjugation by either subgroup moves it.
inline BraidWord default_base_word(int l, int r) {
  const int n = l + r;
  check_strand_count(n);
  std::vector<BraidWord::Letter> letters;
  for (int i = 1; i <= n - 1; ++i) letters.push_back(static_cast<BraidWord::Letter>(i % 2 ? i : -i));
  letters.push_back(static_cast<BraidWord::Letter>(l));
  for (int i = n - 1; i >= 1; --i) letters.push_back(static_cast<BraidWord::Letter>(i % 2 ? -i : i));
  return BraidWord(n, std::move(letters));
}

// Public parameters: B_n with n = l + r, the base element g and the length
// of sampled secret words.
class GroupParams {
 public:
  static constexpr int default_half = 8;
  static constexpr int default_word_length = 16;

  GroupParams(int l, int r, BraidWord g, int word_length) : l_(l), r_(r), g_(std::move(g)), word_length_(word_length) {
    if (l < 2 || r < 2) {
      throw ContractViolation("subgroup strand budgets must be >= 2 (l=" + std::to_string(l) +
                              ", r=" + std::to_string(r) + ")");
    }
    check_strand_count(l + r);
    require_same_strands(l + r, g_.strands());
    if (word_length < 1) throw ContractViolation("sampling word length must be >= 1");
  }

  GroupParams(int l, int r, int word_length) : GroupParams(l, r, default_base_word(l, r), word_length) {}

  static GroupParams defaults() { return GroupParams(default_half, default_half, default_word_length); }

  int strands() const noexcept { return l_ + r_; }
  int left() const noexcept { return l_; }
  int right() const noexcept { return r_; }
  const BraidWord& base() const noexcept { return g_; }
  int word_length() const noexcept { return word_length_; }

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

 private:
  int l_;
  int r_;
  BraidWord g_;
  int word_length_;
};

}  // namespace tcsp
