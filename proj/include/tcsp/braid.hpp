#pragma once

// Braid group arithmetic on n strands: free words in the Artin generators,
// permutation braids (the simple elements of the Garside structure) and the
// left-greedy normal form Delta^p A_1 ... A_k used to decide equality.
//
// Permutation conventions. A permutation braid is stored as a 0-based image
// table. The table of a positive word s_{i1} s_{i2} ... s_{im} is the
// function composition t_{i1} o t_{i2} o ... o t_{im}, where t_i swaps the
// positions i-1 and i. With this convention
//   * permutation_of(a * b) == compose(permutation_of(a), permutation_of(b)),
//   * the starting set S(A) is the descent set of the inverse table,
//   * the finishing set F(A) is the descent set of the table itself,
//   * Delta's table is k -> n-1-k.
// Starting and finishing sets are returned as bitmasks: bit i set means the
// generator s_i belongs to the set.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcsp/error.hpp"

namespace tcsp {

// Bitmask-backed starting/finishing sets cap the strand count.
inline constexpr int max_strands = 64;

inline void check_strand_count(int n) {
  if (n < 2 || n > max_strands) {
    throw ContractViolation("strand count must be in [2, " +
                            std::to_string(max_strands) + "], got " +
                            std::to_string(n));
  }
}

inline void require_same_strands(int lhs, int rhs) {
  if (lhs != rhs) throw StrandMismatch(lhs, rhs);
}

// A free word in the signed Artin generators. Letter +i is s_i, -i is its
// inverse; valid indices are 1..n-1. The empty word is the identity.
class BraidWord {
 public:
  using Letter = std::int16_t;

  BraidWord() = default;
  explicit BraidWord(int n) : n_(n) { check_strand_count(n); }
  BraidWord(int n, std::vector<Letter> letters)
      : n_(n), letters_(std::move(letters)) {
    check_strand_count(n);
    for (Letter x : letters_) {
      if (x == 0 || std::abs(x) > n - 1) {
        throw ContractViolation("generator index " + std::to_string(x) +
                                " outside [1, " + std::to_string(n - 1) + "]");
      }
    }
  }
  BraidWord(int n, std::initializer_list<Letter> letters)
      : BraidWord(n, std::vector<Letter>(letters)) {}

  int strands() const noexcept { return n_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  // Syntactic equality. Group equality is tcsp::equals.
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int n_ = 0;
  std::vector<Letter> letters_;
};

// Human-readable rendering, e.g. "s1 s2^-1 s1" ("e" for the identity).
inline std::string to_string(const BraidWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (BraidWord::Letter x : w.letters()) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(std::abs(x));
    if (x < 0) out += "^-1";
  }
  return out;
}

class PermutationBraid;
namespace detail {
bool left_weight(PermutationBraid& a, PermutationBraid& b);
}

// A positive braid in which every pair of strands crosses at most once,
// identified with its permutation.
class PermutationBraid {
 public:
  using Image = std::uint8_t;

  PermutationBraid() = default;

  static PermutationBraid identity(int n) {
    check_strand_count(n);
    PermutationBraid p;
    p.images_.resize(static_cast<std::size_t>(n));
    std::iota(p.images_.begin(), p.images_.end(), Image{0});
    return p;
  }

  static PermutationBraid half_twist(int n) {
    check_strand_count(n);
    PermutationBraid p;
    p.images_.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) p.images_[k] = static_cast<Image>(n - 1 - k);
    return p;
  }

  // The simple element s_i.
  static PermutationBraid generator(int n, int i) {
    PermutationBraid p = identity(n);
    if (i < 1 || i > n - 1) {
      throw ContractViolation("generator index " + std::to_string(i) +
                              " outside [1, " + std::to_string(n - 1) + "]");
    }
    std::swap(p.images_[i - 1], p.images_[i]);
    return p;
  }

  // Throws ContractViolation unless `images` is a bijection on {0..n-1}.
  static PermutationBraid from_images(std::vector<Image> images) {
    const int n = static_cast<int>(images.size());
    check_strand_count(n);
    std::vector<bool> seen(images.size(), false);
    for (Image v : images) {
      if (v >= images.size() || seen[v]) {
        throw ContractViolation("image table is not a permutation");
      }
      seen[v] = true;
    }
    PermutationBraid p;
    p.images_ = std::move(images);
    return p;
  }

  int strands() const noexcept { return static_cast<int>(images_.size()); }
  std::span<const Image> images() const noexcept { return images_; }
  Image operator[](int k) const { return images_[static_cast<std::size_t>(k)]; }

  bool is_identity() const noexcept {
    for (std::size_t k = 0; k < images_.size(); ++k) {
      if (images_[k] != k) return false;
    }
    return true;
  }

  bool is_half_twist() const noexcept {
    const std::size_t n = images_.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (images_[k] != n - 1 - k) return false;
    }
    return true;
  }

  PermutationBraid inverse() const {
    PermutationBraid p;
    p.images_.resize(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k) p.images_[images_[k]] = static_cast<Image>(k);
    return p;
  }

  // Image under the flip automorphism s_i -> s_{n-i} (conjugation by Delta).
  PermutationBraid flipped() const {
    const int n = strands();
    PermutationBraid p;
    p.images_.resize(images_.size());
    for (int k = 0; k < n; ++k) {
      p.images_[k] = static_cast<Image>(n - 1 - images_[n - 1 - k]);
    }
    return p;
  }

  // Number of crossings, i.e. the inversion count.
  int length() const noexcept {
    int count = 0;
    for (std::size_t a = 0; a < images_.size(); ++a) {
      for (std::size_t b = a + 1; b < images_.size(); ++b) {
        if (images_[a] > images_[b]) ++count;
      }
    }
    return count;
  }

  std::uint64_t finishing_set() const noexcept { return descents(images_); }
  std::uint64_t starting_set() const { return descents(inverse().images_); }

  // (a o b)[k] = a[b[k]]
  friend PermutationBraid compose(const PermutationBraid& a, const PermutationBraid& b) {
    require_same_strands(a.strands(), b.strands());
    PermutationBraid p;
    p.images_.resize(a.images_.size());
    for (std::size_t k = 0; k < a.images_.size(); ++k) p.images_[k] = a.images_[b.images_[k]];
    return p;
  }

  friend bool operator==(const PermutationBraid&, const PermutationBraid&) = default;

  // Descent mask of an image table: bit i set iff table[i-1] > table[i].
  static std::uint64_t descents(std::span<const Image> table) noexcept {
    std::uint64_t mask = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i - 1] > table[i]) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

 private:
  friend bool detail::left_weight(PermutationBraid& a, PermutationBraid& b);

  std::vector<Image> images_;
};

// A positive word for a permutation braid (one letter per crossing).
inline BraidWord positive_word(const PermutationBraid& p) {
  std::vector<BraidWord::Letter> reversed;
  std::vector<PermutationBraid::Image> table(p.images().begin(), p.images().end());
  // Peel generators off the right end: A = A' s_i whenever i is a descent.
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i - 1] > table[i]) {
        std::swap(table[i - 1], table[i]);
        reversed.push_back(static_cast<BraidWord::Letter>(i));
        progress = true;
      }
    }
  }
  return BraidWord(p.strands(), std::vector<BraidWord::Letter>(reversed.rbegin(), reversed.rend()));
}

// Left-greedy normal form Delta^delta_exp * factors[0] * ... * factors[k-1].
// Factors are never the identity or Delta, and consecutive factors are
// left-weighted: S(factors[i+1]) is a subset of F(factors[i]).
struct CanonicalForm {
  int n = 0;
  std::int64_t delta_exp = 0;
  std::vector<PermutationBraid> factors;

  static CanonicalForm identity(int n) {
    check_strand_count(n);
    return CanonicalForm{n, 0, {}};
  }

  bool is_identity() const noexcept { return delta_exp == 0 && factors.empty(); }

  // Checks the structural invariants; used when parsing untrusted bytes.
  bool is_valid() const {
    if (n < 2 || n > max_strands) return false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const PermutationBraid& f = factors[i];
      if (f.strands() != n || f.is_identity() || f.is_half_twist()) return false;
      if (i > 0 && (f.starting_set() & ~factors[i - 1].finishing_set()) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline std::string to_string(const CanonicalForm& cf) {
  std::string out = "D^" + std::to_string(cf.delta_exp);
  for (const PermutationBraid& f : cf.factors) {
    out += " [";
    for (std::size_t k = 0; k < f.images().size(); ++k) {
      if (k) out += ',';
      out += std::to_string(f.images()[k]);
    }
    out += ']';
  }
  return out;
}

namespace detail {

// Rewrites the pair (a, b) in place into the left-weighted pair with the
// same product a*b by moving generators from the front of b onto the end of
// a while S(b) is not contained in F(a). Returns whether anything moved.
inline bool left_weight(PermutationBraid& a, PermutationBraid& b) {
  using Image = PermutationBraid::Image;
  std::vector<Image>& ta = a.images_;
  std::vector<Image>& tb = b.images_;
  const std::size_t n = ta.size();

  std::vector<Image> inv_b(n);
  for (std::size_t k = 0; k < n; ++k) inv_b[tb[k]] = static_cast<Image>(k);

  std::uint64_t fin_a = PermutationBraid::descents(ta);
  std::uint64_t start_b = PermutationBraid::descents(inv_b);

  auto refresh = [n](std::uint64_t& mask, const std::vector<Image>& table, std::size_t i) {
    for (std::size_t j = (i > 1 ? i - 1 : 1); j <= i + 1 && j < n; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      if (table[j - 1] > table[j]) {
        mask |= bit;
      } else {
        mask &= ~bit;
      }
    }
  };

  bool changed = false;
  for (std::uint64_t movable = start_b & ~fin_a; movable != 0; movable = start_b & ~fin_a) {
    const auto i = static_cast<std::size_t>(std::countr_zero(movable));
    // a <- a s_i
    std::swap(ta[i - 1], ta[i]);
    // b <- s_i^-1 b: exchange the values i-1 and i.
    std::swap(tb[inv_b[i - 1]], tb[inv_b[i]]);
    std::swap(inv_b[i - 1], inv_b[i]);
    refresh(fin_a, ta, i);
    refresh(start_b, inv_b, i);
    changed = true;
  }
  return changed;
}

// Incremental left-greedy normal form. Elements are appended on the right
// (letters, Delta powers, simple elements, whole canonical forms) and the
// factor list is kept left-weighted after every append.
//
// Delta powers are kept at the front. Moving Delta^e leftwards past a factor
// applies the flip e times; the flip is tracked lazily as a parity, so the
// stored factors are flip^parity of the actual ones. The flip preserves
// left-weightedness, so all normalization happens in stored space.
class NormalFormBuilder {
 public:
  explicit NormalFormBuilder(int n)
      : n_(n), half_twist_(PermutationBraid::half_twist(n)) {}

  int strands() const noexcept { return n_; }

  void push_letter(BraidWord::Letter x) {
    const int i = std::abs(x);
    if (x > 0) {
      push_simple(PermutationBraid::generator(n_, i));
    } else {
      // s_i^-1 = Delta^-1 (Delta s_i^-1); the table of Delta s_i^-1 is rev o t_i.
      push_delta(-1);
      push_simple(compose(half_twist_, PermutationBraid::generator(n_, i)));
    }
  }

  void push_word(const BraidWord& w) {
    require_same_strands(n_, w.strands());
    for (BraidWord::Letter x : w.letters()) push_letter(x);
  }

  void push_inverse_word(const BraidWord& w) {
    require_same_strands(n_, w.strands());
    const auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) push_letter(static_cast<BraidWord::Letter>(-*it));
  }

  void push_delta(std::int64_t e) {
    delta_ += e;
    if (e % 2 != 0) flipped_ = !flipped_;
  }

  void push_simple(const PermutationBraid& actual) {
    require_same_strands(n_, actual.strands());
    if (actual.is_identity()) return;
    factors_.push_back(flipped_ ? actual.flipped() : actual);
    for (std::size_t j = factors_.size() - 1; j > 0; --j) {
      if (!left_weight(factors_[j - 1], factors_[j])) break;
    }
    while (!factors_.empty() && factors_.front().is_half_twist()) {
      factors_.pop_front();
      ++delta_;
      // The removed Delta sat between Delta^delta and the rest: no flip needed.
    }
    while (!factors_.empty() && factors_.back().is_identity()) factors_.pop_back();
  }

  void push(const CanonicalForm& cf) {
    require_same_strands(n_, cf.n);
    push_delta(cf.delta_exp);
    for (const PermutationBraid& f : cf.factors) push_simple(f);
  }

  // Appends cf^-1 = A_k^-1 ... A_1^-1 Delta^-p, with A^-1 = Delta^-1 (Delta A^-1).
  void push_inverse(const CanonicalForm& cf) {
    require_same_strands(n_, cf.n);
    for (auto it = cf.factors.rbegin(); it != cf.factors.rend(); ++it) {
      push_delta(-1);
      push_simple(compose(half_twist_, it->inverse()));
    }
    push_delta(-cf.delta_exp);
  }

  CanonicalForm finish() const {
    CanonicalForm cf{n_, delta_, {}};
    cf.factors.reserve(factors_.size());
    for (const PermutationBraid& f : factors_) cf.factors.push_back(flipped_ ? f.flipped() : f);
    return cf;
  }

 private:
  int n_;
  PermutationBraid half_twist_;
  std::int64_t delta_ = 0;
  bool flipped_ = false;
  std::deque<PermutationBraid> factors_;
};

// Appends `letters` onto `out`, cancelling adjacent s_i s_i^-1 pairs.
inline void append_reduced(std::vector<BraidWord::Letter>& out, std::span<const BraidWord::Letter> letters) {
  for (BraidWord::Letter x : letters) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Word-level operations

inline BraidWord free_reduce(const BraidWord& w) {
  std::vector<BraidWord::Letter> out;
  out.reserve(w.size());
  detail::append_reduced(out, w.letters());
  return BraidWord(w.strands(), std::move(out));
}

// Concatenation a*b, freely reduced at the junction.
inline BraidWord multiply(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a.strands(), b.strands());
  std::vector<BraidWord::Letter> out(a.letters().begin(), a.letters().end());
  detail::append_reduced(out, b.letters());
  return BraidWord(a.strands(), std::move(out));
}

inline BraidWord invert(const BraidWord& a) {
  std::vector<BraidWord::Letter> out;
  out.reserve(a.size());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) {
    out.push_back(static_cast<BraidWord::Letter>(-*it));
  }
  return BraidWord(a.strands(), std::move(out));
}

// t a t^-1
inline BraidWord conjugate(const BraidWord& a, const BraidWord& t) {
  return multiply(multiply(t, a), invert(t));
}

// Delta_n = (s1 s2 ... s_{n-1})(s1 ... s_{n-2}) ... (s1)
inline BraidWord delta(int n) {
  check_strand_count(n);
  std::vector<BraidWord::Letter> letters;
  for (int top = n - 1; top >= 1; --top) {
    for (int i = 1; i <= top; ++i) letters.push_back(static_cast<BraidWord::Letter>(i));
  }
  return BraidWord(n, std::move(letters));
}

// Image in the symmetric group; signs are ignored.
inline PermutationBraid permutation_of(const BraidWord& a) {
  PermutationBraid p = PermutationBraid::identity(a.strands());
  std::vector<PermutationBraid::Image> table(p.images().begin(), p.images().end());
  for (BraidWord::Letter x : a.letters()) {
    const int i = std::abs(x);
    std::swap(table[i - 1], table[i]);  // table o t_i
  }
  return PermutationBraid::from_images(std::move(table));
}

inline CanonicalForm normal_form(const BraidWord& a) {
  detail::NormalFormBuilder builder(a.strands());
  builder.push_word(a);
  return builder.finish();
}

// Expands a canonical form back into a word.
inline BraidWord word_of(const CanonicalForm& cf) {
  std::vector<BraidWord::Letter> letters;
  const BraidWord d = delta(cf.n);
  for (std::int64_t k = 0; k < std::abs(cf.delta_exp); ++k) {
    for (BraidWord::Letter x : d.letters()) {
      letters.push_back(cf.delta_exp > 0 ? x : static_cast<BraidWord::Letter>(-x));
    }
  }
  for (const PermutationBraid& f : cf.factors) {
    const BraidWord w = positive_word(f);
    letters.insert(letters.end(), w.letters().begin(), w.letters().end());
  }
  return BraidWord(cf.n, std::move(letters));
}

inline bool equals(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a.strands(), b.strands());
  return normal_form(a) == normal_form(b);
}

// ---------------------------------------------------------------------------
// Canonical-form arithmetic. These avoid expanding factors back into letters.

inline CanonicalForm multiply(const CanonicalForm& a, const CanonicalForm& b) {
  require_same_strands(a.n, b.n);
  detail::NormalFormBuilder builder(a.n);
  builder.push(a);
  builder.push(b);
  return builder.finish();
}

inline CanonicalForm invert(const CanonicalForm& a) {
  detail::NormalFormBuilder builder(a.n);
  builder.push_inverse(a);
  return builder.finish();
}

// t a t^-1
inline CanonicalForm conjugate(const CanonicalForm& a, const BraidWord& t) {
  require_same_strands(a.n, t.strands());
  detail::NormalFormBuilder builder(a.n);
  builder.push_word(t);
  builder.push(a);
  builder.push_inverse_word(t);
  return builder.finish();
}

// a b^-1 (the quotient notation a/b)
inline CanonicalForm divide(const CanonicalForm& a, const CanonicalForm& b) {
  require_same_strands(a.n, b.n);
  detail::NormalFormBuilder builder(a.n);
  builder.push(a);
  builder.push_inverse(b);
  return builder.finish();
}

}  // namespace tcsp
