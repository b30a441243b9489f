#pragma once

// Deterministic counter-mode generator: block_i = SHA-256(seed || "rng" || i).
// Identical seeds give identical draw sequences. Not an entropy source.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "tcsp/error.hpp"
#include "tcsp/sha256.hpp"

namespace tcsp {

using Seed = std::array<std::uint8_t, 32>;

// Parses exactly 64 hex characters.
inline std::optional<Seed> parse_seed_hex(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Seed seed{};
  for (std::size_t k = 0; k < seed.size(); ++k) {
    const int hi = nibble(hex[2 * k]);
    const int lo = nibble(hex[2 * k + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    seed[k] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return seed;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(const Seed& seed) : seed_(seed) {}

  // Convenience for tests and demos: seed = SHA-256("tcsp-seed" || value).
  static SeededRng from_u64(std::uint64_t value) {
    return SeededRng(Sha256().update("tcsp-seed").update_u64_be(value).finish());
  }

  // Seed from the OS for commands run without --seed.
  static SeededRng from_entropy() {
    std::random_device device;
    Seed seed{};
    for (auto& b : seed) b = static_cast<std::uint8_t>(device());
    return SeededRng(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::array<std::uint8_t, 8> bytes{};
    fill(bytes);
    result_type v = 0;
    for (std::uint8_t b : bytes) v = v << 8 | b;
    return v;
  }

  // Uniform in [0, bound) by rejection.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound == 0) throw ContractViolation("uniform(0)");
    const std::uint64_t limit = max() - max() % bound;
    for (;;) {
      const std::uint64_t v = (*this)();
      if (v < limit) return v % bound;
    }
  }

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
      if (offset_ == block_.size()) refill();
      b = block_[offset_++];
    }
  }

  // Independent child stream; the parent advances by 32 bytes.
  SeededRng fork(std::string_view label) {
    Seed child{};
    fill(child);
    return SeededRng(Sha256().update(child).update("fork").update(label).finish());
  }

  const Seed& seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  void refill() {
    block_ = Sha256().update(seed_).update("rng").update_u64_be(counter_++).finish();
    offset_ = 0;
  }

  Seed seed_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t offset_ = block_.size();
};

}  // namespace tcsp
