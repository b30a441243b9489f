#pragma once

// Canonical serialization of group elements, the hash H onto 256-bit keys,
// and the one-time symmetric cipher (Enc, Dec) keyed by H's output.
//
// Element encoding (big-endian):
//   "TCSP" | version 0x01 | kind | n:u16 | body
//   kind 0x02 canonical form: delta_exp:i32 | factor_count:u32 | factors, each n x u16 images
//   kind 0x01 raw word:       letter_count:u32 | letters, each i16
// Hash input: label_len:u8 | label | count:u8 | serializations...

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/braid.hpp"
#include "tcsp/bytes.hpp"
#include "tcsp/error.hpp"
#include "tcsp/sha256.hpp"

namespace tcsp {

inline constexpr std::string_view element_magic = "TCSP";
inline constexpr std::uint8_t codec_version = 0x01;
inline constexpr std::uint8_t kind_word = 0x01;
inline constexpr std::uint8_t kind_canonical = 0x02;

// Domain labels for H.
namespace label {
inline constexpr std::string_view cs = "cs";
inline constexpr std::string_view twin = "twin";
inline constexpr std::string_view nike = "nike";
inline constexpr std::string_view kex = "kex";
inline constexpr std::string_view confirm = "confirm";
}  // namespace label

namespace detail {

inline void write_element_header(ByteWriter& w, std::uint8_t kind, int n) {
  w.text(element_magic);
  w.u8(codec_version);
  w.u8(kind);
  w.u16(static_cast<std::uint16_t>(n));
}

inline int read_element_header(ByteReader& r, std::uint8_t expected_kind) {
  r.expect_text(element_magic, "element magic");
  const std::size_t version_at = r.offset();
  if (const std::uint8_t v = r.u8(); v != codec_version) {
    ByteReader::fail(version_at, "unsupported element version " + std::to_string(v));
  }
  const std::size_t kind_at = r.offset();
  if (const std::uint8_t k = r.u8(); k != expected_kind) {
    ByteReader::fail(kind_at, "unexpected element kind " + std::to_string(k));
  }
  const std::size_t n_at = r.offset();
  const int n = r.u16();
  if (n < 2 || n > max_strands) ByteReader::fail(n_at, "unsupported strand count " + std::to_string(n));
  return n;
}

}  // namespace detail

inline void write_canonical(ByteWriter& w, const CanonicalForm& cf) {
  if (cf.delta_exp < INT32_MIN || cf.delta_exp > INT32_MAX) throw ContractViolation("delta exponent exceeds 32 bits");
  detail::write_element_header(w, kind_canonical, cf.n);
  w.i32(static_cast<std::int32_t>(cf.delta_exp));
  w.u32(static_cast<std::uint32_t>(cf.factors.size()));
  for (const PermutationBraid& f : cf.factors) {
    for (PermutationBraid::Image v : f.images()) w.u16(v);
  }
}

inline Bytes serialize_canonical(const CanonicalForm& cf) {
  ByteWriter w;
  write_canonical(w, cf);
  return std::move(w).take();
}

// Rejects anything that is not the canonical form of some element, so the
// encoding stays injective in both directions.
inline CanonicalForm read_canonical(ByteReader& r) {
  CanonicalForm cf;
  cf.n = detail::read_element_header(r, kind_canonical);
  cf.delta_exp = r.i32();
  const std::size_t count_at = r.offset();
  const std::uint32_t count = r.u32();
  const std::size_t factor_bytes = 2 * static_cast<std::size_t>(cf.n);
  if (count > r.remaining() / factor_bytes) ByteReader::fail(count_at, "factor count exceeds input");
  cf.factors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t at = r.offset();
    std::vector<PermutationBraid::Image> images(static_cast<std::size_t>(cf.n));
    for (auto& v : images) {
      const std::uint16_t x = r.u16();
      if (x >= cf.n) ByteReader::fail(at, "image out of range in factor " + std::to_string(i));
      v = static_cast<PermutationBraid::Image>(x);
    }
    PermutationBraid f;
    try {
      f = PermutationBraid::from_images(std::move(images));
    } catch (const ContractViolation&) {
      ByteReader::fail(at, "factor " + std::to_string(i) + " is not a permutation");
    }
    if (f.is_identity() || f.is_half_twist()) ByteReader::fail(at, "factor " + std::to_string(i) + " is trivial or Delta");
    if (i > 0 && (f.starting_set() & ~cf.factors.back().finishing_set()) != 0) {
      ByteReader::fail(at, "factor " + std::to_string(i) + " breaks left-weightedness");
    }
    cf.factors.push_back(std::move(f));
  }
  return cf;
}

inline CanonicalForm parse_canonical(std::span<const std::uint8_t> bytes, std::size_t base = 0) {
  ByteReader r(bytes, base);
  CanonicalForm cf = read_canonical(r);
  r.expect_end("canonical form");
  return cf;
}

inline void write_word(ByteWriter& w, const BraidWord& word) {
  detail::write_element_header(w, kind_word, word.strands());
  w.u32(static_cast<std::uint32_t>(word.size()));
  for (BraidWord::Letter x : word.letters()) w.u16(static_cast<std::uint16_t>(x));
}

inline Bytes serialize_word(const BraidWord& word) {
  ByteWriter w;
  write_word(w, word);
  return std::move(w).take();
}

inline BraidWord read_word(ByteReader& r) {
  const int n = detail::read_element_header(r, kind_word);
  const std::size_t count_at = r.offset();
  const std::uint32_t count = r.u32();
  if (count > r.remaining() / 2) ByteReader::fail(count_at, "letter count exceeds input");
  std::vector<BraidWord::Letter> letters(count);
  for (auto& x : letters) {
    const std::size_t at = r.offset();
    x = static_cast<BraidWord::Letter>(r.u16());
    if (x == 0 || std::abs(x) > n - 1) ByteReader::fail(at, "generator index out of range");
  }
  return BraidWord(n, std::move(letters));
}

inline BraidWord parse_word(std::span<const std::uint8_t> bytes, std::size_t base = 0) {
  ByteReader r(bytes, base);
  BraidWord w = read_word(r);
  r.expect_end("word");
  return w;
}

// ---------------------------------------------------------------------------
// H and (Enc, Dec)

struct SymKey {
  std::array<std::uint8_t, 32> bytes{};
  friend bool operator==(const SymKey&, const SymKey&) = default;
};

// H(label, e_1, ..., e_m) = SHA-256(label_len | label | m | ser(e_1) | ... | ser(e_m)).
// Order-sensitive; group-equal inputs hash equally because canonical forms
// are unique.
inline SymKey hash_elements(std::string_view domain, std::span<const CanonicalForm> elems) {
  if (elems.empty()) throw ContractViolation("hash_elements needs at least one element");
  if (domain.size() > 255 || elems.size() > 255) throw ContractViolation("hash label or arity exceeds one byte");
  Sha256 h;
  const std::array<std::uint8_t, 1> label_len{static_cast<std::uint8_t>(domain.size())};
  const std::array<std::uint8_t, 1> count{static_cast<std::uint8_t>(elems.size())};
  h.update(label_len).update(domain).update(count);
  for (const CanonicalForm& e : elems) h.update(serialize_canonical(e));
  return SymKey{h.finish()};
}

inline SymKey hash_elements(std::string_view domain, std::initializer_list<CanonicalForm> elems) {
  return hash_elements(domain, std::span(elems.begin(), elems.size()));
}

struct SealedBox {
  Bytes ct;
  Digest tag{};
  friend bool operator==(const SealedBox&, const SealedBox&) = default;
};

namespace detail {

// block_i = SHA-256(k || "ks" || i_be64)
inline Bytes xor_keystream(const SymKey& k, std::span<const std::uint8_t> in) {
  Bytes out(in.begin(), in.end());
  Digest block{};
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    if (pos % block.size() == 0) {
      block = Sha256().update(k.bytes).update("ks").update_u64_be(pos / block.size()).finish();
    }
    out[pos] ^= block[pos % block.size()];
  }
  return out;
}

// tag = SHA-256(k || "mac" || ct)
inline Digest mac(const SymKey& k, std::span<const std::uint8_t> ct) {
  return Sha256().update(k.bytes).update("mac").update(ct).finish();
}

}  // namespace detail

// Deterministic and single-use: every key this library derives is bound to a
// fresh ephemeral, so (k, m) never repeats across honest encryptions.
inline SealedBox sym_encrypt(const SymKey& k, std::span<const std::uint8_t> m) {
  SealedBox box;
  box.ct = detail::xor_keystream(k, m);
  box.tag = detail::mac(k, box.ct);
  return box;
}

// Throws AuthenticationError unless the tag matches (constant-time compare).
inline Bytes sym_decrypt(const SymKey& k, const SealedBox& box) {
  const Digest expected = detail::mac(k, box.ct);
  if (!constant_time_equal(expected, box.tag)) throw AuthenticationError("authentication failure: tag mismatch");
  return detail::xor_keystream(k, box.ct);
}

}  // namespace tcsp
