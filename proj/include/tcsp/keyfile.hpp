#pragma once

// Key and ciphertext files.
//
//   key:        "TCSPKEY" | version 0x01 | scheme | kind | l:u16 | r:u16 | W:u16
//               | blob(g as word) | blob(public element) x m | [blob(secret word) x m]
//   ciphertext: "TCSPCT" | version 0x01 | scheme | blob(header) | tag[32] | blob(ct)
//
// scheme 0x01 = CS (m = 1), 0x02 = twin (m = 2); kind 0x01 public, 0x02 secret.
// blob = u32 length prefix + bytes; elements use the codec serialization.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcsp/bytes.hpp"
#include "tcsp/codec.hpp"
#include "tcsp/elgamal.hpp"
#include "tcsp/error.hpp"
#include "tcsp/params.hpp"
#include "tcsp/sampler.hpp"

namespace tcsp {

enum class Scheme : std::uint8_t { Cs = 0x01, Twin = 0x02 };

inline std::string_view to_string(Scheme s) { return s == Scheme::Cs ? "cs" : "twin"; }

inline constexpr std::string_view key_magic = "TCSPKEY";
inline constexpr std::string_view ciphertext_magic = "TCSPCT";
inline constexpr std::uint8_t file_version = 0x01;

enum class KeyKind : std::uint8_t { Public = 0x01, Secret = 0x02 };

using PublicKey = std::variant<CsPublicKey, TwinPublicKey>;
using SecretKey = std::variant<CsKeyPair, TwinKeyPair>;

struct CiphertextFile {
  Scheme scheme;
  Ciphertext ct;
  friend bool operator==(const CiphertextFile&, const CiphertextFile&) = default;
};

namespace detail {

inline void write_key_header(ByteWriter& w, Scheme scheme, KeyKind kind, const GroupParams& params) {
  w.text(key_magic);
  w.u8(file_version);
  w.u8(static_cast<std::uint8_t>(scheme));
  w.u8(static_cast<std::uint8_t>(kind));
  w.u16(static_cast<std::uint16_t>(params.left()));
  w.u16(static_cast<std::uint16_t>(params.right()));
  w.u16(static_cast<std::uint16_t>(params.word_length()));
  w.blob(serialize_word(params.base()));
}

inline void read_version(ByteReader& r) {
  const std::size_t at = r.offset();
  if (const std::uint8_t v = r.u8(); v != file_version) ByteReader::fail(at, "unsupported version " + std::to_string(v));
}

inline Scheme read_scheme(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint8_t s = r.u8();
  if (s != static_cast<std::uint8_t>(Scheme::Cs) && s != static_cast<std::uint8_t>(Scheme::Twin)) {
    ByteReader::fail(at, "unknown scheme " + std::to_string(s));
  }
  return static_cast<Scheme>(s);
}

struct KeyHeader {
  Scheme scheme;
  KeyKind kind;
  GroupParams params;
};

inline KeyHeader read_key_header(ByteReader& r) {
  r.expect_text(key_magic, "key magic");
  read_version(r);
  const Scheme scheme = read_scheme(r);
  const std::size_t kind_at = r.offset();
  const std::uint8_t kind = r.u8();
  if (kind != static_cast<std::uint8_t>(KeyKind::Public) && kind != static_cast<std::uint8_t>(KeyKind::Secret)) {
    ByteReader::fail(kind_at, "unknown key kind " + std::to_string(kind));
  }
  const std::size_t params_at = r.offset();
  const int l = r.u16();
  const int rr = r.u16();
  const int word_length = r.u16();
  ByteReader g_blob = r.blob();
  BraidWord g = read_word(g_blob);
  g_blob.expect_end("base word");
  try {
    return {scheme, static_cast<KeyKind>(kind), GroupParams(l, rr, std::move(g), word_length)};
  } catch (const Error& e) {
    ByteReader::fail(params_at, std::string("invalid parameters: ") + e.what());
  }
}

inline CanonicalForm read_element(ByteReader& r, const GroupParams& params) {
  const std::size_t at = r.offset();
  ByteReader blob = r.blob();
  CanonicalForm cf = read_canonical(blob);
  blob.expect_end("element");
  if (cf.n != params.strands()) ByteReader::fail(at, "element strand count differs from parameters");
  return cf;
}

inline BraidWord read_secret(ByteReader& r, const GroupParams& params, const CanonicalForm& element) {
  const std::size_t at = r.offset();
  ByteReader blob = r.blob();
  BraidWord secret = read_word(blob);
  blob.expect_end("secret word");
  if (!in_subgroup(params, SubgroupSide::Left, secret)) ByteReader::fail(at, "secret word leaves the left subgroup");
  if (public_conjugate(params, secret) != element) ByteReader::fail(at, "secret does not match its public element");
  return secret;
}

inline std::size_t element_count(Scheme s) { return s == Scheme::Cs ? 1 : 2; }

}  // namespace detail

inline Bytes serialize_public_key(const PublicKey& key) {
  ByteWriter w;
  std::visit(
      [&](const auto& pk) {
        using T = std::decay_t<decltype(pk)>;
        if constexpr (std::is_same_v<T, CsPublicKey>) {
          detail::write_key_header(w, Scheme::Cs, KeyKind::Public, pk.params);
          w.blob(serialize_canonical(pk.element));
        } else {
          detail::write_key_header(w, Scheme::Twin, KeyKind::Public, pk.params);
          for (const CanonicalForm& e : pk.elements) w.blob(serialize_canonical(e));
        }
      },
      key);
  return std::move(w).take();
}

inline Bytes serialize_secret_key(const SecretKey& key) {
  ByteWriter w;
  std::visit(
      [&](const auto& kp) {
        using T = std::decay_t<decltype(kp)>;
        if constexpr (std::is_same_v<T, CsKeyPair>) {
          detail::write_key_header(w, Scheme::Cs, KeyKind::Secret, kp.params);
          w.blob(serialize_canonical(kp.element));
          w.blob(serialize_word(kp.secret));
        } else {
          detail::write_key_header(w, Scheme::Twin, KeyKind::Secret, kp.params);
          for (const CanonicalForm& e : kp.elements) w.blob(serialize_canonical(e));
          for (const BraidWord& s : kp.secrets) w.blob(serialize_word(s));
        }
      },
      key);
  return std::move(w).take();
}

inline PublicKey parse_public_key(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const std::size_t kind_at = key_magic.size() + 2;
  detail::KeyHeader h = detail::read_key_header(r);
  if (h.kind != KeyKind::Public) ByteReader::fail(kind_at, "expected a public key file");
  std::vector<CanonicalForm> elements;
  for (std::size_t i = 0; i < detail::element_count(h.scheme); ++i) elements.push_back(detail::read_element(r, h.params));
  r.expect_end("public key");
  if (h.scheme == Scheme::Cs) return CsPublicKey{std::move(h.params), std::move(elements[0])};
  return TwinPublicKey{std::move(h.params), {std::move(elements[0]), std::move(elements[1])}};
}

inline SecretKey parse_secret_key(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const std::size_t kind_at = key_magic.size() + 2;
  detail::KeyHeader h = detail::read_key_header(r);
  if (h.kind != KeyKind::Secret) ByteReader::fail(kind_at, "expected a secret key file");
  std::vector<CanonicalForm> elements;
  for (std::size_t i = 0; i < detail::element_count(h.scheme); ++i) elements.push_back(detail::read_element(r, h.params));
  std::vector<BraidWord> secrets;
  for (const CanonicalForm& e : elements) secrets.push_back(detail::read_secret(r, h.params, e));
  r.expect_end("secret key");
  if (h.scheme == Scheme::Cs) return CsKeyPair{std::move(h.params), std::move(secrets[0]), std::move(elements[0])};
  return TwinKeyPair{std::move(h.params),
                     {std::move(secrets[0]), std::move(secrets[1])},
                     {std::move(elements[0]), std::move(elements[1])}};
}

inline Bytes serialize_ciphertext(const CiphertextFile& file) {
  ByteWriter w;
  w.text(ciphertext_magic);
  w.u8(file_version);
  w.u8(static_cast<std::uint8_t>(file.scheme));
  w.blob(serialize_canonical(file.ct.header));
  w.raw(file.ct.box.tag);
  w.blob(file.ct.box.ct);
  return std::move(w).take();
}

inline CiphertextFile parse_ciphertext(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_text(ciphertext_magic, "ciphertext magic");
  detail::read_version(r);
  CiphertextFile file{detail::read_scheme(r), {}};
  ByteReader header = r.blob();
  file.ct.header = read_canonical(header);
  header.expect_end("ciphertext header");
  auto tag = r.raw(file.ct.box.tag.size());
  std::copy(tag.begin(), tag.end(), file.ct.box.tag.begin());
  ByteReader body = r.blob();
  auto ct = body.raw(body.remaining());
  file.ct.box.ct.assign(ct.begin(), ct.end());
  r.expect_end("ciphertext");
  return file;
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace tcsp
