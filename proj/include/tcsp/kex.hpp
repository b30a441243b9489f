#pragma once

// Key exchange from four cross conjugates.
//
// The Left party holds x_1, x_2 in LB_l and publishes X_i = x_i g x_i^-1; the
// Right party holds y_1, y_2 in RB_r and publishes Y_j. Both compute
//   k = H(ccs(X_1,Y_1), ccs(X_1,Y_2), ccs(X_2,Y_1), ccs(X_2,Y_2))
// where Left evaluates ccs(X_i,Y_j) as x_i Y_j x_i^-1 and Right as
// y_j X_i y_j^-1.
//
// Wire format: length:u32 | msg_type:u8 | payload, where length counts the
// type byte and payload. INIT/RESP carry two u32-prefixed canonical forms,
// CONFIRM a 32-byte tag = SHA-256(k || "confirm" || role).

#include <array>
#include <exception>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "tcsp/braid.hpp"
#include "tcsp/bytes.hpp"
#include "tcsp/channel.hpp"
#include "tcsp/codec.hpp"
#include "tcsp/elgamal.hpp"
#include "tcsp/params.hpp"
#include "tcsp/rng.hpp"
#include "tcsp/sampler.hpp"

namespace tcsp {

struct NikePublic {
  SubgroupSide side;
  std::array<CanonicalForm, 2> elements;
};

struct NikeIdentity {
  GroupParams params;
  SubgroupSide side;
  std::array<BraidWord, 2> secrets;
  std::array<CanonicalForm, 2> elements;

  NikePublic public_part() const { return {side, elements}; }
};

inline NikeIdentity nike_identity(const GroupParams& params, SubgroupSide side, SeededRng& rng) {
  BraidWord s1 = sample_subgroup(params, side, rng);
  BraidWord s2 = sample_subgroup(params, side, rng);
  CanonicalForm e1 = public_conjugate(params, s1);
  CanonicalForm e2 = public_conjugate(params, s2);
  return {params, side, {std::move(s1), std::move(s2)}, {std::move(e1), std::move(e2)}};
}

// ccs(X_i, Y_j) for (i, j) = (1,1), (1,2), (2,1), (2,2).
inline std::array<CanonicalForm, 4> cross_conjugates(const NikeIdentity& me, const NikePublic& peer) {
  if (me.side == peer.side) {
    throw ContractViolation("key exchange needs opposite subgroups; both parties are " + std::string(to_string(me.side)));
  }
  for (const CanonicalForm& e : peer.elements) require_same_strands(me.params.strands(), e.n);
  std::array<CanonicalForm, 4> out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out[2 * i + j] = me.side == SubgroupSide::Left ? ccs_shared(me.secrets[i], peer.elements[j])
                                                     : ccs_shared(me.secrets[j], peer.elements[i]);
    }
  }
  return out;
}

inline SymKey nike_shared_key(const NikeIdentity& me, const NikePublic& peer) {
  return hash_elements(label::nike, cross_conjugates(me, peer));
}

// ---------------------------------------------------------------------------
// Framing

enum class MsgType : std::uint8_t { Init = 0x01, Resp = 0x02, Confirm = 0x03 };

inline constexpr std::uint32_t max_frame_bytes = 1u << 20;

struct KexMessage {
  MsgType type;
  std::vector<CanonicalForm> elements;  // INIT, RESP: exactly two
  Digest tag{};                         // CONFIRM
};

inline Bytes encode_frame(const KexMessage& msg) {
  ByteWriter payload;
  payload.u8(static_cast<std::uint8_t>(msg.type));
  if (msg.type == MsgType::Confirm) {
    payload.raw(msg.tag);
  } else {
    if (msg.elements.size() != 2) throw ContractViolation("INIT/RESP frames carry exactly two elements");
    for (const CanonicalForm& e : msg.elements) payload.blob(serialize_canonical(e));
  }
  ByteWriter frame;
  frame.blob(payload.bytes());
  return std::move(frame).take();
}

// Decodes the bytes after the length field. Throws ProtocolError.
inline KexMessage decode_frame_body(std::span<const std::uint8_t> body) {
  try {
    ByteReader r(body, 4);
    KexMessage msg{};
    const std::uint8_t type = r.u8();
    switch (type) {
      case static_cast<std::uint8_t>(MsgType::Init):
      case static_cast<std::uint8_t>(MsgType::Resp):
        msg.type = static_cast<MsgType>(type);
        for (int k = 0; k < 2; ++k) {
          ByteReader blob = r.blob();
          msg.elements.push_back(read_canonical(blob));
          blob.expect_end("element payload");
        }
        break;
      case static_cast<std::uint8_t>(MsgType::Confirm): {
        msg.type = MsgType::Confirm;
        auto tag = r.raw(msg.tag.size());
        std::copy(tag.begin(), tag.end(), msg.tag.begin());
        break;
      }
      default:
        throw ProtocolError("unknown message type " + std::to_string(type));
    }
    r.expect_end("frame");
    return msg;
  } catch (const ParseError& e) {
    throw ProtocolError(std::string("malformed frame: ") + e.what());
  }
}

inline void send_message(ByteChannel& ch, const KexMessage& msg) { ch.send(encode_frame(msg)); }

inline KexMessage receive_message(ByteChannel& ch, MsgType expected) {
  std::array<std::uint8_t, 4> len_be{};
  ch.receive(len_be);
  const std::uint32_t len = ByteReader(len_be).u32();
  if (len == 0 || len > max_frame_bytes) throw ProtocolError("frame length " + std::to_string(len) + " out of range");
  Bytes body(len);
  ch.receive(body);
  KexMessage msg = decode_frame_body(body);
  if (msg.type != expected) {
    throw ProtocolError("expected message type " + std::to_string(static_cast<int>(expected)) + ", got " +
                        std::to_string(static_cast<int>(msg.type)));
  }
  return msg;
}

// ---------------------------------------------------------------------------
// Interactive protocol

enum class KexRole : std::uint8_t { Initiator = 0x01, Responder = 0x02 };

struct KexOptions {
  bool confirm = true;  // false: derivation only, no CONFIRM round
};

inline Digest confirmation_tag(const SymKey& k, KexRole role) {
  const std::array<std::uint8_t, 1> role_byte{static_cast<std::uint8_t>(role)};
  return Sha256().update(k.bytes).update(label::confirm).update(role_byte).finish();
}

inline SymKey kex_derive(const NikeIdentity& me, const NikePublic& peer) {
  return hash_elements(label::kex, cross_conjugates(me, peer));
}

namespace detail {

inline SymKey kex_session(KexRole role, ByteChannel& ch, const GroupParams& params, SeededRng& rng,
                          const KexOptions& opts) {
  const bool initiator = role == KexRole::Initiator;
  const NikeIdentity me = nike_identity(params, initiator ? SubgroupSide::Left : SubgroupSide::Right, rng);
  const KexMessage mine{initiator ? MsgType::Init : MsgType::Resp, {me.elements[0], me.elements[1]}, {}};

  KexMessage theirs;
  if (initiator) {
    send_message(ch, mine);
    theirs = receive_message(ch, MsgType::Resp);
  } else {
    theirs = receive_message(ch, MsgType::Init);
    send_message(ch, mine);
  }
  for (const CanonicalForm& e : theirs.elements) {
    if (e.n != params.strands()) throw ProtocolError("peer element has " + std::to_string(e.n) + " strands");
  }
  const NikePublic peer{opposite(me.side), {theirs.elements[0], theirs.elements[1]}};
  const SymKey k = kex_derive(me, peer);
  if (!opts.confirm) return k;

  const KexRole peer_role = initiator ? KexRole::Responder : KexRole::Initiator;
  auto verify = [&](const KexMessage& msg) {
    if (!constant_time_equal(msg.tag, confirmation_tag(k, peer_role))) {
      throw KeyAgreementError("key confirmation mismatch");
    }
  };
  const KexMessage confirm{MsgType::Confirm, {}, confirmation_tag(k, role)};
  if (initiator) {
    send_message(ch, confirm);
    verify(receive_message(ch, MsgType::Confirm));
  } else {
    verify(receive_message(ch, MsgType::Confirm));
    send_message(ch, confirm);
  }
  return k;
}

}  // namespace detail

// Runs one session over `ch`. On any error the channel is closed (so the
// peer sees end of stream) and the error propagates; no key is returned.
inline SymKey kex_run(KexRole role, ByteChannel& ch, const GroupParams& params, SeededRng& rng,
                      const KexOptions& opts = {}) {
  try {
    SymKey k = detail::kex_session(role, ch, params, rng, opts);
    ch.close();
    return k;
  } catch (...) {
    ch.close();
    throw;
  }
}

struct LoopbackResult {
  SymKey initiator_key;
  SymKey responder_key;
  Bytes initiator_sent;  // INIT [, CONFIRM]
  Bytes responder_sent;  // RESP [, CONFIRM]
};

// Runs both roles over a connected channel pair, the responder on its own
// thread. Rethrows the first party's error.
inline LoopbackResult kex_pair(ByteChannel& initiator_end, ByteChannel& responder_end, const GroupParams& params,
                               SeededRng initiator_rng, SeededRng responder_rng, const KexOptions& opts = {}) {
  RecordingChannel init_rec(initiator_end);
  RecordingChannel resp_rec(responder_end);
  std::optional<SymKey> responder_key;
  std::exception_ptr responder_error;
  std::thread responder([&] {
    try {
      responder_key = kex_run(KexRole::Responder, resp_rec, params, responder_rng, opts);
    } catch (...) {
      responder_error = std::current_exception();
    }
  });
  std::optional<SymKey> initiator_key;
  std::exception_ptr initiator_error;
  try {
    initiator_key = kex_run(KexRole::Initiator, init_rec, params, initiator_rng, opts);
  } catch (...) {
    initiator_error = std::current_exception();
  }
  responder.join();
  if (initiator_error) std::rethrow_exception(initiator_error);
  if (responder_error) std::rethrow_exception(responder_error);
  return {*initiator_key, *responder_key, init_rec.sent(), resp_rec.sent()};
}

inline LoopbackResult kex_loopback(const GroupParams& params, SeededRng initiator_rng, SeededRng responder_rng,
                                   const KexOptions& opts = {}) {
  auto [a, b] = make_pipe_pair();
  return kex_pair(*a, *b, params, std::move(initiator_rng), std::move(responder_rng), opts);
}

}  // namespace tcsp
