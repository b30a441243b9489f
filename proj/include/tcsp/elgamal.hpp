#pragma once

// Hashed-ElGamal over conjugacy: the CS scheme (one public conjugate) and the
// twin CS scheme (two public conjugates, one ephemeral).
//
// Key holders draw secrets from LB_l, encryptors draw ephemerals from RB_r.
// Because the two subgroups commute, x (y g y^-1) x^-1 == y (x g x^-1) y^-1
// and both sides derive the same key.

#include <array>
#include <span>

#include "tcsp/braid.hpp"
#include "tcsp/codec.hpp"
#include "tcsp/params.hpp"
#include "tcsp/rng.hpp"
#include "tcsp/sampler.hpp"

namespace tcsp {

// ccs(X, Y) computed by the holder of one secret conjugator:
// secret * peer_public * secret^-1.
inline CanonicalForm ccs_shared(const BraidWord& secret, const CanonicalForm& peer_public) {
  return conjugate(peer_public, secret);
}

struct CsPublicKey {
  GroupParams params;
  CanonicalForm element;  // x g x^-1
};

struct CsKeyPair {
  GroupParams params;
  BraidWord secret;  // x in LB_l
  CanonicalForm element;

  CsPublicKey public_key() const { return {params, element}; }
};

struct TwinPublicKey {
  GroupParams params;
  std::array<CanonicalForm, 2> elements;  // x_i g x_i^-1
};

struct TwinKeyPair {
  GroupParams params;
  std::array<BraidWord, 2> secrets;  // x_1, x_2 in LB_l
  std::array<CanonicalForm, 2> elements;

  TwinPublicKey public_key() const { return {params, elements}; }
};

// Short ciphertext: one group element plus the sealed payload, for both
// schemes.
struct Ciphertext {
  CanonicalForm header;  // y g y^-1
  SealedBox box;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

inline CanonicalForm public_conjugate(const GroupParams& params, const BraidWord& secret) {
  return normal_form(conjugate(params.base(), secret));
}

inline CsKeyPair cs_keygen(const GroupParams& params, SeededRng& rng) {
  BraidWord x = sample_subgroup(params, SubgroupSide::Left, rng);
  CanonicalForm element = public_conjugate(params, x);
  return {params, std::move(x), std::move(element)};
}

inline TwinKeyPair twin_keygen(const GroupParams& params, SeededRng& rng) {
  BraidWord x1 = sample_subgroup(params, SubgroupSide::Left, rng);
  BraidWord x2 = sample_subgroup(params, SubgroupSide::Left, rng);
  CanonicalForm e1 = public_conjugate(params, x1);
  CanonicalForm e2 = public_conjugate(params, x2);
  return {params, {std::move(x1), std::move(x2)}, {std::move(e1), std::move(e2)}};
}

inline Ciphertext cs_encrypt(const CsPublicKey& pk, std::span<const std::uint8_t> m, SeededRng& rng) {
  require_same_strands(pk.params.strands(), pk.element.n);
  const BraidWord y = sample_subgroup(pk.params, SubgroupSide::Right, rng);
  CanonicalForm header = public_conjugate(pk.params, y);
  const CanonicalForm shared = ccs_shared(y, pk.element);
  const SymKey k = hash_elements(label::cs, {header, shared});
  return {std::move(header), sym_encrypt(k, m)};
}

// Throws AuthenticationError on a forged or mis-keyed ciphertext.
inline Bytes cs_decrypt(const CsKeyPair& kp, const Ciphertext& ct) {
  require_same_strands(kp.params.strands(), ct.header.n);
  const CanonicalForm shared = ccs_shared(kp.secret, ct.header);
  return sym_decrypt(hash_elements(label::cs, {ct.header, shared}), ct.box);
}

// One ephemeral y serves both public elements; k = H("twin", Y, Z_1, Z_2).
inline Ciphertext twin_encrypt(const TwinPublicKey& pk, std::span<const std::uint8_t> m, SeededRng& rng) {
  for (const CanonicalForm& e : pk.elements) require_same_strands(pk.params.strands(), e.n);
  const BraidWord y = sample_subgroup(pk.params, SubgroupSide::Right, rng);
  CanonicalForm header = public_conjugate(pk.params, y);
  const CanonicalForm z1 = ccs_shared(y, pk.elements[0]);
  const CanonicalForm z2 = ccs_shared(y, pk.elements[1]);
  const SymKey k = hash_elements(label::twin, {header, z1, z2});
  return {std::move(header), sym_encrypt(k, m)};
}

inline Bytes twin_decrypt(const TwinKeyPair& kp, const Ciphertext& ct) {
  require_same_strands(kp.params.strands(), ct.header.n);
  const CanonicalForm z1 = ccs_shared(kp.secrets[0], ct.header);
  const CanonicalForm z2 = ccs_shared(kp.secrets[1], ct.header);
  return sym_decrypt(hash_elements(label::twin, {ct.header, z1, z2}), ct.box);
}

}  // namespace tcsp
