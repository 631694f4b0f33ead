#pragma once

// Threshold group authentication over a prime-order group.
//
// A trusted dealer picks p(x) of degree m-1 and gives member i the share
// p(x_i). Any m members authenticate as a group by publishing
//
//   c_i = l_i · p(x_i) · P,   l_i = prod_{r != i} (-x_r) / (x_i - x_r),
//
// and checking sum c_i == Q = a_0·P. Because l_i is public, a verifier can
// compute c_i from the public pair alone (contribution_from_public). The
// same weights recover a_0 from m private shares.
//
// Note: the sum check only involves public pairs, so a party replaying
// someone else's captured pair passes it. Confidentiality rests on the key
// agreement that follows: only the holder of p(x_i) can derive the key that
// unwraps the group key.

#include <array>
#include <optional>
#include <span>

#include "swarmauth/groupauth/credential.hpp"
#include "swarmauth/rng.hpp"

namespace swarmauth::groupauth {

/// a_0 = group_key when supplied, otherwise uniform; a_1..a_{m-1} uniform.
/// Throws InvalidArgument for m = 0.
Polynomial gen_polynomial(const Group& group, std::size_t m,
                          const std::optional<Scalar>& group_key, Rng& rng);

GroupParams make_group_params(const Group& group, const Polynomial& poly);

/// Throws InvalidArgument for x = 0.
Credential issue_credential(const Polynomial& poly, const Scalar& x,
                            const GroupParams& params);

/// Batch issuance; throws InvalidArgument on x = 0 or a repeated index.
std::vector<Credential> issue_credentials(const Polynomial& poly,
                                          std::span<const Scalar> indices,
                                          const GroupParams& params);

/// Lagrange weight at zero for indices[position]. Throws InvalidArgument on
/// an empty list, a zero index, a repeated index or a bad position.
Scalar lagrange_coeff_at_zero(std::span<const Scalar> indices, std::size_t position);

/// c_i computed by the member itself from its private share.
GroupElement compute_contribution(const Credential& cred,
                                  std::span<const Scalar> indices,
                                  const GroupParams& params);

/// c_i computed by anyone from the member's public pair. Equal to
/// compute_contribution for an honest pair.
GroupElement contribution_from_public(const PublicPair& pair,
                                      std::span<const Scalar> indices,
                                      const GroupParams& params);

/// True iff the contributions sum to Q. Exactly m contributions are
/// required; any other count throws InvalidArgument.
bool verify_group(std::span<const GroupElement> contributions, const GroupParams& params);

/// Lagrange interpolation at zero over all given shares. Requires at least
/// `threshold` shares with distinct nonzero indices.
Scalar recover_group_key(std::span<const Share> shares, std::size_t threshold);

using SymmetricKey = std::array<std::uint8_t, 32>;

/// SHA-256 over a fixed domain label and serialize(point).
SymmetricKey kdf_from_point(const GroupElement& point);

/// key = KDF(private_share · their.public_point). Symmetric between the two
/// parties. Throws InvalidArgument when their point is the identity or
/// the shared point degenerates to the identity.
SymmetricKey derive_pairwise_key(const Credential& mine, const PublicPair& theirs,
                                 const GroupParams& params);

/// Checks index membership and uniqueness for an authentication round.
/// Returns the position of `index` in `indices`.
std::size_t position_of(std::span<const Scalar> indices, const Scalar& index);

}  // namespace swarmauth::groupauth
