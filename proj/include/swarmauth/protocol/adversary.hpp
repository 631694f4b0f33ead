#pragma once

// Executable adversaries: replaying a captured public pair into a join or
// presenting one as a fake base station. They hold no private share, so the
// best they can do is try every key derivable from what was on the air.

#include <optional>
#include <string>
#include <vector>

#include "swarmauth/protocol/actors.hpp"

namespace swarmauth::protocol {

struct KeySearchResult {
  std::vector<SymmetricKey> tried;
  std::optional<Scalar> recovered;
};

/// Every group element carried by a decodable frame in `air_log`.
std::vector<GroupElement> observed_points(const std::vector<Bytes>& air_log,
                                          const GroupParams& params);

/// KDF of: each observed point and its negation, every sum and difference
/// of two observed points, Q and P. Duplicates removed, order fixed.
std::vector<SymmetricKey> candidate_keys(const std::vector<GroupElement>& observed,
                                         const GroupParams& params);

KeySearchResult search_observed_keys(const std::vector<Bytes>& air_log,
                                     const groupauth::WrappedGroupKey& wrapped,
                                     const GroupParams& params);

/// Toy groups only: tries every s in Z_q as the private share behind the
/// captured pair, i.e. KDF(s · peer.public_point). Returns how many
/// candidates unwrap `wrapped`.
std::size_t exhaustive_share_search(const PublicPair& peer,
                                    const groupauth::WrappedGroupKey& wrapped,
                                    const GroupParams& params);

/// Pair sent by `sender` in the first frame of type `type`.
std::optional<PublicPair> capture_pair(const std::vector<Bytes>& air_log, const std::string& sender,
                                       MessageType type, const GroupParams& params);

Participant replay_adversary(const PublicPair& captured, std::string id = "impostor");
Participant fake_bs_adversary(const PublicPair& captured, std::string id = "fake-bs");

/// Fresh random index and point with no share behind it.
Participant forged_participant(std::string id, const GroupParams& params, Rng& rng);

}  // namespace swarmauth::protocol
