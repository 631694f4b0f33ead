#include "swarmauth/protocol/adversary.hpp"

#include <algorithm>
#include <set>

#include "swarmauth/error.hpp"

namespace swarmauth::protocol {

namespace {

void collect(const MessageBody& body, std::vector<GroupElement>& out) {
  std::visit(
      [&out](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, JoinRequest> || std::is_same_v<T, PublicPairAnnounce> ||
                      std::is_same_v<T, KeyAgreementInit> || std::is_same_v<T, BsPublicPair>) {
          out.push_back(b.pair.public_point);
        } else if constexpr (std::is_same_v<T, HandoverPublicPairs>) {
          for (const auto& p : b.pairs) out.push_back(p.public_point);
        }
      },
      body);
}

}  // namespace

std::vector<GroupElement> observed_points(const std::vector<Bytes>& air_log,
                                          const GroupParams& params) {
  std::vector<GroupElement> out;
  for (const Bytes& frame : air_log) {
    try {
      collect(decode_message(frame, params.group).body, out);
    } catch (const DecodeError&) {
    }
  }
  return out;
}

std::vector<SymmetricKey> candidate_keys(const std::vector<GroupElement>& observed,
                                         const GroupParams& params) {
  std::vector<GroupElement> base;
  std::set<Bytes> seen;
  auto add = [&](const GroupElement& e, std::vector<GroupElement>& into) {
    if (e.is_identity()) return;
    if (seen.insert(algebra::serialize(e)).second) into.push_back(e);
  };
  for (const auto& e : observed) add(e, base);
  add(params.verification_point, base);
  add(params.generator(), base);

  std::vector<GroupElement> all = base;
  for (const auto& e : base) add(-e, all);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      add(base[i] + base[j], all);
      add(base[i] - base[j], all);
      add(base[j] - base[i], all);
    }
  }
  std::vector<SymmetricKey> keys;
  keys.reserve(all.size());
  for (const auto& e : all) keys.push_back(groupauth::kdf_from_point(e));
  return keys;
}

KeySearchResult search_observed_keys(const std::vector<Bytes>& air_log,
                                     const groupauth::WrappedGroupKey& wrapped,
                                     const GroupParams& params) {
  KeySearchResult r;
  r.tried = candidate_keys(observed_points(air_log, params), params);
  for (const auto& k : r.tried) {
    if (auto s = groupauth::try_unwrap_group_key(k, wrapped, params.group.order())) {
      r.recovered = *s;
      break;
    }
  }
  return r;
}

std::size_t exhaustive_share_search(const PublicPair& peer,
                                    const groupauth::WrappedGroupKey& wrapped,
                                    const GroupParams& params) {
  const auto& g = params.group;
  if (g.kind() != algebra::GroupKind::Toy) {
    throw InvalidArgument("exhaustive share search needs a toy group");
  }
  if (!g.order().fits_ulong_p() || g.order() > 1'000'000) {
    throw InvalidArgument("toy group too large for exhaustive search");
  }
  const unsigned long q = g.order().get_ui();
  std::size_t hits = 0;
  for (unsigned long s = 0; s < q; ++s) {
    const GroupElement shared = g.scalar(mpz_class(s)) * peer.public_point;
    if (shared.is_identity()) continue;
    hits += groupauth::try_unwrap_group_key(groupauth::kdf_from_point(shared), wrapped, g.order())
                .has_value();
  }
  return hits;
}

std::optional<PublicPair> capture_pair(const std::vector<Bytes>& air_log, const std::string& sender,
                                       MessageType type, const GroupParams& params) {
  for (const Bytes& frame : air_log) {
    if (frame.empty() || frame[0] != static_cast<std::uint8_t>(type)) continue;
    try {
      ProtocolMessage m = decode_message(frame, params.group);
      if (m.sender != sender) continue;
      std::optional<PublicPair> found;
      std::visit(
          [&found](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, JoinRequest> || std::is_same_v<T, PublicPairAnnounce> ||
                          std::is_same_v<T, KeyAgreementInit> || std::is_same_v<T, BsPublicPair>) {
              found = b.pair;
            } else if constexpr (std::is_same_v<T, HandoverPublicPairs>) {
              if (!b.pairs.empty()) found = b.pairs.front();
            }
          },
          m.body);
      if (found) return found;
    } catch (const DecodeError&) {
    }
  }
  return std::nullopt;
}

Participant replay_adversary(const PublicPair& captured, std::string id) {
  return Participant{std::move(id), captured, std::nullopt, false};
}

Participant fake_bs_adversary(const PublicPair& captured, std::string id) {
  return Participant{std::move(id), captured, std::nullopt, false};
}

Participant forged_participant(std::string id, const GroupParams& params, Rng& rng) {
  const auto& g = params.group;
  Scalar x = g.random_scalar(rng);
  while (x.is_zero()) x = g.random_scalar(rng);
  Scalar k = g.random_scalar(rng);
  while (k.is_zero()) k = g.random_scalar(rng);
  return Participant{std::move(id), PublicPair{x, k * params.generator()}, std::nullopt, false};
}

}  // namespace swarmauth::protocol
