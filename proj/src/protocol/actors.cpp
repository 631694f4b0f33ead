#include "swarmauth/protocol/actors.hpp"

#include <algorithm>

#include "swarmauth/error.hpp"
#include "swarmauth/groupauth/scheme.hpp"
#include "swarmauth/protocol/adversary.hpp"

namespace swarmauth::protocol {

namespace {

std::string index_key(const PublicPair& p) { return p.index.to_decimal(); }

bool contains_pair(const std::vector<PublicPair>& pairs, const PublicPair& p) {
  return std::find(pairs.begin(), pairs.end(), p) != pairs.end();
}

}  // namespace

// ---- ScenarioNet ----------------------------------------------------------

ScenarioNet::ScenarioNet(sim::SimNet& sim, GroupParams params)
    : sim_(sim), params_(std::move(params)) {}

void ScenarioNet::add(Actor& actor) {
  for (const Actor* a : actors_) {
    if (a->id() == actor.id()) throw InvalidArgument("duplicate actor id " + actor.id());
  }
  if (actor.id() == kBroadcast) throw InvalidArgument("actor id is reserved");
  actors_.push_back(&actor);
}

void ScenarioNet::start() {
  for (Actor* a : actors_) a->start(*this);
}

void ScenarioNet::send(const Actor& from, const std::string& to, MessageBody body, HopType hop) {
  ProtocolMessage msg{from.id(), to, std::move(body)};
  send_frame(from, to, msg.encode(), hop);
}

void ScenarioNet::send_frame(const Actor& from, const std::string& to, Bytes frame, HopType hop) {
  if (frame.empty()) throw InvalidArgument("empty frame");
  const std::string type(message_type_name(static_cast<MessageType>(frame[0])));
  air_log_.push_back(frame);
  auto shared = std::make_shared<const Bytes>(std::move(frame));
  const std::string sender = from.id();
  sim_.transmit(sender, to, type, shared->size(), hop,
                [this, sender, to, shared] { deliver(sender, to, *shared); });
}

void ScenarioNet::compute(const Actor& who, ComputeKind kind) { sim_.compute(who.id(), kind); }

void ScenarioNet::deliver(const std::string& from, const std::string& to, const Bytes& frame) {
  for (Actor* a : actors_) {
    if (a->id() == from) continue;
    if (to != kBroadcast && a->id() != to) continue;
    std::optional<ProtocolMessage> msg;
    try {
      msg = decode_message(frame, params_.group);
    } catch (const DecodeError& e) {
      a->on_malformed(from, e.what(), *this);
      continue;
    }
    a->on_message(*msg, *this);
  }
}

// ---- helpers --------------------------------------------------------------

Participant honest_participant(std::string id, const Credential& cred) {
  return Participant{std::move(id), cred.public_pair(), cred, false};
}

bool run_sum_check(const std::optional<Credential>& mine, const std::vector<PublicPair>& pairs,
                   ScenarioNet& net, const Actor& who) {
  const GroupParams& params = net.params();
  for (std::size_t i = 0; i < pairs.size(); ++i) net.compute(who, ComputeKind::ScalarMult);
  if (pairs.size() != params.threshold) return false;

  std::vector<Scalar> indices;
  for (const auto& p : pairs) {
    if (p.index.is_zero()) return false;
    for (const auto& seen : indices)
      if (seen == p.index) return false;
    indices.push_back(p.index);
  }
  std::vector<GroupElement> contributions;
  for (const auto& p : pairs) {
    if (mine && mine->public_pair() == p) {
      contributions.push_back(groupauth::compute_contribution(*mine, indices, params));
    } else {
      contributions.push_back(groupauth::contribution_from_public(p, indices, params));
    }
  }
  return groupauth::verify_group(contributions, params);
}

Bytes corrupt_pair_frame(const ProtocolMessage& msg) {
  Bytes frame = msg.encode();
  const std::size_t point_len = [&] {
    switch (msg.type()) {
      case MessageType::JoinRequest:
      case MessageType::PublicPairAnnounce:
      case MessageType::KeyAgreementInit:
      case MessageType::BsPublicPair: break;
      default: throw InvalidArgument("message carries no single public pair");
    }
    const PublicPair& p = std::visit(
        [](const auto& b) -> const PublicPair& {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, JoinRequest> || std::is_same_v<T, PublicPairAnnounce> ||
                        std::is_same_v<T, KeyAgreementInit> || std::is_same_v<T, BsPublicPair>) {
            return b.pair;
          } else {
            throw InvalidArgument("message carries no single public pair");
          }
        },
        msg.body);
    return algebra::serialize(p.public_point).size();
  }();
  std::fill(frame.end() - static_cast<std::ptrdiff_t>(point_len), frame.end(), 0xff);
  return frame;
}

// ---- ParticipantActor -----------------------------------------------------

ParticipantActor::ParticipantActor(Participant p) : Actor(p.id), participant_(std::move(p)) {}

Outcome ParticipantActor::outcome() const {
  if (rejected_) return participant_.corrupt_encoding ? Outcome::Malformed : Outcome::Rejected;
  if (!finished_) return Outcome::Pending;
  if (!group_key_) return Outcome::Excluded;
  return participant_.impostor() ? Outcome::Compromised : Outcome::Accepted;
}

void ParticipantActor::announce(ScenarioNet& net, const std::string& to, MessageBody body) {
  if (participant_.corrupt_encoding) {
    net.send_frame(*this, to, corrupt_pair_frame(ProtocolMessage{id(), to, std::move(body)}));
  } else {
    net.send(*this, to, std::move(body));
  }
}

void ParticipantActor::maybe_receive_key(ScenarioNet& net) {
  if (finished_ || rejected_ || !authorized_ || !peer_pair_ || !wrapped_) return;
  finished_ = true;
  const GroupParams& params = net.params();
  std::optional<Scalar> key;
  if (participant_.credential) {
    net.compute(*this, ComputeKind::ScalarMult);
    try {
      const SymmetricKey k = groupauth::derive_pairwise_key(*participant_.credential, *peer_pair_, params);
      key = groupauth::try_unwrap_group_key(k, *wrapped_, params.group.order());
    } catch (const InvalidArgument&) {
    }
  } else {
    KeySearchResult r = search_observed_keys(net.air_log(), *wrapped_, params);
    attempted_keys_ = std::move(r.tried);
    key = r.recovered;
  }
  if (key && *key * params.generator() != params.verification_point) key.reset();
  net.compute(*this, key ? ComputeKind::Unwrap : ComputeKind::UnwrapFailed);
  group_key_ = key;
}

// ---- GuardActor -----------------------------------------------------------

GuardActor::GuardActor(std::string id, Credential cred, std::vector<PublicPair> guards, bool leader,
                       Scalar group_key)
    : Actor(std::move(id)),
      cred_(std::move(cred)),
      guards_(std::move(guards)),
      leader_(leader),
      group_key_(std::move(group_key)) {
  if (!contains_pair(guards_, cred_.public_pair())) {
    throw InvalidArgument("guard list must include the guard itself");
  }
}

void GuardActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (const auto* jr = std::get_if<JoinRequest>(&msg.body)) {
    if (newcomer_id_) return;
    newcomer_id_ = msg.sender;
    newcomer_pair_ = jr->pair;
    net.send(*this, std::string(kBroadcast), PublicPairAnnounce{cred_.public_pair()});
    maybe_verify(net);
  } else if (const auto* pa = std::get_if<PublicPairAnnounce>(&msg.body)) {
    if (pa->pair != cred_.public_pair() && contains_pair(guards_, pa->pair)) {
      announced_.emplace(index_key(pa->pair), pa->pair);
      maybe_verify(net);
    }
  }
}

void GuardActor::on_malformed(const std::string& from, const std::string&, ScenarioNet& net) {
  if (newcomer_id_ || verdict_) return;
  verdict_ = false;
  if (leader_) net.send(*this, from, Reject{"malformed public pair"});
}

void GuardActor::maybe_verify(ScenarioNet& net) {
  if (verdict_ || !newcomer_pair_ || announced_.size() + 1 < guards_.size()) return;
  std::vector<PublicPair> pairs = guards_;
  pairs.push_back(*newcomer_pair_);
  verdict_ = run_sum_check(cred_, pairs, net, *this);
  if (!leader_) return;
  if (!*verdict_) {
    net.send(*this, *newcomer_id_, Reject{"group authentication failed"});
    return;
  }
  net.send(*this, *newcomer_id_, AuthVerdict{true});
  net.compute(*this, ComputeKind::ScalarMult);
  wrap_key_ = groupauth::derive_pairwise_key(cred_, *newcomer_pair_, net.params());
  auto wrapped = groupauth::wrap_group_key(*wrap_key_, group_key_, net.rng());
  net.compute(*this, ComputeKind::Wrap);
  net.send(*this, *newcomer_id_, KeyAgreementInit{cred_.public_pair()});
  net.send(*this, *newcomer_id_, WrappedKeyDelivery{std::move(wrapped)});
}

// ---- NewcomerActor --------------------------------------------------------

NewcomerActor::NewcomerActor(Participant p, std::size_t guard_count)
    : ParticipantActor(std::move(p)), guard_count_(guard_count) {}

void NewcomerActor::start(ScenarioNet& net) {
  announce(net, std::string(kBroadcast), JoinRequest{participant_.announced});
}

void NewcomerActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (const auto* pa = std::get_if<PublicPairAnnounce>(&msg.body)) {
    if (local_verdict_ || guard_pairs_.size() >= guard_count_) return;
    guard_pairs_.emplace(index_key(pa->pair), pa->pair);
    if (guard_pairs_.size() == guard_count_) {
      std::vector<PublicPair> pairs;
      for (const auto& [k, p] : guard_pairs_) pairs.push_back(p);
      pairs.push_back(participant_.announced);
      local_verdict_ = run_sum_check(participant_.credential, pairs, net, *this);
    }
  } else if (const auto* v = std::get_if<AuthVerdict>(&msg.body)) {
    if (v->accepted) authorize(); else reject();
  } else if (std::holds_alternative<Reject>(msg.body)) {
    reject();
  } else if (const auto* kai = std::get_if<KeyAgreementInit>(&msg.body)) {
    set_peer_pair(kai->pair);
  } else if (const auto* wkd = std::get_if<WrappedKeyDelivery>(&msg.body)) {
    set_wrapped(wkd->wrapped);
  }
  maybe_receive_key(net);
}

// ---- Terrestrial ----------------------------------------------------------

TerrestrialDroneActor::TerrestrialDroneActor(std::string id, Credential cred, std::string bs_id,
                                             bool designated, Scalar group_key)
    : Actor(std::move(id)),
      cred_(std::move(cred)),
      bs_id_(std::move(bs_id)),
      designated_(designated),
      group_key_(std::move(group_key)) {}

void TerrestrialDroneActor::start(ScenarioNet& net) {
  net.send(*this, bs_id_, HandoverPublicPairs{{cred_.public_pair()}});
}

void TerrestrialDroneActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (msg.sender != bs_id_) return;
  if (const auto* v = std::get_if<AuthVerdict>(&msg.body)) {
    if (!verdict_) verdict_ = v->accepted;
  } else if (std::holds_alternative<Reject>(msg.body)) {
    if (!verdict_) verdict_ = false;
  } else if (const auto* kai = std::get_if<KeyAgreementInit>(&msg.body)) {
    if (!bs_pair_) bs_pair_ = kai->pair;
  }
  maybe_deliver(net);
}

void TerrestrialDroneActor::maybe_deliver(ScenarioNet& net) {
  if (!designated_ || wrap_key_ || verdict_ != true || !bs_pair_) return;
  net.compute(*this, ComputeKind::ScalarMult);
  try {
    wrap_key_ = groupauth::derive_pairwise_key(cred_, *bs_pair_, net.params());
  } catch (const InvalidArgument&) {
    return;
  }
  auto wrapped = groupauth::wrap_group_key(*wrap_key_, group_key_, net.rng());
  net.compute(*this, ComputeKind::Wrap);
  net.send(*this, bs_id_, WrappedKeyDelivery{std::move(wrapped)});
}

TargetBsActor::TargetBsActor(Participant p, std::size_t network_count)
    : ParticipantActor(std::move(p)), network_count_(network_count) {}

void TargetBsActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (const auto* h = std::get_if<HandoverPublicPairs>(&msg.body)) {
    if (verdict_ || h->pairs.size() != 1) return;
    drone_pairs_.emplace(msg.sender, h->pairs.front());
    if (drone_pairs_.size() < network_count_) return;

    std::vector<PublicPair> pairs;
    const std::pair<const std::string, PublicPair>* lowest = nullptr;
    for (const auto& entry : drone_pairs_) {
      pairs.push_back(entry.second);
      if (!lowest || entry.second.index.value() < lowest->second.index.value()) lowest = &entry;
    }
    pairs.push_back(participant_.announced);
    verdict_ = run_sum_check(participant_.credential, pairs, net, *this);
    if (!*verdict_) {
      net.send(*this, std::string(kBroadcast), Reject{"group authentication failed"});
      reject();
      return;
    }
    net.send(*this, std::string(kBroadcast), AuthVerdict{true});
    authorize();
    designated_ = lowest->first;
    set_peer_pair(lowest->second);
    net.send(*this, *designated_, KeyAgreementInit{participant_.announced});
  } else if (const auto* wkd = std::get_if<WrappedKeyDelivery>(&msg.body)) {
    if (designated_ && msg.sender == *designated_) set_wrapped(wkd->wrapped);
  }
  maybe_receive_key(net);
}

// ---- Aerial ---------------------------------------------------------------

AerialDroneActor::AerialDroneActor(std::string id, Credential cred, std::vector<PublicPair> network,
                                   bool designated, Scalar group_key)
    : Actor(std::move(id)),
      cred_(std::move(cred)),
      network_(std::move(network)),
      designated_(designated),
      group_key_(std::move(group_key)) {
  if (!contains_pair(network_, cred_.public_pair())) {
    throw InvalidArgument("network list must include the drone itself");
  }
}

void AerialDroneActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (const auto* b = std::get_if<BsPublicPair>(&msg.body)) {
    if (bs_id_) return;
    bs_id_ = msg.sender;
    bs_pair_ = b->pair;
    std::vector<PublicPair> pairs = network_;
    pairs.push_back(b->pair);
    cast_verdict(run_sum_check(cred_, pairs, net, *this), net);
  } else if (const auto* v = std::get_if<AuthVerdict>(&msg.body)) {
    verdicts_.emplace(msg.sender, v->accepted);
  }
  maybe_deliver(net);
}

void AerialDroneActor::on_malformed(const std::string& from, const std::string&, ScenarioNet& net) {
  if (bs_id_) return;
  bs_id_ = from;
  cast_verdict(false, net);
}

void AerialDroneActor::cast_verdict(bool ok, ScenarioNet& net) {
  own_verdict_ = ok;
  verdicts_[id()] = ok;
  net.send(*this, std::string(kBroadcast), AuthVerdict{ok});
}

void AerialDroneActor::maybe_deliver(ScenarioNet& net) {
  if (!designated_ || delivered_ || !bs_pair_ || verdicts_.size() < network_.size()) return;
  for (const auto& [voter, ok] : verdicts_)
    if (!ok) return;
  delivered_ = true;
  net.compute(*this, ComputeKind::ScalarMult);
  try {
    wrap_key_ = groupauth::derive_pairwise_key(cred_, *bs_pair_, net.params());
  } catch (const InvalidArgument&) {
    return;
  }
  auto wrapped = groupauth::wrap_group_key(*wrap_key_, group_key_, net.rng());
  net.compute(*this, ComputeKind::Wrap);
  net.send(*this, *bs_id_, KeyAgreementInit{cred_.public_pair()});
  net.send(*this, *bs_id_, WrappedKeyDelivery{std::move(wrapped)});
}

NewUxnbActor::NewUxnbActor(Participant p, std::size_t network_count)
    : ParticipantActor(std::move(p)), network_count_(network_count) {}

void NewUxnbActor::start(ScenarioNet& net) {
  announce(net, std::string(kBroadcast), BsPublicPair{participant_.announced});
}

void NewUxnbActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  if (const auto* v = std::get_if<AuthVerdict>(&msg.body)) {
    verdicts_.emplace(msg.sender, v->accepted);
    if (!v->accepted) reject();
    if (verdicts_.size() >= network_count_ &&
        std::all_of(verdicts_.begin(), verdicts_.end(), [](const auto& e) { return e.second; })) {
      authorize();
    }
  } else if (const auto* kai = std::get_if<KeyAgreementInit>(&msg.body)) {
    set_peer_pair(kai->pair);
  } else if (const auto* wkd = std::get_if<WrappedKeyDelivery>(&msg.body)) {
    set_wrapped(wkd->wrapped);
  }
  maybe_receive_key(net);
}

// ---- NR baseline ----------------------------------------------------------

namespace {

void nr_send(Actor& from, ScenarioNet& net, const char* to, MessageType type, std::size_t payload,
             HopType hop) {
  net.send(from, to, NrMessage{type, net.rng().bytes(payload)}, hop);
}

const MessageType* nr_type(const ProtocolMessage& msg) {
  const auto* nr = std::get_if<NrMessage>(&msg.body);
  return nr ? &nr->type : nullptr;
}

}  // namespace

void NrUavActor::start(ScenarioNet& net) {
  net.compute(*this, ComputeKind::AsymEncrypt);
  nr_send(*this, net, kNrAmf, MessageType::SuciRegistration, 32, HopType::UeCore);
}

void NrUavActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  const MessageType* t = nr_type(msg);
  if (!t) return;
  switch (*t) {
    case MessageType::RandChallenge:
      net.compute(*this, ComputeKind::Hash);
      nr_send(*this, net, kNrAmf, MessageType::ChallengeResponse, 32, HopType::UeCore);
      break;
    case MessageType::UasIdRequest:
      nr_send(*this, net, kNrAmf, MessageType::UasIdResponse, 16, HopType::UeCore);
      break;
    case MessageType::CsChallenge:
      nr_send(*this, net, kNrCs, MessageType::CsResponse, 16, HopType::UeCore);
      break;
    case MessageType::ServiceAccept: accepted_ = true; break;
    default: break;
  }
}

void NrAmfActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  const MessageType* t = nr_type(msg);
  if (!t) return;
  switch (*t) {
    case MessageType::SuciRegistration:
      nr_send(*this, net, kNrUdm, MessageType::SuciForward, 32, HopType::CoreInternal);
      break;
    case MessageType::AuthVector:
      nr_send(*this, net, kNrUav, MessageType::RandChallenge, 16, HopType::UeCore);
      break;
    case MessageType::ChallengeResponse:
      nr_send(*this, net, kNrUav, MessageType::UasIdRequest, 8, HopType::UeCore);
      break;
    case MessageType::UasIdResponse:
      nr_send(*this, net, kNrCs, MessageType::UasIdForward, 16, HopType::CoreInternal);
      break;
    case MessageType::CsConfirm:
      nr_send(*this, net, kNrUav, MessageType::ServiceAccept, 8, HopType::UeCore);
      break;
    default: break;
  }
}

void NrUdmActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  const MessageType* t = nr_type(msg);
  if (!t || *t != MessageType::SuciForward) return;
  net.compute(*this, ComputeKind::CoreDecrypt);
  net.compute(*this, ComputeKind::Hash);
  nr_send(*this, net, kNrAmf, MessageType::AuthVector, 48, HopType::CoreInternal);
}

void NrControlStationActor::on_message(const ProtocolMessage& msg, ScenarioNet& net) {
  const MessageType* t = nr_type(msg);
  if (!t) return;
  if (*t == MessageType::UasIdForward) {
    nr_send(*this, net, kNrUav, MessageType::CsChallenge, 16, HopType::UeCore);
  } else if (*t == MessageType::CsResponse) {
    nr_send(*this, net, kNrAmf, MessageType::CsConfirm, 8, HopType::CoreInternal);
  }
}

const std::vector<NrStep>& nr_baseline_steps() {
  static const std::vector<NrStep> steps{
      {1, "AsymEncrypt"},      {2, "SuciRegistration"}, {3, "SuciForward"},
      {4, "CoreDecrypt"},      {5, "Hash"},             {6, "AuthVector"},
      {7, "RandChallenge"},    {8, "Hash"},             {8, "ChallengeResponse"},
      {9, "UasIdRequest"},     {10, "UasIdResponse"},   {11, "UasIdForward"},
      {12, "CsChallenge"},     {12, "CsResponse"},      {13, "CsConfirm"},
      {13, "ServiceAccept"},
  };
  return steps;
}

}  // namespace swarmauth::protocol
