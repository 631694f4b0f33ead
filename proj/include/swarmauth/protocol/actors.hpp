#pragma once

// Role state machines for the join, handover and NR-baseline flows.
//
// Actors react to decoded messages delivered by ScenarioNet. Cryptographic
// work happens immediately in the handler; its cost is charged to the
// actor's CPU on the SimNet so that later sends start after it finishes.
// Messages that arrive before an actor can use them are buffered.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swarmauth/groupauth/keywrap.hpp"
#include "swarmauth/protocol/message.hpp"
#include "swarmauth/protocol/trace.hpp"
#include "swarmauth/sim/simnet.hpp"

namespace swarmauth::protocol {

using groupauth::Credential;
using groupauth::GroupParams;
using groupauth::SymmetricKey;
using algebra::GroupElement;
using algebra::Scalar;

class ScenarioNet;

class Actor {
 public:
  explicit Actor(std::string id) : id_(std::move(id)) {}
  virtual ~Actor() = default;

  const std::string& id() const { return id_; }

  virtual void start(ScenarioNet&) {}
  virtual void on_message(const ProtocolMessage& msg, ScenarioNet& net) = 0;
  /// A frame from `from` failed to decode.
  virtual void on_malformed(const std::string& /*from*/, const std::string& /*error*/,
                            ScenarioNet& /*net*/) {}

 private:
  std::string id_;
};

/// Binds actors to a SimNet. Frames are encoded on send and decoded
/// separately by every recipient; broadcasts reach every other actor in
/// registration order.
class ScenarioNet {
 public:
  ScenarioNet(sim::SimNet& sim, GroupParams params);

  /// Non-owning; the actor must outlive the run. Throws on duplicate ids.
  void add(Actor& actor);
  /// Calls start() on every actor in registration order.
  void start();

  void send(const Actor& from, const std::string& to, MessageBody body,
            HopType hop = HopType::DroneDrone);
  /// Transmits a pre-encoded, possibly malformed, frame.
  void send_frame(const Actor& from, const std::string& to, Bytes frame,
                  HopType hop = HopType::DroneDrone);
  void compute(const Actor& who, ComputeKind kind);

  /// Every frame transmitted so far, in send order. This is what a passive
  /// eavesdropper sees.
  const std::vector<Bytes>& air_log() const { return air_log_; }

  const GroupParams& params() const { return params_; }
  sim::SimNet& sim() { return sim_; }
  Rng& rng() { return sim_.rng(); }

 private:
  void deliver(const std::string& from, const std::string& to, const Bytes& frame);

  sim::SimNet& sim_;
  GroupParams params_;
  std::vector<Actor*> actors_;
  std::vector<Bytes> air_log_;
};

/// The party being authenticated: a joining drone, a target BS or a new
/// UxNB. Impostors carry no credential.
struct Participant {
  std::string id;
  PublicPair announced;
  std::optional<Credential> credential;
  /// Replace the announced point with undecodable bytes.
  bool corrupt_encoding = false;

  bool impostor() const { return !credential.has_value(); }
};

Participant honest_participant(std::string id, const Credential& cred);

/// Sum check over exactly m pairs. The pair matching `mine` uses the
/// private share; every other contribution comes from the public pair.
/// Charges one scalar multiplication per contribution to `who`. Duplicate
/// or zero indices and a wrong count yield false.
bool run_sum_check(const std::optional<Credential>& mine, const std::vector<PublicPair>& pairs,
                   ScenarioNet& net, const Actor& who);

/// Replaces the trailing point bytes of an encoded pair-carrying message
/// with 0xff so that decoding fails.
Bytes corrupt_pair_frame(const ProtocolMessage& msg);

/// Common behaviour of the party receiving the wrapped group key: wait for
/// authorization, the peer's pair and the wrapped key in any order, then
/// derive and unwrap. An impostor instead tries every key derivable from
/// the air log.
class ParticipantActor : public Actor {
 public:
  explicit ParticipantActor(Participant p);

  const Participant& participant() const { return participant_; }
  Outcome outcome() const;

  bool rejected() const { return rejected_; }
  bool authorized() const { return authorized_; }
  bool finished() const { return finished_; }
  const std::optional<Scalar>& group_key() const { return group_key_; }
  /// Keys an impostor tried against the wrapped key.
  const std::vector<SymmetricKey>& attempted_keys() const { return attempted_keys_; }

 protected:
  void set_peer_pair(const PublicPair& p) { peer_pair_ = p; }
  void set_wrapped(const groupauth::WrappedGroupKey& w) { wrapped_ = w; }
  void authorize() { authorized_ = true; }
  void reject() { rejected_ = true; }
  void maybe_receive_key(ScenarioNet& net);
  /// Sends the announcement, corrupted if requested.
  void announce(ScenarioNet& net, const std::string& to, MessageBody body);

  Participant participant_;

 private:
  std::optional<PublicPair> peer_pair_;
  std::optional<groupauth::WrappedGroupKey> wrapped_;
  bool authorized_ = false;
  bool rejected_ = false;
  bool finished_ = false;
  std::optional<Scalar> group_key_;
  std::vector<SymmetricKey> attempted_keys_;
};

// ---- Join -----------------------------------------------------------------

class GuardActor : public Actor {
 public:
  /// `guards` lists the pairs of every participating guard, this one
  /// included. The leader runs key agreement with the newcomer.
  GuardActor(std::string id, Credential cred, std::vector<PublicPair> guards, bool leader,
             Scalar group_key);

  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
  void on_malformed(const std::string& from, const std::string& error, ScenarioNet& net) override;

  const std::optional<bool>& verdict() const { return verdict_; }
  /// Pairwise key the leader wrapped the group key under.
  const std::optional<SymmetricKey>& wrap_key() const { return wrap_key_; }

 private:
  void maybe_verify(ScenarioNet& net);

  Credential cred_;
  std::vector<PublicPair> guards_;
  bool leader_;
  Scalar group_key_;
  std::optional<std::string> newcomer_id_;
  std::optional<PublicPair> newcomer_pair_;
  std::map<std::string, PublicPair> announced_;  // keyed by decimal index
  std::optional<bool> verdict_;
  std::optional<SymmetricKey> wrap_key_;
};

class NewcomerActor : public ParticipantActor {
 public:
  NewcomerActor(Participant p, std::size_t guard_count);

  void start(ScenarioNet& net) override;
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;

  /// The newcomer's own sum check over the announced guard pairs.
  const std::optional<bool>& local_verdict() const { return local_verdict_; }

 private:
  std::size_t guard_count_;
  std::map<std::string, PublicPair> guard_pairs_;
  std::optional<bool> local_verdict_;
};

// ---- Terrestrial handover -------------------------------------------------

class TerrestrialDroneActor : public Actor {
 public:
  TerrestrialDroneActor(std::string id, Credential cred, std::string bs_id, bool designated,
                        Scalar group_key);

  void start(ScenarioNet& net) override;
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;

  const std::optional<bool>& verdict() const { return verdict_; }
  const std::optional<SymmetricKey>& wrap_key() const { return wrap_key_; }

 private:
  void maybe_deliver(ScenarioNet& net);

  Credential cred_;
  std::string bs_id_;
  bool designated_;
  Scalar group_key_;
  std::optional<bool> verdict_;
  std::optional<PublicPair> bs_pair_;
  std::optional<SymmetricKey> wrap_key_;
};

class TargetBsActor : public ParticipantActor {
 public:
  TargetBsActor(Participant p, std::size_t network_count);

  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;

  const std::optional<bool>& verdict() const { return verdict_; }

 private:
  std::size_t network_count_;
  std::map<std::string, PublicPair> drone_pairs_;  // keyed by sender id
  std::optional<bool> verdict_;
  std::optional<std::string> designated_;
};

// ---- Aerial handover ------------------------------------------------------

class AerialDroneActor : public Actor {
 public:
  /// `network` lists the pairs of all participating network drones, this
  /// one included.
  AerialDroneActor(std::string id, Credential cred, std::vector<PublicPair> network,
                   bool designated, Scalar group_key);

  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
  void on_malformed(const std::string& from, const std::string& error, ScenarioNet& net) override;

  const std::optional<bool>& verdict() const { return own_verdict_; }
  const std::optional<SymmetricKey>& wrap_key() const { return wrap_key_; }

 private:
  void cast_verdict(bool ok, ScenarioNet& net);
  void maybe_deliver(ScenarioNet& net);

  Credential cred_;
  std::vector<PublicPair> network_;
  bool designated_;
  Scalar group_key_;
  std::optional<std::string> bs_id_;
  std::optional<PublicPair> bs_pair_;
  std::optional<bool> own_verdict_;
  std::map<std::string, bool> verdicts_;  // by voter id, own vote included
  bool delivered_ = false;
  std::optional<SymmetricKey> wrap_key_;
};

class NewUxnbActor : public ParticipantActor {
 public:
  NewUxnbActor(Participant p, std::size_t network_count);

  void start(ScenarioNet& net) override;
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;

 private:
  std::size_t network_count_;
  std::map<std::string, bool> verdicts_;
};

// ---- NR baseline ----------------------------------------------------------

inline constexpr const char* kNrUav = "uav";
inline constexpr const char* kNrAmf = "amf";
inline constexpr const char* kNrUdm = "udm";
inline constexpr const char* kNrCs = "control-station";

/// Runs the 13-step registration: SUCI concealment, core authentication,
/// UAS ID exchange, control-station challenge and service accept.
class NrUavActor : public Actor {
 public:
  NrUavActor() : Actor(kNrUav) {}
  void start(ScenarioNet& net) override;
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
  bool accepted() const { return accepted_; }

 private:
  bool accepted_ = false;
};

class NrAmfActor : public Actor {
 public:
  NrAmfActor() : Actor(kNrAmf) {}
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
};

class NrUdmActor : public Actor {
 public:
  NrUdmActor() : Actor(kNrUdm) {}
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
};

class NrControlStationActor : public Actor {
 public:
  NrControlStationActor() : Actor(kNrCs) {}
  void on_message(const ProtocolMessage& msg, ScenarioNet& net) override;
};

/// Message and compute events of the NR baseline with their step number.
struct NrStep {
  int step;
  std::string msg_type;
};
const std::vector<NrStep>& nr_baseline_steps();

}  // namespace swarmauth::protocol
