#pragma once

// Wire messages for the join, handover and NR-baseline flows.
//
// Frame: [tag u8][payload length u32 LE][payload]
// Payload: sender, receiver (u16-length strings), then the body.
// Frame sizes feed the latency trace; no real sockets are involved.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarmauth/bytes.hpp"
#include "swarmauth/groupauth/keywrap.hpp"

namespace swarmauth::protocol {

using groupauth::PublicPair;
using groupauth::WrappedGroupKey;

enum class MessageType : std::uint8_t {
  JoinRequest = 0x01,
  PublicPairAnnounce = 0x02,
  AuthVerdict = 0x03,
  KeyAgreementInit = 0x04,
  WrappedKeyDelivery = 0x05,
  HandoverPublicPairs = 0x06,
  BsPublicPair = 0x07,
  Reject = 0x08,

  SuciRegistration = 0x20,
  SuciForward = 0x21,
  AuthVector = 0x22,
  RandChallenge = 0x23,
  ChallengeResponse = 0x24,
  UasIdRequest = 0x25,
  UasIdResponse = 0x26,
  UasIdForward = 0x27,
  CsChallenge = 0x28,
  CsResponse = 0x29,
  CsConfirm = 0x2a,
  ServiceAccept = 0x2b,
};

std::string_view message_type_name(MessageType t);

struct JoinRequest {
  PublicPair pair;
  bool operator==(const JoinRequest&) const = default;
};
struct PublicPairAnnounce {
  PublicPair pair;
  bool operator==(const PublicPairAnnounce&) const = default;
};
struct AuthVerdict {
  bool accepted = false;
  bool operator==(const AuthVerdict&) const = default;
};
struct KeyAgreementInit {
  PublicPair pair;
  bool operator==(const KeyAgreementInit&) const = default;
};
struct WrappedKeyDelivery {
  WrappedGroupKey wrapped;
  bool operator==(const WrappedKeyDelivery&) const = default;
};
struct HandoverPublicPairs {
  std::vector<PublicPair> pairs;
  bool operator==(const HandoverPublicPairs&) const = default;
};
struct BsPublicPair {
  PublicPair pair;
  bool operator==(const BsPublicPair&) const = default;
};
struct Reject {
  std::string reason;
  bool operator==(const Reject&) const = default;
};

/// NR-baseline step with an opaque payload.
struct NrMessage {
  MessageType type = MessageType::SuciRegistration;
  Bytes payload;
  bool operator==(const NrMessage&) const = default;
};

using MessageBody = std::variant<JoinRequest, PublicPairAnnounce, AuthVerdict, KeyAgreementInit,
                                 WrappedKeyDelivery, HandoverPublicPairs, BsPublicPair, Reject,
                                 NrMessage>;

struct ProtocolMessage {
  std::string sender;
  std::string receiver;
  MessageBody body;

  MessageType type() const;
  Bytes encode() const;
  /// Size of encode() in bytes.
  std::size_t size_bytes() const { return encode().size(); }

  bool operator==(const ProtocolMessage&) const = default;
};

/// Inverse of ProtocolMessage::encode. Points are validated against
/// `group`. Throws DecodeError on truncation, trailing bytes, unknown tags
/// or invalid points/scalars.
ProtocolMessage decode_message(std::span<const std::uint8_t> frame, const algebra::Group& group);

}  // namespace swarmauth::protocol
