#include "swarmauth/protocol/message.hpp"

#include <limits>

#include "swarmauth/error.hpp"

namespace swarmauth::protocol {

namespace {

using algebra::Scalar;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::size_t v) {
    if (v > std::numeric_limits<std::uint16_t>::max()) throw InvalidArgument("field too long to encode");
    out_.push_back(static_cast<std::uint8_t>(v & 0xff));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void blob(std::span<const std::uint8_t> b) {
    u16(b.size());
    raw(b);
  }
  void str(std::string_view s) {
    u16(s.size());
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void pair(const PublicPair& p) {
    raw(p.index.to_bytes());
    blob(algebra::serialize(p.public_point));
  }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, const algebra::Group& g) : in_(in), group_(g) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (in_.size() - pos_ < n) throw DecodeError("frame truncated");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::size_t u16() {
    auto b = take(2);
    return static_cast<std::size_t>(b[0]) | (static_cast<std::size_t>(b[1]) << 8);
  }
  Bytes blob() {
    auto b = take(u16());
    return Bytes(b.begin(), b.end());
  }
  std::string str() {
    auto b = take(u16());
    return std::string(b.begin(), b.end());
  }
  PublicPair pair() {
    auto idx = take(algebra::encoded_width(group_.order()));
    Scalar x = Scalar::from_bytes(idx, group_.order());
    if (x.is_zero()) throw DecodeError("public pair with index 0");
    const Bytes point = blob();
    return PublicPair{x, group_.deserialize(point)};
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  const algebra::Group& group_;
};

bool is_nr_type(MessageType t) {
  const auto v = static_cast<std::uint8_t>(t);
  return v >= static_cast<std::uint8_t>(MessageType::SuciRegistration) &&
         v <= static_cast<std::uint8_t>(MessageType::ServiceAccept);
}

}  // namespace

std::string_view message_type_name(MessageType t) {
  switch (t) {
    case MessageType::JoinRequest: return "JoinRequest";
    case MessageType::PublicPairAnnounce: return "PublicPairAnnounce";
    case MessageType::AuthVerdict: return "AuthVerdict";
    case MessageType::KeyAgreementInit: return "KeyAgreementInit";
    case MessageType::WrappedKeyDelivery: return "WrappedKeyDelivery";
    case MessageType::HandoverPublicPairs: return "HandoverPublicPairs";
    case MessageType::BsPublicPair: return "BsPublicPair";
    case MessageType::Reject: return "Reject";
    case MessageType::SuciRegistration: return "SuciRegistration";
    case MessageType::SuciForward: return "SuciForward";
    case MessageType::AuthVector: return "AuthVector";
    case MessageType::RandChallenge: return "RandChallenge";
    case MessageType::ChallengeResponse: return "ChallengeResponse";
    case MessageType::UasIdRequest: return "UasIdRequest";
    case MessageType::UasIdResponse: return "UasIdResponse";
    case MessageType::UasIdForward: return "UasIdForward";
    case MessageType::CsChallenge: return "CsChallenge";
    case MessageType::CsResponse: return "CsResponse";
    case MessageType::CsConfirm: return "CsConfirm";
    case MessageType::ServiceAccept: return "ServiceAccept";
  }
  return "Unknown";
}

MessageType ProtocolMessage::type() const {
  struct Visitor {
    MessageType operator()(const JoinRequest&) const { return MessageType::JoinRequest; }
    MessageType operator()(const PublicPairAnnounce&) const { return MessageType::PublicPairAnnounce; }
    MessageType operator()(const AuthVerdict&) const { return MessageType::AuthVerdict; }
    MessageType operator()(const KeyAgreementInit&) const { return MessageType::KeyAgreementInit; }
    MessageType operator()(const WrappedKeyDelivery&) const { return MessageType::WrappedKeyDelivery; }
    MessageType operator()(const HandoverPublicPairs&) const { return MessageType::HandoverPublicPairs; }
    MessageType operator()(const BsPublicPair&) const { return MessageType::BsPublicPair; }
    MessageType operator()(const Reject&) const { return MessageType::Reject; }
    MessageType operator()(const NrMessage& m) const { return m.type; }
  };
  return std::visit(Visitor{}, body);
}

Bytes ProtocolMessage::encode() const {
  const MessageType t = type();
  if (std::holds_alternative<NrMessage>(body) && !is_nr_type(t)) {
    throw InvalidArgument("NrMessage carries a non-baseline tag");
  }
  Writer w;
  w.str(sender);
  w.str(receiver);
  std::visit(
      [&w](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, JoinRequest> || std::is_same_v<T, PublicPairAnnounce> ||
                      std::is_same_v<T, KeyAgreementInit> || std::is_same_v<T, BsPublicPair>) {
          w.pair(b.pair);
        } else if constexpr (std::is_same_v<T, AuthVerdict>) {
          w.u8(b.accepted ? 1 : 0);
        } else if constexpr (std::is_same_v<T, WrappedKeyDelivery>) {
          w.blob(b.wrapped.nonce);
          w.blob(b.wrapped.ciphertext);
          w.blob(b.wrapped.tag);
        } else if constexpr (std::is_same_v<T, HandoverPublicPairs>) {
          w.u16(b.pairs.size());
          for (const auto& p : b.pairs) w.pair(p);
        } else if constexpr (std::is_same_v<T, Reject>) {
          w.str(b.reason);
        } else {
          w.blob(b.payload);
        }
      },
      body);
  Bytes payload = w.take();
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("frame too large");
  Bytes frame;
  frame.reserve(payload.size() + 5);
  frame.push_back(static_cast<std::uint8_t>(t));
  const auto len = static_cast<std::uint32_t>(payload.size());
  for (int i = 0; i < 4; ++i) frame.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  frame.insert(frame.end(), payload.begin(), payload.end());
  return frame;
}

namespace {

MessageBody read_body(MessageType t, Reader& r) {
  switch (t) {
    case MessageType::JoinRequest: return JoinRequest{r.pair()};
    case MessageType::PublicPairAnnounce: return PublicPairAnnounce{r.pair()};
    case MessageType::KeyAgreementInit: return KeyAgreementInit{r.pair()};
    case MessageType::BsPublicPair: return BsPublicPair{r.pair()};
    case MessageType::AuthVerdict: {
      const std::uint8_t v = r.u8();
      if (v > 1) throw DecodeError("verdict byte must be 0 or 1");
      return AuthVerdict{v == 1};
    }
    case MessageType::WrappedKeyDelivery: {
      WrappedGroupKey w;
      w.nonce = r.blob();
      w.ciphertext = r.blob();
      w.tag = r.blob();
      return WrappedKeyDelivery{std::move(w)};
    }
    case MessageType::HandoverPublicPairs: {
      HandoverPublicPairs h;
      const std::size_t n = r.u16();
      for (std::size_t i = 0; i < n; ++i) h.pairs.push_back(r.pair());
      return h;
    }
    case MessageType::Reject: return Reject{r.str()};
    default:
      if (!is_nr_type(t)) throw DecodeError("unknown message tag");
      return NrMessage{t, r.blob()};
  }
}

}  // namespace

ProtocolMessage decode_message(std::span<const std::uint8_t> frame, const algebra::Group& group) {
  if (frame.size() < 5) throw DecodeError("frame shorter than header");
  const auto t = static_cast<MessageType>(frame[0]);
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len |= static_cast<std::uint32_t>(frame[1 + i]) << (8 * i);
  if (frame.size() - 5 != len) throw DecodeError("frame length mismatch");

  Reader r(frame.subspan(5), group);
  std::string sender = r.str();
  std::string receiver = r.str();
  MessageBody body = read_body(t, r);
  if (!r.done()) throw DecodeError("trailing bytes after message body");
  return ProtocolMessage{std::move(sender), std::move(receiver), std::move(body)};
}

}  // namespace swarmauth::protocol
