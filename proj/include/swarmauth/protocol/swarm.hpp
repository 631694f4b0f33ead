#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swarmauth/groupauth/dealer.hpp"

namespace swarmauth::protocol {

using groupauth::Credential;
using groupauth::GroupParams;
using groupauth::PublicPair;
using algebra::Scalar;

enum class DroneRole { Guard, Network, Service };

std::string_view role_name(DroneRole r);

struct Drone {
  std::string id;
  DroneRole role = DroneRole::Service;
  Credential credential;
  /// Present once the drone holds the group key.
  std::optional<Scalar> group_key;
};

class SwarmState {
 public:
  explicit SwarmState(GroupParams params) : params_(std::move(params)) {}

  /// Issues credentials from `cs` in role order guards, network, service.
  /// Every provisioned drone holds the group key.
  static SwarmState provision(groupauth::ControlStation& cs, std::size_t guards,
                              std::size_t network, std::size_t service);

  const GroupParams& params() const { return params_; }
  const std::vector<Drone>& drones() const { return drones_; }

  /// Drones of one role, ordered by ascending index.
  std::vector<const Drone*> with_role(DroneRole role) const;
  const Drone* find(const std::string& id) const;

  /// Throws InvalidArgument on a duplicate id or index, or when the
  /// credential's public point does not match its share.
  void add(Drone drone);
  void set_group_key(const std::string& id, const Scalar& key);

  std::map<std::string, std::pair<DroneRole, PublicPair>> roster() const;

  /// Base station currently serving the swarm, if any.
  const std::optional<std::string>& serving_bs() const { return serving_bs_; }
  void set_serving_bs(std::string id) { serving_bs_ = std::move(id); }

  /// Throws Error when a roster pair does not survive an encode/decode
  /// round trip or a held group key fails key·P == Q.
  void check_invariants() const;

 private:
  GroupParams params_;
  std::vector<Drone> drones_;
  std::optional<std::string> serving_bs_;
};

/// "guard-3", "net-5", ... for the drone with index x.
std::string drone_id(DroneRole role, const Scalar& index);

}  // namespace swarmauth::protocol
