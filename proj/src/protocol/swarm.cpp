#include "swarmauth/protocol/swarm.hpp"

#include <algorithm>

#include "swarmauth/error.hpp"

namespace swarmauth::protocol {

std::string_view role_name(DroneRole r) {
  switch (r) {
    case DroneRole::Guard: return "guard";
    case DroneRole::Network: return "network";
    case DroneRole::Service: return "service";
  }
  return "?";
}

std::string drone_id(DroneRole role, const Scalar& index) {
  const char* prefix = role == DroneRole::Guard ? "guard-" : role == DroneRole::Network ? "net-" : "svc-";
  return prefix + index.to_decimal();
}

SwarmState SwarmState::provision(groupauth::ControlStation& cs, std::size_t guards,
                                 std::size_t network, std::size_t service) {
  SwarmState s(cs.params());
  const std::pair<DroneRole, std::size_t> plan[] = {
      {DroneRole::Guard, guards}, {DroneRole::Network, network}, {DroneRole::Service, service}};
  for (const auto& [role, count] : plan) {
    for (std::size_t i = 0; i < count; ++i) {
      Credential c = cs.issue_next();
      std::string id = drone_id(role, c.index);
      s.add(Drone{std::move(id), role, std::move(c), cs.group_key()});
    }
  }
  return s;
}

std::vector<const Drone*> SwarmState::with_role(DroneRole role) const {
  std::vector<const Drone*> out;
  for (const Drone& d : drones_)
    if (d.role == role) out.push_back(&d);
  std::sort(out.begin(), out.end(), [](const Drone* a, const Drone* b) {
    return a->credential.index.value() < b->credential.index.value();
  });
  return out;
}

const Drone* SwarmState::find(const std::string& id) const {
  for (const Drone& d : drones_)
    if (d.id == id) return &d;
  return nullptr;
}

void SwarmState::add(Drone drone) {
  for (const Drone& d : drones_) {
    if (d.id == drone.id) throw InvalidArgument("duplicate drone id " + drone.id);
    if (d.credential.index == drone.credential.index) {
      throw InvalidArgument("duplicate drone index " + drone.credential.index.to_decimal());
    }
  }
  if (drone.credential.private_share * params_.generator() != drone.credential.public_point) {
    throw InvalidArgument("credential of " + drone.id + " is inconsistent");
  }
  drones_.push_back(std::move(drone));
}

void SwarmState::set_group_key(const std::string& id, const Scalar& key) {
  for (Drone& d : drones_) {
    if (d.id == id) {
      d.group_key = key;
      return;
    }
  }
  throw InvalidArgument("unknown drone " + id);
}

std::map<std::string, std::pair<DroneRole, PublicPair>> SwarmState::roster() const {
  std::map<std::string, std::pair<DroneRole, PublicPair>> r;
  for (const Drone& d : drones_) r.emplace(d.id, std::make_pair(d.role, d.credential.public_pair()));
  return r;
}

void SwarmState::check_invariants() const {
  for (const Drone& d : drones_) {
    const auto bytes = algebra::serialize(d.credential.public_point);
    if (params_.group.deserialize(bytes) != d.credential.public_point) {
      throw Error("roster pair of " + d.id + " does not round-trip");
    }
    if (d.group_key && *d.group_key * params_.generator() != params_.verification_point) {
      throw Error(d.id + " holds a group key inconsistent with Q");
    }
  }
}

}  // namespace swarmauth::protocol
