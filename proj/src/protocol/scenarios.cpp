#include "swarmauth/protocol/scenarios.hpp"

#include <algorithm>

#include "swarmauth/error.hpp"

namespace swarmauth::protocol {

namespace {

void require_fresh(const sim::SimNet& net) {
  if (net.now() != 0 || !net.idle() || net.dispatched() != 0) {
    throw InvalidArgument("scenario needs a SimNet that has not run yet");
  }
}

void check_network_count(const SwarmState& swarm) {
  const std::size_t m = swarm.params().threshold;
  const std::size_t n = swarm.with_role(DroneRole::Network).size();
  if (m < 2 || n != m - 1) {
    throw ConfigError("handover needs exactly m-1 = " + std::to_string(m - 1) +
                      " network drones, swarm has " + std::to_string(n));
  }
}

bool tried(const std::vector<SymmetricKey>& keys, const std::optional<SymmetricKey>& k) {
  return k && std::find(keys.begin(), keys.end(), *k) != keys.end();
}

// Call only after the SimNet has drained.
ScenarioResult finish(ScenarioKind kind, ScenarioTrace trace, const SwarmState& swarm,
                      const ScenarioNet& scenario, const ParticipantActor& who,
                      bool sum_check_passed, const std::optional<SymmetricKey>& wrap_key) {
  ScenarioResult r;
  r.trace = std::move(trace);
  r.trace.scenario = kind;
  r.trace.threshold = swarm.params().threshold;
  r.trace.outcome = who.outcome();
  r.participant_id = who.id();
  r.sum_check_passed = sum_check_passed;
  r.participant_key = who.group_key();
  r.air_log = scenario.air_log();
  r.adversary_keys_tried = who.attempted_keys().size();
  r.adversary_derived_pairwise_key = who.participant().impostor() && tried(who.attempted_keys(), wrap_key);
  return r;
}

}  // namespace

ScenarioResult run_join_scenario(SwarmState& swarm, const Participant& newcomer, sim::SimNet& net) {
  require_fresh(net);
  const GroupParams& params = swarm.params();
  const std::size_t m = params.threshold;
  auto guard_drones = swarm.with_role(DroneRole::Guard);
  if (m < 2 || guard_drones.size() < m - 1) {
    throw ConfigError("join needs at least m-1 = " + std::to_string(m - 1) + " guards, swarm has " +
                      std::to_string(guard_drones.size()));
  }
  guard_drones.resize(m - 1);
  std::vector<PublicPair> guard_pairs;
  for (const Drone* d : guard_drones) guard_pairs.push_back(d->credential.public_pair());

  ScenarioNet scenario(net, params);
  std::vector<std::unique_ptr<GuardActor>> guards;
  for (std::size_t i = 0; i < guard_drones.size(); ++i) {
    const Drone& d = *guard_drones[i];
    if (!d.group_key) throw ConfigError("guard " + d.id + " does not hold the group key");
    guards.push_back(std::make_unique<GuardActor>(d.id, d.credential, guard_pairs, i == 0, *d.group_key));
  }
  NewcomerActor newcomer_actor(newcomer, m - 1);
  scenario.add(newcomer_actor);
  for (auto& g : guards) scenario.add(*g);
  scenario.start();

  ScenarioTrace trace = net.run_until_idle();
  const GuardActor& leader = *guards.front();
  ScenarioResult r = finish(ScenarioKind::Join, std::move(trace), swarm, scenario, newcomer_actor,
                            leader.verdict().value_or(false), leader.wrap_key());
  if (r.outcome() == Outcome::Accepted) {
    swarm.add(Drone{newcomer.id, DroneRole::Service, *newcomer.credential, r.participant_key});
  }
  return r;
}

ScenarioResult run_terrestrial_handover(SwarmState& swarm, const Participant& target_bs,
                                        sim::SimNet& net) {
  require_fresh(net);
  check_network_count(swarm);
  const GroupParams& params = swarm.params();
  const auto network = swarm.with_role(DroneRole::Network);

  ScenarioNet scenario(net, params);
  std::vector<std::unique_ptr<TerrestrialDroneActor>> drones;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const Drone& d = *network[i];
    if (!d.group_key) throw ConfigError("network drone " + d.id + " does not hold the group key");
    drones.push_back(std::make_unique<TerrestrialDroneActor>(d.id, d.credential, target_bs.id, i == 0,
                                                             *d.group_key));
  }
  TargetBsActor bs(target_bs, network.size());
  scenario.add(bs);
  for (auto& d : drones) scenario.add(*d);
  scenario.start();

  ScenarioTrace trace = net.run_until_idle();
  ScenarioResult r = finish(ScenarioKind::TerrestrialHandover, std::move(trace), swarm, scenario, bs,
                            bs.verdict().value_or(false), drones.front()->wrap_key());
  if (r.outcome() == Outcome::Accepted) swarm.set_serving_bs(target_bs.id);
  return r;
}

ScenarioResult run_aerial_handover(SwarmState& swarm, const Participant& new_uxnb, sim::SimNet& net) {
  require_fresh(net);
  check_network_count(swarm);
  const GroupParams& params = swarm.params();
  const auto network = swarm.with_role(DroneRole::Network);
  std::vector<PublicPair> network_pairs;
  for (const Drone* d : network) network_pairs.push_back(d->credential.public_pair());

  ScenarioNet scenario(net, params);
  std::vector<std::unique_ptr<AerialDroneActor>> drones;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const Drone& d = *network[i];
    if (!d.group_key) throw ConfigError("network drone " + d.id + " does not hold the group key");
    drones.push_back(std::make_unique<AerialDroneActor>(d.id, d.credential, network_pairs, i == 0,
                                                        *d.group_key));
  }
  NewUxnbActor uxnb(new_uxnb, network.size());
  scenario.add(uxnb);
  for (auto& d : drones) scenario.add(*d);
  scenario.start();

  ScenarioTrace trace = net.run_until_idle();
  const bool unanimous = std::all_of(drones.begin(), drones.end(),
                                     [](const auto& d) { return d->verdict().value_or(false); });
  ScenarioResult r = finish(ScenarioKind::AerialHandover, std::move(trace), swarm, scenario, uxnb,
                            unanimous,
                            drones.front()->wrap_key());
  if (r.outcome() == Outcome::Accepted) swarm.set_serving_bs(new_uxnb.id);
  return r;
}

ScenarioTrace run_nr_baseline_auth(sim::SimNet& net) {
  require_fresh(net);
  // NR payloads are opaque; the group only satisfies the codec interface.
  static const algebra::Group kToy = algebra::Group::toy(31);
  ScenarioNet scenario(net, GroupParams{kToy, 1, kToy.generator()});
  NrUavActor uav;
  NrAmfActor amf;
  NrUdmActor udm;
  NrControlStationActor cs;
  for (Actor* a : std::initializer_list<Actor*>{&uav, &amf, &udm, &cs}) scenario.add(*a);
  scenario.start();
  ScenarioTrace t = net.run_until_idle();
  t.scenario = ScenarioKind::NrBaseline;
  t.threshold = 0;
  t.outcome = uav.accepted() ? Outcome::Accepted : Outcome::Rejected;
  return t;
}

}  // namespace swarmauth::protocol
