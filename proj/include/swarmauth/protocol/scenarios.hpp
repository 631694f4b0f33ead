#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmauth/protocol/actors.hpp"
#include "swarmauth/protocol/swarm.hpp"

namespace swarmauth::protocol {

struct ScenarioResult {
  ScenarioTrace trace;
  std::string participant_id;
  /// The verifying side accepted the sum check.
  bool sum_check_passed = false;
  /// Group key held by the participant at the end, if any.
  std::optional<Scalar> participant_key;
  /// Frames transmitted during the run.
  std::vector<Bytes> air_log;
  /// Impostor runs only: number of keys tried and whether the pairwise key
  /// actually used for wrapping was among them.
  std::size_t adversary_keys_tried = 0;
  bool adversary_derived_pairwise_key = false;

  Outcome outcome() const { return trace.outcome; }
};

// Every runner needs a SimNet that has not run anything yet, so that trace
// times start at zero.

/// The m-1 lowest-index guards and the newcomer exchange pairs and run the
/// sum check; the lowest-index guard leads key agreement. An honest,
/// accepted newcomer is added to the swarm as a service drone. Throws
/// ConfigError with fewer than m-1 guards.
ScenarioResult run_join_scenario(SwarmState& swarm, const Participant& newcomer, sim::SimNet& net);

/// The m-1 network drones send their pairs to the target BS, which runs the
/// sum check with its own credential. On success the lowest-index network
/// drone wraps the group key to the BS. Throws ConfigError unless the swarm
/// has exactly m-1 network drones.
ScenarioResult run_terrestrial_handover(SwarmState& swarm, const Participant& target_bs,
                                        sim::SimNet& net);

/// The new UxNB broadcasts its pair; every network drone runs the sum check
/// and broadcasts a verdict. On a unanimous accept the lowest-index network
/// drone wraps the group key to the UxNB. Same network-drone requirement as
/// the terrestrial handover.
ScenarioResult run_aerial_handover(SwarmState& swarm, const Participant& new_uxnb,
                                   sim::SimNet& net);

/// 13-step NR registration with opaque payloads.
ScenarioTrace run_nr_baseline_auth(sim::SimNet& net);

}  // namespace swarmauth::protocol
