#pragma once

#include <optional>
#include <string>

#include "swarmauth/latency/model.hpp"
#include "swarmauth/protocol/scenarios.hpp"
#include "swarmauth/sim/config.hpp"

namespace swarmauth::sim {

/// CLI exit codes.
inline constexpr int kExitAccepted = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRejected = 2;
inline constexpr int kExitInvariant = 3;

struct RunReport {
  std::string scenario;
  std::string config_json;
  std::string verdict;
  double total_ms = 0;
  double predicted_ms = 0;
  bool model_consistent = false;
  /// Reason from the trace/model check, or a broken invariant; empty when
  /// everything holds.
  std::string problem;
  std::optional<std::string> trace_path;
  std::size_t message_count = 0;
  bool sum_check_passed = false;
  std::string adversary;
  std::size_t adversary_keys_tried = 0;
  bool adversary_obtained_group_key = false;
  bool adversary_derived_pairwise_key = false;
  latency::Crossovers crossovers;
  int exit_code = kExitInvariant;

  std::string to_json() const;
};

struct RunResult {
  protocol::ScenarioTrace trace;
  RunReport report;
};

/// Provisions a swarm from the config's seed, runs the scenario and checks
/// every invariant. An adversarial config first runs an honest session of
/// the same kind and captures the pair to replay from its air log.
///
/// Exit code: 0 when an honest participant is accepted; 2 when an impostor
/// is rejected or excluded; 3 when an impostor gets the key, an honest
/// participant is not accepted, or the trace disagrees with the model.
RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace swarmauth::sim
