#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "swarmauth/latency/model.hpp"
#include "swarmauth/protocol/trace.hpp"

namespace swarmauth::sim {

enum class AdversaryKind { None, Replay, FakeBs };
enum class GroupChoice { Curve, Toy };

std::string_view adversary_name(AdversaryKind a);
std::string_view group_choice_name(GroupChoice g);

/// One scenario run as described by a JSON config file:
///   {"scenario": "join"|"terrestrial"|"aerial"|"nr_baseline",
///    "m", "guard_count", "network_count", "service_count",
///    "adversary": "none"|"replay"|"fake_bs", "seed", "group": "curve"|"toy",
///    optional "toy_q" and "latency" (a latency model override object)}
struct ScenarioConfig {
  protocol::ScenarioKind scenario = protocol::ScenarioKind::Join;
  std::size_t m = 3;
  std::size_t guard_count = 2;
  std::size_t network_count = 2;
  std::size_t service_count = 0;
  AdversaryKind adversary = AdversaryKind::None;
  std::uint64_t seed = 0;
  GroupChoice group = GroupChoice::Curve;
  std::uint64_t toy_q = 31;
  latency::LatencyModel latency;

  /// Throws ConfigError on any inconsistency: m < 2, too few guards for a
  /// join, a network count other than m-1 for a handover, an adversary
  /// that does not fit the scenario, or a toy group too small for the
  /// roster.
  void validate() const;

  /// Credentials the run will draw from the dealer.
  std::size_t credentials_needed() const;
};

/// SWARMAUTH_SEED as an unsigned integer, if set. Throws ConfigError when
/// set but not a number.
std::optional<std::uint64_t> seed_from_env();

/// `fallback_seed` is used when the file has no "seed". Throws ConfigError
/// on malformed input or when neither provides a seed.
ScenarioConfig scenario_config_from_json(const std::string& text,
                                         std::optional<std::uint64_t> fallback_seed);
std::string scenario_config_to_json(const ScenarioConfig& cfg);

}  // namespace swarmauth::sim
