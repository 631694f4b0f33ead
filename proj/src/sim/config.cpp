#include "swarmauth/sim/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <set>

#include <gmpxx.h>

#include "json.hpp"
#include "swarmauth/error.hpp"

namespace swarmauth::sim {

using nlohmann::json;
using nlohmann::ordered_json;
using protocol::ScenarioKind;

std::string_view adversary_name(AdversaryKind a) {
  switch (a) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::Replay: return "replay";
    case AdversaryKind::FakeBs: return "fake_bs";
  }
  return "?";
}

std::string_view group_choice_name(GroupChoice g) { return g == GroupChoice::Curve ? "curve" : "toy"; }

void ScenarioConfig::validate() const {
  latency.validate();
  const bool handover =
      scenario == ScenarioKind::TerrestrialHandover || scenario == ScenarioKind::AerialHandover;
  switch (scenario) {
    case ScenarioKind::None: throw ConfigError("scenario is required");
    case ScenarioKind::NrBaseline:
      if (adversary != AdversaryKind::None) throw ConfigError("nr_baseline takes no adversary");
      return;
    default: break;
  }
  if (m < 2) throw ConfigError("m must be at least 2");
  if (scenario == ScenarioKind::Join && guard_count < m - 1) {
    throw ConfigError("join needs guard_count >= m-1");
  }
  if (handover && network_count != m - 1) {
    throw ConfigError("handover needs network_count == m-1");
  }
  if (adversary == AdversaryKind::Replay && scenario != ScenarioKind::Join) {
    throw ConfigError("adversary 'replay' applies to the join scenario");
  }
  if (adversary == AdversaryKind::FakeBs && !handover) {
    throw ConfigError("adversary 'fake_bs' applies to handover scenarios");
  }
  if (group == GroupChoice::Toy) {
    if (mpz_probab_prime_p(mpz_class(toy_q).get_mpz_t(), 40) == 0) {
      throw ConfigError("toy_q must be prime");
    }
    // Dealer indices run from 1 and may skip a few zero shares.
    if (credentials_needed() + m >= toy_q) {
      throw ConfigError("toy group of order " + std::to_string(toy_q) + " is too small for " +
                        std::to_string(credentials_needed()) + " credentials");
    }
  }
}

std::size_t ScenarioConfig::credentials_needed() const {
  if (scenario == ScenarioKind::NrBaseline) return 0;
  // Roster, the participant, and an honest participant in the capture run.
  return guard_count + network_count + service_count + 1 + (adversary != AdversaryKind::None ? 1 : 0);
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("SWARMAUTH_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t seed = 0;
  const char* end = v + std::strlen(v);
  auto [p, ec] = std::from_chars(v, end, seed);
  if (ec != std::errc() || p != end) throw ConfigError("SWARMAUTH_SEED must be an unsigned integer");
  return seed;
}

namespace {

std::size_t count_field(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string string_field(const json& j, const char* key, const char* fallback) {
  if (!j.contains(key)) {
    if (fallback) return fallback;
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

ScenarioConfig scenario_config_from_json(const std::string& text,
                                         std::optional<std::uint64_t> fallback_seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  static const std::set<std::string> known{"scenario",      "m",         "guard_count", "network_count",
                                           "service_count", "adversary", "seed",        "group",
                                           "toy_q",         "latency"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("scenario config: unknown field '" + key + "'");
  }

  ScenarioConfig c;
  const std::string scenario = string_field(j, "scenario", nullptr);
  auto kind = protocol::parse_scenario_kind(scenario);
  if (!kind || *kind == ScenarioKind::None) throw ConfigError("unknown scenario '" + scenario + "'");
  c.scenario = *kind;
  c.m = count_field(j, "m", c.m);
  c.guard_count = count_field(j, "guard_count", c.m >= 1 ? c.m - 1 : 0);
  c.network_count = count_field(j, "network_count", c.m >= 1 ? c.m - 1 : 0);
  c.service_count = count_field(j, "service_count", 0);

  const std::string adversary = string_field(j, "adversary", "none");
  if (adversary == "none") c.adversary = AdversaryKind::None;
  else if (adversary == "replay") c.adversary = AdversaryKind::Replay;
  else if (adversary == "fake_bs") c.adversary = AdversaryKind::FakeBs;
  else throw ConfigError("unknown adversary '" + adversary + "'");

  const std::string group = string_field(j, "group", "curve");
  if (group == "curve") c.group = GroupChoice::Curve;
  else if (group == "toy") c.group = GroupChoice::Toy;
  else throw ConfigError("unknown group '" + group + "'");
  c.toy_q = count_field(j, "toy_q", c.toy_q);

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  } else if (fallback_seed) {
    c.seed = *fallback_seed;
  } else {
    throw ConfigError("no 'seed' in config and SWARMAUTH_SEED is not set");
  }
  if (j.contains("latency")) c.latency = latency::latency_model_from_json(j.at("latency").dump());

  c.validate();
  return c;
}

std::string scenario_config_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["scenario"] = protocol::scenario_kind_name(c.scenario);
  j["m"] = c.m;
  j["guard_count"] = c.guard_count;
  j["network_count"] = c.network_count;
  j["service_count"] = c.service_count;
  j["adversary"] = adversary_name(c.adversary);
  j["seed"] = c.seed;
  j["group"] = group_choice_name(c.group);
  if (c.group == GroupChoice::Toy) j["toy_q"] = c.toy_q;
  if (!(c.latency == latency::LatencyModel{})) {
    j["latency"] = ordered_json::parse(latency::latency_model_to_json(c.latency));
  }
  return j.dump(2);
}

}  // namespace swarmauth::sim
