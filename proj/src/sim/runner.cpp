#include "swarmauth/sim/runner.hpp"

#include "json.hpp"
#include "swarmauth/error.hpp"
#include "swarmauth/protocol/adversary.hpp"

namespace swarmauth::sim {

using protocol::MessageType;
using protocol::Outcome;
using protocol::Participant;
using protocol::ScenarioKind;
using protocol::ScenarioResult;
using protocol::SwarmState;

namespace {

std::string participant_prefix(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Join: return "newcomer-";
    case ScenarioKind::TerrestrialHandover: return "tbs-";
    case ScenarioKind::AerialHandover: return "uxnb-";
    default: return "party-";
  }
}

ScenarioResult run_kind(ScenarioKind k, SwarmState& swarm, const Participant& p, SimNet& net) {
  switch (k) {
    case ScenarioKind::Join: return protocol::run_join_scenario(swarm, p, net);
    case ScenarioKind::TerrestrialHandover: return protocol::run_terrestrial_handover(swarm, p, net);
    case ScenarioKind::AerialHandover: return protocol::run_aerial_handover(swarm, p, net);
    default: throw InvalidArgument("not a group scenario");
  }
}

/// Which frame of an honest run carries the participant's pair.
MessageType capture_type(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Join: return MessageType::JoinRequest;
    case ScenarioKind::TerrestrialHandover: return MessageType::KeyAgreementInit;
    default: return MessageType::BsPublicPair;
  }
}

algebra::Group make_group(const ScenarioConfig& cfg) {
  if (cfg.group == GroupChoice::Curve) return algebra::Group::default_elliptic();
  return algebra::Group::toy(cfg.toy_q);
}

}  // namespace

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["config"] = nlohmann::ordered_json::parse(config_json);
  j["verdict"] = verdict;
  j["total_ms"] = total_ms;
  j["predicted_ms"] = predicted_ms;
  j["model_consistent"] = model_consistent;
  if (!problem.empty()) j["problem"] = problem;
  j["trace_path"] = trace_path ? nlohmann::ordered_json(*trace_path) : nlohmann::ordered_json(nullptr);
  j["message_count"] = message_count;
  if (scenario != "nr_baseline") j["sum_check_passed"] = sum_check_passed;
  if (adversary != "none") {
    j["adversary"] = {{"kind", adversary},
                      {"keys_tried", adversary_keys_tried},
                      {"obtained_group_key", adversary_obtained_group_key},
                      {"derived_pairwise_key", adversary_derived_pairwise_key}};
  }
  j["crossovers"] = {{"auth", crossovers.auth},
                     {"handover", crossovers.handover},
                     {"swarm_n", crossovers.swarm_n},
                     {"swarm_m", crossovers.swarm_m}};
  j["exit_code"] = exit_code;
  return j.dump(2);
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunResult out;
  RunReport& rep = out.report;
  rep.scenario = std::string(protocol::scenario_kind_name(cfg.scenario));
  rep.config_json = scenario_config_to_json(cfg);
  rep.adversary = std::string(adversary_name(cfg.adversary));
  rep.crossovers = latency::compute_crossovers(cfg.m, cfg.latency);

  Rng rng(cfg.seed);
  std::optional<ScenarioResult> result;
  bool impostor = false;
  if (cfg.scenario == ScenarioKind::NrBaseline) {
    SimNet net(cfg.latency, rng.next_u64());
    out.trace = protocol::run_nr_baseline_auth(net);
  } else {
    const algebra::Group group = make_group(cfg);
    groupauth::ControlStation cs(group, cfg.m, rng);
    SwarmState swarm = SwarmState::provision(cs, cfg.guard_count, cfg.network_count, cfg.service_count);
    const std::string prefix = participant_prefix(cfg.scenario);

    Participant participant = [&] {
      if (cfg.adversary == AdversaryKind::None) {
        auto cred = cs.issue_next();
        return protocol::honest_participant(prefix + cred.index.to_decimal(), cred);
      }
      // Honest session the adversary eavesdrops on.
      auto cred = cs.issue_next();
      const std::string honest_id = prefix + cred.index.to_decimal();
      SimNet capture_net(cfg.latency, rng.next_u64());
      ScenarioResult prior =
          run_kind(cfg.scenario, swarm, protocol::honest_participant(honest_id, cred), capture_net);
      auto captured = protocol::capture_pair(prior.air_log, honest_id, capture_type(cfg.scenario),
                                             swarm.params());
      if (!captured) throw Error("no public pair captured from the honest session");
      return cfg.adversary == AdversaryKind::Replay ? protocol::replay_adversary(*captured)
                                                    : protocol::fake_bs_adversary(*captured);
    }();
    impostor = participant.impostor();

    SimNet net(cfg.latency, rng.next_u64());
    result = run_kind(cfg.scenario, swarm, participant, net);
    out.trace = result->trace;
    rep.sum_check_passed = result->sum_check_passed;
    rep.adversary_keys_tried = result->adversary_keys_tried;
    rep.adversary_derived_pairwise_key = result->adversary_derived_pairwise_key;
    rep.adversary_obtained_group_key = impostor && result->participant_key.has_value();
    try {
      swarm.check_invariants();
    } catch (const Error& e) {
      rep.problem = e.what();
    }
  }

  rep.verdict = std::string(protocol::outcome_name(out.trace.outcome));
  rep.total_ms = out.trace.total_ms();
  rep.message_count = out.trace.message_count();
  const latency::TraceCheck check = latency::check_trace_against_model(out.trace, cfg.latency);
  rep.predicted_ms = check.predicted_ms;
  rep.model_consistent = check.ok;
  if (!check.ok && rep.problem.empty()) rep.problem = "trace/model mismatch: " + check.reason;

  const Outcome o = out.trace.outcome;
  if (impostor && (rep.adversary_obtained_group_key || rep.adversary_derived_pairwise_key) &&
      rep.problem.empty()) {
    rep.problem = "adversary obtained key material";
  }
  if (!impostor && o != Outcome::Accepted && rep.problem.empty()) {
    rep.problem = "honest participant was not accepted";
  }
  if (impostor && o != Outcome::Rejected && o != Outcome::Excluded && o != Outcome::Malformed &&
      rep.problem.empty()) {
    rep.problem = "impostor run ended in state '" + rep.verdict + "'";
  }

  if (!rep.problem.empty()) rep.exit_code = kExitInvariant;
  else rep.exit_code = impostor ? kExitRejected : kExitAccepted;
  return out;
}

}  // namespace swarmauth::sim
