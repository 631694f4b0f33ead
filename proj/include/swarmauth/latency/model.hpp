#pragma once

// Analytical cost model for authentication and handover latency, and the
// link between simulated traces and the closed forms.

#include <cstddef>
#include <string>
#include <vector>

#include "swarmauth/protocol/trace.hpp"

namespace swarmauth::latency {

using protocol::ComputeKind;
using protocol::HopType;
using protocol::Outcome;
using protocol::ScenarioKind;
using protocol::ScenarioTrace;
using protocol::TraceRow;

/// All durations in milliseconds.
struct LatencyModel {
  /// One counted UE <-> core transmission.
  double ue_core_transmission = 10.0;
  double asym_encrypt = 0.1;
  double core_decrypt = 1.5;
  double drone_hop = 0.6;
  double ec_scalar_mult = 0.612;
  double nr_handover_total = 50.0;
  std::size_t nr_auth_transmissions = 8;

  /// Throws ConfigError unless every field is strictly positive and finite.
  void validate() const;

  bool operator==(const LatencyModel&) const = default;
};

/// Fields absent from the JSON object keep their defaults. Unknown fields
/// and non-positive values are rejected with ConfigError.
LatencyModel latency_model_from_json(const std::string& json_text);
std::string latency_model_to_json(const LatencyModel& model);

/// Hashing, key wrapping and core-internal forwarding are not costed.
double compute_cost(ComputeKind kind, const LatencyModel& model);
double hop_cost(HopType hop, const LatencyModel& model);
/// Cost of the event a trace row records.
double row_cost(const TraceRow& row, const LatencyModel& model);

double nr_auth_latency(const LatencyModel& model);
/// m · (drone_hop + ec_scalar_mult).
double group_auth_latency(std::size_t m, const LatencyModel& model);
/// n · drone_hop + group_auth_latency(m).
double swarm_auth_latency(std::size_t n, std::size_t m, const LatencyModel& model);
double proposed_handover_latency(std::size_t m, const LatencyModel& model);
double nr_handover_latency(const LatencyModel& model);

/// Largest integer k >= 0 with k · per_unit + offset < baseline; -1 when
/// even k = 0 does not qualify. per_unit must be positive.
long crossover_threshold(double baseline_ms, double per_unit_ms, double offset_ms = 0.0);

struct Crossovers {
  long auth = 0;      // m against the NR authentication baseline
  long handover = 0;  // m against the NR handover baseline
  long swarm_n = 0;   // drone count n at threshold `swarm_m`
  std::size_t swarm_m = 0;
};

Crossovers compute_crossovers(std::size_t swarm_m, const LatencyModel& model);

struct LatencyCurve {
  std::string variable;  // "m" or "n"
  std::vector<std::size_t> points;
  std::vector<double> proposed_ms;
  std::vector<double> nr_ms;
};

struct FigureConfig {
  std::size_t max_threshold = 100;
  std::size_t max_drones = 200;
  /// Threshold used for the swarm curve.
  std::size_t swarm_threshold = 5;
};

struct FigureSet {
  LatencyCurve auth;      // proposed join vs NR authentication, over m
  LatencyCurve swarm;     // whole-swarm authentication vs NR, over n
  LatencyCurve handover;  // proposed vs NR handover, over m
  Crossovers crossovers;
};

FigureSet emit_figure_curves(const FigureConfig& config, const LatencyModel& model = {});

/// CSV with header variable,value_ms_proposed,value_ms_nr; the first column
/// holds the sample point.
std::string curve_to_csv(const LatencyCurve& curve);
/// Inverse of curve_to_csv. Throws DecodeError.
LatencyCurve curve_from_csv(const std::string& variable, const std::string& csv);

std::string crossovers_to_csv(const Crossovers& c);

/// Closed-form end-to-end latency of one scenario run ending in `outcome`.
/// Throws InvalidArgument for combinations no scenario produces.
double predict_scenario_ms(ScenarioKind scenario, std::size_t m, Outcome outcome,
                           const LatencyModel& model);

struct TraceCheck {
  bool ok = false;
  double trace_total_ms = 0;
  double predicted_ms = 0;
  std::string reason;  // empty when ok
};

/// Checks that timestamps never decrease, that no sender and no channel is
/// used by two events at once, that every event lasts exactly its model
/// cost, and that the total matches predict_scenario_ms within 1e-9 ms.
TraceCheck check_trace_against_model(const ScenarioTrace& trace, const LatencyModel& model);

inline bool validate_trace_against_model(const ScenarioTrace& trace, const LatencyModel& model) {
  return check_trace_against_model(trace, model).ok;
}

inline constexpr double kTraceTolerance = 1e-9;

}  // namespace swarmauth::latency
