#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmauth::protocol {

enum class HopType {
  DroneDrone,    // direct link between drones / drone and BS
  UeCore,        // UE <-> 5G core round of the NR baseline
  CoreInternal,  // forwarding inside the core network; not costed
  LocalCompute,  // computation on a single actor
};

enum class ComputeKind {
  ScalarMult,
  AsymEncrypt,
  CoreDecrypt,
  Hash,
  Wrap,
  Unwrap,
  UnwrapFailed,
};

enum class ScenarioKind { None, Join, TerrestrialHandover, AerialHandover, NrBaseline };

enum class Outcome {
  Pending,
  Accepted,     // authenticated and holds the correct group key
  Rejected,     // sum check failed
  Malformed,    // public pair did not decode; rejected without a sum check
  Excluded,     // sum check passed but the group key could not be unwrapped
  Compromised,  // an adversary ended up with the group key
};

std::string_view hop_type_name(HopType h);
std::optional<HopType> parse_hop_type(std::string_view s);
std::string_view compute_kind_name(ComputeKind k);
std::optional<ComputeKind> parse_compute_kind(std::string_view s);
std::string_view scenario_kind_name(ScenarioKind k);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view s);
std::string_view outcome_name(Outcome o);

/// One costed event. For transmissions `time_ms` is the delivery time; for
/// computations it is the completion time. Broadcasts appear once with
/// to = "broadcast".
struct TraceRow {
  double time_ms = 0;
  std::string from;
  std::string to;
  std::string msg_type;
  std::size_t size_bytes = 0;
  HopType hop = HopType::LocalCompute;

  bool operator==(const TraceRow&) const = default;
};

struct ScenarioTrace {
  ScenarioKind scenario = ScenarioKind::None;
  std::size_t threshold = 0;
  Outcome outcome = Outcome::Pending;
  std::vector<TraceRow> rows;

  /// Completion time of the last event; 0 for an empty trace.
  double total_ms() const { return rows.empty() ? 0.0 : rows.back().time_ms; }
  std::size_t count(HopType hop) const;
  std::size_t count_type(std::string_view msg_type) const;
  /// Rows that are transmissions (any hop type but LocalCompute).
  std::size_t message_count() const;
};

inline constexpr std::string_view kBroadcast = "broadcast";

/// CSV with header time_ms,from,to,msg_type,size_bytes,hop_type. Times use
/// the shortest decimal form that round-trips exactly.
std::string trace_to_csv(const ScenarioTrace& trace);

/// Parses rows written by trace_to_csv. Throws DecodeError on malformed
/// input.
std::vector<TraceRow> trace_rows_from_csv(std::string_view csv);

std::string format_ms(double v);

}  // namespace swarmauth::protocol
