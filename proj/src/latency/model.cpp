#include "swarmauth/latency/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "swarmauth/error.hpp"

namespace swarmauth::latency {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using protocol::format_ms;

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ConfigError(std::string("latency model field '") + name + "' must be positive");
  }
}

}  // namespace

void LatencyModel::validate() const {
  require_positive(ue_core_transmission, "ue_core_transmission");
  require_positive(asym_encrypt, "asym_encrypt");
  require_positive(core_decrypt, "core_decrypt");
  require_positive(drone_hop, "drone_hop");
  require_positive(ec_scalar_mult, "ec_scalar_mult");
  require_positive(nr_handover_total, "nr_handover_total");
  if (nr_auth_transmissions == 0) throw ConfigError("nr_auth_transmissions must be positive");
}

LatencyModel latency_model_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("latency model: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("latency model must be a JSON object");
  LatencyModel m;
  const std::map<std::string, double*> doubles{
      {"ue_core_transmission", &m.ue_core_transmission},
      {"asym_encrypt", &m.asym_encrypt},
      {"core_decrypt", &m.core_decrypt},
      {"drone_hop", &m.drone_hop},
      {"ec_scalar_mult", &m.ec_scalar_mult},
      {"nr_handover_total", &m.nr_handover_total},
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "nr_auth_transmissions") {
      if (!value.is_number_unsigned()) throw ConfigError("nr_auth_transmissions must be a count");
      m.nr_auth_transmissions = value.get<std::size_t>();
      continue;
    }
    auto it = doubles.find(key);
    if (it == doubles.end()) throw ConfigError("latency model: unknown field '" + key + "'");
    if (!value.is_number()) throw ConfigError("latency model field '" + key + "' must be a number");
    *it->second = value.get<double>();
  }
  m.validate();
  return m;
}

std::string latency_model_to_json(const LatencyModel& m) {
  ordered_json j;
  j["ue_core_transmission"] = m.ue_core_transmission;
  j["asym_encrypt"] = m.asym_encrypt;
  j["core_decrypt"] = m.core_decrypt;
  j["drone_hop"] = m.drone_hop;
  j["ec_scalar_mult"] = m.ec_scalar_mult;
  j["nr_handover_total"] = m.nr_handover_total;
  j["nr_auth_transmissions"] = m.nr_auth_transmissions;
  return j.dump(2);
}

double compute_cost(ComputeKind kind, const LatencyModel& model) {
  switch (kind) {
    case ComputeKind::ScalarMult: return model.ec_scalar_mult;
    case ComputeKind::AsymEncrypt: return model.asym_encrypt;
    case ComputeKind::CoreDecrypt: return model.core_decrypt;
    case ComputeKind::Hash:
    case ComputeKind::Wrap:
    case ComputeKind::Unwrap:
    case ComputeKind::UnwrapFailed: return 0.0;
  }
  return 0.0;
}

double hop_cost(HopType hop, const LatencyModel& model) {
  switch (hop) {
    case HopType::DroneDrone: return model.drone_hop;
    case HopType::UeCore: return model.ue_core_transmission;
    case HopType::CoreInternal:
    case HopType::LocalCompute: return 0.0;
  }
  return 0.0;
}

double row_cost(const TraceRow& row, const LatencyModel& model) {
  if (row.hop != HopType::LocalCompute) return hop_cost(row.hop, model);
  auto kind = protocol::parse_compute_kind(row.msg_type);
  if (!kind) throw InvalidArgument("unknown compute event '" + row.msg_type + "'");
  return compute_cost(*kind, model);
}

double nr_auth_latency(const LatencyModel& model) {
  return static_cast<double>(model.nr_auth_transmissions) * model.ue_core_transmission +
         model.asym_encrypt + model.core_decrypt;
}

double group_auth_latency(std::size_t m, const LatencyModel& model) {
  return static_cast<double>(m) * (model.drone_hop + model.ec_scalar_mult);
}

double swarm_auth_latency(std::size_t n, std::size_t m, const LatencyModel& model) {
  return static_cast<double>(n) * model.drone_hop + group_auth_latency(m, model);
}

double proposed_handover_latency(std::size_t m, const LatencyModel& model) {
  return group_auth_latency(m, model);
}

double nr_handover_latency(const LatencyModel& model) { return model.nr_handover_total; }

long crossover_threshold(double baseline_ms, double per_unit_ms, double offset_ms) {
  if (!(per_unit_ms > 0)) throw InvalidArgument("crossover_threshold: per-unit cost must be positive");
  if (!(offset_ms < baseline_ms)) return -1;
  // Start from the real-valued root and correct for rounding on both sides.
  auto k = static_cast<long>(std::floor((baseline_ms - offset_ms) / per_unit_ms));
  while (k >= 0 && static_cast<double>(k) * per_unit_ms + offset_ms >= baseline_ms) --k;
  while (static_cast<double>(k + 1) * per_unit_ms + offset_ms < baseline_ms) ++k;
  return k;
}

Crossovers compute_crossovers(std::size_t swarm_m, const LatencyModel& model) {
  const double per_m = model.drone_hop + model.ec_scalar_mult;
  Crossovers c;
  c.auth = crossover_threshold(nr_auth_latency(model), per_m);
  c.handover = crossover_threshold(nr_handover_latency(model), per_m);
  c.swarm_m = swarm_m;
  c.swarm_n = crossover_threshold(nr_auth_latency(model), model.drone_hop,
                                  group_auth_latency(swarm_m, model));
  return c;
}

FigureSet emit_figure_curves(const FigureConfig& config, const LatencyModel& model) {
  if (config.max_threshold == 0 || config.max_drones == 0) {
    throw InvalidArgument("figure ranges must be non-empty");
  }
  FigureSet f;
  f.auth.variable = "m";
  f.handover.variable = "m";
  for (std::size_t m = 1; m <= config.max_threshold; ++m) {
    f.auth.points.push_back(m);
    f.auth.proposed_ms.push_back(group_auth_latency(m, model));
    f.auth.nr_ms.push_back(nr_auth_latency(model));
    f.handover.points.push_back(m);
    f.handover.proposed_ms.push_back(proposed_handover_latency(m, model));
    f.handover.nr_ms.push_back(nr_handover_latency(model));
  }
  f.swarm.variable = "n";
  for (std::size_t n = 1; n <= config.max_drones; ++n) {
    f.swarm.points.push_back(n);
    f.swarm.proposed_ms.push_back(swarm_auth_latency(n, config.swarm_threshold, model));
    f.swarm.nr_ms.push_back(nr_auth_latency(model));
  }
  f.crossovers = compute_crossovers(config.swarm_threshold, model);
  return f;
}

std::string curve_to_csv(const LatencyCurve& curve) {
  if (curve.points.size() != curve.proposed_ms.size() || curve.points.size() != curve.nr_ms.size()) {
    throw InvalidArgument("curve series lengths differ");
  }
  std::ostringstream out;
  out << "variable,value_ms_proposed,value_ms_nr\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    out << curve.points[i] << ',' << format_ms(curve.proposed_ms[i]) << ','
        << format_ms(curve.nr_ms[i]) << '\n';
  }
  return out.str();
}

LatencyCurve curve_from_csv(const std::string& variable, const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "variable,value_ms_proposed,value_ms_nr") {
    throw DecodeError("curve CSV: unexpected header");
  }
  LatencyCurve c;
  c.variable = variable;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos || line.find(',', b + 1) != std::string::npos) {
      throw DecodeError("curve CSV: expected 3 columns");
    }
    try {
      std::size_t used = 0;
      const std::string p = line.substr(0, a);
      const unsigned long pt = std::stoul(p, &used);
      if (used != p.size()) throw DecodeError("curve CSV: bad sample point");
      const std::string s1 = line.substr(a + 1, b - a - 1);
      const std::string s2 = line.substr(b + 1);
      const double v1 = std::stod(s1, &used);
      if (used != s1.size()) throw DecodeError("curve CSV: bad value");
      const double v2 = std::stod(s2, &used);
      if (used != s2.size()) throw DecodeError("curve CSV: bad value");
      c.points.push_back(pt);
      c.proposed_ms.push_back(v1);
      c.nr_ms.push_back(v2);
    } catch (const std::logic_error&) {
      throw DecodeError("curve CSV: bad number in '" + line + "'");
    }
  }
  return c;
}

std::string crossovers_to_csv(const Crossovers& c) {
  std::ostringstream out;
  out << "crossover,value\n";
  out << "auth," << c.auth << '\n';
  out << "handover," << c.handover << '\n';
  out << "swarm_n_at_m" << c.swarm_m << ',' << c.swarm_n << '\n';
  return out.str();
}

double predict_scenario_ms(ScenarioKind scenario, std::size_t m, Outcome outcome,
                           const LatencyModel& model) {
  const double hop = model.drone_hop;
  const double sm = model.ec_scalar_mult;
  const double ga = group_auth_latency(m, model);
  auto unsupported = [&]() -> double {
    throw InvalidArgument("no closed form for scenario '" +
                          std::string(protocol::scenario_kind_name(scenario)) + "' with outcome '" +
                          std::string(protocol::outcome_name(outcome)) + "'");
  };
  switch (scenario) {
    case ScenarioKind::None:
      return outcome == Outcome::Pending ? 0.0 : unsupported();
    case ScenarioKind::NrBaseline:
      return outcome == Outcome::Accepted ? nr_auth_latency(model) : unsupported();
    case ScenarioKind::Join:
      // Sum check, verdict, then leader derive + KeyAgreementInit + delivery
      // and the newcomer's own derivation.
      switch (outcome) {
        case Outcome::Accepted: return ga + hop + sm + 2 * hop + sm;
        case Outcome::Excluded:
        case Outcome::Compromised: return ga + hop + sm + 2 * hop;
        case Outcome::Rejected: return ga + hop;
        case Outcome::Malformed: return 2 * hop;
        default: return unsupported();
      }
    case ScenarioKind::TerrestrialHandover:
    case ScenarioKind::AerialHandover:
      // The verdict hop is already part of the m transmissions.
      switch (outcome) {
        case Outcome::Accepted: return ga + 2 * hop + 2 * sm;
        case Outcome::Excluded:
        case Outcome::Compromised: return ga + 2 * hop + sm;
        case Outcome::Rejected: return ga;
        case Outcome::Malformed:
          return scenario == ScenarioKind::AerialHandover ? static_cast<double>(m) * hop
                                                          : unsupported();
        default: return unsupported();
      }
  }
  return unsupported();
}

TraceCheck check_trace_against_model(const ScenarioTrace& trace, const LatencyModel& model) {
  TraceCheck r;
  r.trace_total_ms = trace.total_ms();
  try {
    r.predicted_ms = predict_scenario_ms(trace.scenario, trace.threshold, trace.outcome, model);
  } catch (const InvalidArgument& e) {
    r.reason = e.what();
    return r;
  }

  struct Interval {
    double start;
    double end;
  };
  std::map<std::string, std::vector<Interval>> busy;
  std::vector<double> completions{0.0};
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& row = trace.rows[i];
    const std::string where = "row " + std::to_string(i) + " (" + row.msg_type + ")";
    if (row.time_ms < prev) {
      r.reason = where + ": timestamp decreases";
      return r;
    }
    prev = row.time_ms;
    double cost = 0;
    try {
      cost = row_cost(row, model);
    } catch (const InvalidArgument& e) {
      r.reason = where + ": " + e.what();
      return r;
    }
    const double start = row.time_ms - cost;
    const bool triggered = std::any_of(completions.begin(), completions.end(), [&](double c) {
      return std::fabs(c - start) <= kTraceTolerance;
    });
    if (!triggered) {
      r.reason = where + ": start time does not follow any earlier event";
      return r;
    }
    completions.push_back(row.time_ms);
    if (cost > 0) {
      busy["actor:" + row.from].push_back({start, row.time_ms});
      if (row.hop != HopType::LocalCompute) {
        busy["channel:" + std::string(protocol::hop_type_name(row.hop))].push_back({start, row.time_ms});
      }
    }
  }
  for (auto& [resource, intervals] : busy) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].start < intervals[i - 1].end - kTraceTolerance) {
        r.reason = resource + " is used by two events at once";
        return r;
      }
    }
  }
  if (std::fabs(r.trace_total_ms - r.predicted_ms) > kTraceTolerance) {
    r.reason = "trace total " + format_ms(r.trace_total_ms) + " ms differs from prediction " +
               format_ms(r.predicted_ms) + " ms";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace swarmauth::latency
