#include "swarmauth/protocol/trace.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <utility>

#include "swarmauth/error.hpp"

namespace swarmauth::protocol {

namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [e, n] : table)
    if (e == v) return n;
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> parse_of(const std::array<std::pair<E, std::string_view>, N>& table,
                          std::string_view s) {
  for (const auto& [e, n] : table)
    if (n == s) return e;
  return std::nullopt;
}

constexpr std::array<std::pair<HopType, std::string_view>, 4> kHopNames{{
    {HopType::DroneDrone, "drone-drone"},
    {HopType::UeCore, "ue-core"},
    {HopType::CoreInternal, "core-internal"},
    {HopType::LocalCompute, "local-compute"},
}};

constexpr std::array<std::pair<ComputeKind, std::string_view>, 7> kComputeNames{{
    {ComputeKind::ScalarMult, "ScalarMult"},
    {ComputeKind::AsymEncrypt, "AsymEncrypt"},
    {ComputeKind::CoreDecrypt, "CoreDecrypt"},
    {ComputeKind::Hash, "Hash"},
    {ComputeKind::Wrap, "Wrap"},
    {ComputeKind::Unwrap, "Unwrap"},
    {ComputeKind::UnwrapFailed, "UnwrapFailed"},
}};

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 5> kScenarioNames{{
    {ScenarioKind::None, "none"},
    {ScenarioKind::Join, "join"},
    {ScenarioKind::TerrestrialHandover, "terrestrial"},
    {ScenarioKind::AerialHandover, "aerial"},
    {ScenarioKind::NrBaseline, "nr_baseline"},
}};

constexpr std::array<std::pair<Outcome, std::string_view>, 6> kOutcomeNames{{
    {Outcome::Pending, "pending"},
    {Outcome::Accepted, "accepted"},
    {Outcome::Rejected, "rejected"},
    {Outcome::Malformed, "malformed"},
    {Outcome::Excluded, "excluded"},
    {Outcome::Compromised, "compromised"},
}};

constexpr std::string_view kHeader = "time_ms,from,to,msg_type,size_bytes,hop_type";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view hop_type_name(HopType h) { return name_of(kHopNames, h); }
std::optional<HopType> parse_hop_type(std::string_view s) { return parse_of(kHopNames, s); }
std::string_view compute_kind_name(ComputeKind k) { return name_of(kComputeNames, k); }
std::optional<ComputeKind> parse_compute_kind(std::string_view s) { return parse_of(kComputeNames, s); }
std::string_view scenario_kind_name(ScenarioKind k) { return name_of(kScenarioNames, k); }
std::optional<ScenarioKind> parse_scenario_kind(std::string_view s) { return parse_of(kScenarioNames, s); }
std::string_view outcome_name(Outcome o) { return name_of(kOutcomeNames, o); }

std::size_t ScenarioTrace::count(HopType hop) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.hop == hop;
  return n;
}

std::size_t ScenarioTrace::count_type(std::string_view msg_type) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.msg_type == msg_type;
  return n;
}

std::size_t ScenarioTrace::message_count() const {
  return rows.size() - count(HopType::LocalCompute);
}

std::string format_ms(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_ms: to_chars failed");
  return std::string(buf.data(), end);
}

std::string trace_to_csv(const ScenarioTrace& trace) {
  std::ostringstream out;
  out << kHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << format_ms(r.time_ms) << ',' << r.from << ',' << r.to << ',' << r.msg_type << ','
        << r.size_bytes << ',' << hop_type_name(r.hop) << '\n';
  }
  return out.str();
}

std::vector<TraceRow> trace_rows_from_csv(std::string_view csv) {
  std::vector<TraceRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split(csv, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) throw DecodeError("trace CSV: unexpected header");
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    const std::string where = "trace CSV line " + std::to_string(line_no);
    if (cols.size() != 6) throw DecodeError(where + ": expected 6 columns");
    TraceRow r;
    auto [p1, e1] = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), r.time_ms);
    if (e1 != std::errc() || p1 != cols[0].data() + cols[0].size()) {
      throw DecodeError(where + ": bad time_ms");
    }
    r.from = std::string(cols[1]);
    r.to = std::string(cols[2]);
    r.msg_type = std::string(cols[3]);
    auto [p2, e2] = std::from_chars(cols[4].data(), cols[4].data() + cols[4].size(), r.size_bytes);
    if (e2 != std::errc() || p2 != cols[4].data() + cols[4].size()) {
      throw DecodeError(where + ": bad size_bytes");
    }
    auto hop = parse_hop_type(cols[5]);
    if (!hop) throw DecodeError(where + ": unknown hop_type");
    r.hop = *hop;
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw DecodeError("trace CSV: missing header");
  return rows;
}

}  // namespace swarmauth::protocol
