#include "swarmauth/sim/simnet.hpp"

#include <algorithm>
#include <cmath>

#include "swarmauth/error.hpp"

namespace swarmauth::sim {

using protocol::ComputeKind;
using protocol::HopType;
using protocol::TraceRow;

SimNet::SimNet(latency::LatencyModel model, std::uint64_t seed)
    : model_(model), rng_(seed) {}

EventId SimNet::schedule(double delay_ms, Event event) {
  if (!(delay_ms >= 0) || !std::isfinite(delay_ms)) {
    throw InvalidArgument("schedule: delay must be a finite non-negative number");
  }
  return schedule_at(now_ + delay_ms, std::move(event));
}

EventId SimNet::schedule_at(double time_ms, Event event) {
  if (!(time_ms >= now_) || !std::isfinite(time_ms)) {
    throw InvalidArgument("schedule_at: time precedes the current time");
  }
  const EventId id = next_seq_++;
  queue_.push(Queued{time_ms, id, std::move(event)});
  return id;
}

protocol::ScenarioTrace SimNet::run_until_idle() {
  while (!queue_.empty()) {
    // priority_queue::top is const; the event is moved out before pop.
    Queued q = std::move(const_cast<Queued&>(queue_.top()));
    queue_.pop();
    now_ = q.time;
    ++dispatched_;
    if (q.event.row) {
      q.event.row->time_ms = now_;
      pending_rows_.push_back(std::move(*q.event.row));
    }
    if (q.event.action) q.event.action();
  }
  protocol::ScenarioTrace trace;
  trace.rows = std::move(pending_rows_);
  pending_rows_.clear();
  return trace;
}

double SimNet::actor_free_at(const std::string& actor) const {
  auto it = actor_free_.find(actor);
  return it == actor_free_.end() ? now_ : std::max(now_, it->second);
}

double SimNet::transmit(const std::string& from, const std::string& to, const std::string& msg_type,
                        std::size_t size_bytes, HopType hop, std::function<void()> on_delivery) {
  if (hop == HopType::LocalCompute) throw InvalidArgument("transmit: local-compute is not a link");
  double start = actor_free_at(from);
  if (auto it = channel_free_.find(hop); it != channel_free_.end()) start = std::max(start, it->second);
  const double end = start + latency::hop_cost(hop, model_);
  actor_free_[from] = end;
  channel_free_[hop] = end;
  schedule_at(end, Event{TraceRow{0, from, to, msg_type, size_bytes, hop}, std::move(on_delivery)});
  return end;
}

double SimNet::compute(const std::string& actor, ComputeKind kind, std::function<void()> then) {
  const double end = actor_free_at(actor) + latency::compute_cost(kind, model_);
  actor_free_[actor] = end;
  schedule_at(end, Event{TraceRow{0, actor, actor, std::string(protocol::compute_kind_name(kind)),
                                  0, HopType::LocalCompute},
                         std::move(then)});
  return end;
}

}  // namespace swarmauth::sim
