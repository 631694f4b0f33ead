#pragma once

// Deterministic discrete-event scheduler with virtual time.
//
// Events fire in (time, insertion sequence) order. Resource helpers model
// one sequential CPU per actor and one shared channel per hop type: an
// event starts when the actor and channel are both free, and its trace row
// is stamped at completion.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "swarmauth/latency/model.hpp"
#include "swarmauth/protocol/trace.hpp"
#include "swarmauth/rng.hpp"

namespace swarmauth::sim {

using EventId = std::uint64_t;

struct Event {
  /// Appended to the trace when the event fires.
  std::optional<protocol::TraceRow> row;
  std::function<void()> action;
};

class SimNet {
 public:
  explicit SimNet(latency::LatencyModel model = {}, std::uint64_t seed = 0);

  SimNet(const SimNet&) = delete;
  SimNet& operator=(const SimNet&) = delete;

  /// Fires `event` at now() + delay_ms. Throws InvalidArgument for a
  /// negative or non-finite delay.
  EventId schedule(double delay_ms, Event event);
  /// Absolute-time variant; `time_ms` must not precede now().
  EventId schedule_at(double time_ms, Event event);

  /// Dispatches until the queue is empty and returns the rows stamped
  /// since the previous call. Actions may schedule further events.
  protocol::ScenarioTrace run_until_idle();

  double now() const { return now_; }
  bool idle() const { return queue_.empty(); }
  std::size_t dispatched() const { return dispatched_; }

  const latency::LatencyModel& model() const { return model_; }
  Rng& rng() { return rng_; }

  /// Occupies `from` and the `hop` channel for one hop; `on_delivery` runs
  /// at completion. Returns the delivery time.
  double transmit(const std::string& from, const std::string& to, const std::string& msg_type,
                  std::size_t size_bytes, protocol::HopType hop,
                  std::function<void()> on_delivery = {});

  /// Occupies `actor` for the model cost of `kind`; `then` runs at
  /// completion. Returns the completion time.
  double compute(const std::string& actor, protocol::ComputeKind kind,
                 std::function<void()> then = {});

  /// Earliest time `actor` is free for new work.
  double actor_free_at(const std::string& actor) const;

 private:
  struct Queued {
    double time;
    EventId seq;
    Event event;
  };
  struct Later {
    bool operator()(const Queued& a, const Queued& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  latency::LatencyModel model_;
  Rng rng_;
  double now_ = 0;
  EventId next_seq_ = 0;
  std::size_t dispatched_ = 0;
  std::priority_queue<Queued, std::vector<Queued>, Later> queue_;
  std::vector<protocol::TraceRow> pending_rows_;
  std::map<std::string, double> actor_free_;
  std::map<protocol::HopType, double> channel_free_;
};

}  // namespace swarmauth::sim
