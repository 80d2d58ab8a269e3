#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "quaysim/errors.hpp"
#include "quaysim/sim_time.hpp"

namespace quaysim {

// Tie-break classes for events that share a timestamp. Releases precede
// acquisitions so a resource freed at minute t is available to anything
// granted at minute t.
enum class PriorityClass : int {
  Release = 0,
  Completion = 1,
  Berthing = 2,
  Arrival = 3,
  Report = 4,
};

enum class EventKind : int {
  VesselArrival,
  BerthGranted,
  CraneMoveComplete,
  TruckTripComplete,
  YardServiceComplete,
  VesselServiceComplete,
  VesselDeparture,
  SimEnd,
};

inline PriorityClass priority_class_of(EventKind kind) {
  switch (kind) {
    case EventKind::VesselDeparture:
      return PriorityClass::Release;
    case EventKind::CraneMoveComplete:
    case EventKind::TruckTripComplete:
    case EventKind::YardServiceComplete:
    case EventKind::VesselServiceComplete:
      return PriorityClass::Completion;
    case EventKind::BerthGranted:
      return PriorityClass::Berthing;
    case EventKind::VesselArrival:
      return PriorityClass::Arrival;
    case EventKind::SimEnd:
      return PriorityClass::Report;
  }
  return PriorityClass::Report;
}

inline std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::VesselArrival: return "VesselArrival";
    case EventKind::BerthGranted: return "BerthGranted";
    case EventKind::CraneMoveComplete: return "CraneMoveComplete";
    case EventKind::TruckTripComplete: return "TruckTripComplete";
    case EventKind::YardServiceComplete: return "YardServiceComplete";
    case EventKind::VesselServiceComplete: return "VesselServiceComplete";
    case EventKind::VesselDeparture: return "VesselDeparture";
    case EventKind::SimEnd: return "SimEnd";
  }
  return "?";
}

struct Event {
  SimTime time = 0;
  PriorityClass priority_class = PriorityClass::Report;
  std::uint64_t seq = 0;  // insertion counter, assigned by the calendar
  EventKind kind = EventKind::SimEnd;
  int vessel_id = -1;
  int chain_id = -1;  // container journey id in detailed mode
  int tag = 0;        // crane-split generation in aggregate mode
};

inline Event make_event(EventKind kind, SimTime time, int vessel_id = -1, int chain_id = -1,
                        int tag = 0) {
  Event e;
  e.time = time;
  e.priority_class = priority_class_of(kind);
  e.kind = kind;
  e.vessel_id = vessel_id;
  e.chain_id = chain_id;
  e.tag = tag;
  return e;
}

// Future event list ordered by (time, priority_class, seq). The clock never
// moves backwards; scheduling behind it is a model bug and throws.
class EventCalendar {
 public:
  SimTime clock() const { return clock_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::uint64_t scheduled_count() const { return next_seq_; }

  void schedule(Event event) {
    if (event.time < clock_)
      throw SchedulingInPast(std::string(to_string(event.kind)) + " at t=" +
                             std::to_string(event.time) + " behind clock t=" +
                             std::to_string(clock_));
    event.priority_class = priority_class_of(event.kind);
    event.seq = next_seq_++;
    heap_.push(event);
  }

  std::optional<SimTime> next_time() const {
    if (heap_.empty()) return std::nullopt;
    return heap_.top().time;
  }

  std::optional<Event> next_event() {
    if (heap_.empty()) return std::nullopt;
    Event e = heap_.top();
    heap_.pop();
    clock_ = e.time;
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.priority_class != b.priority_class) return a.priority_class > b.priority_class;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime clock_ = 0;
  std::uint64_t next_seq_ = 0;
};

struct TraceEntry {
  SimTime time = 0;
  EventKind kind = EventKind::SimEnd;
  int vessel_id = -1;
  int chain_id = -1;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

using EventTrace = std::vector<TraceEntry>;

struct RunStats {
  EventTrace trace;
  bool horizon_hit = false;
  std::size_t pending_events = 0;
  std::uint64_t scheduled_events = 0;
  std::uint64_t processed_events = 0;
};

// Drains the calendar through `handle` until it is empty or the next event
// lies beyond the horizon. Pending work at the horizon is reported, not an
// error.
template <typename Handler>
RunStats run_calendar(EventCalendar& calendar, Handler&& handle, SimTime horizon = kNoHorizon) {
  RunStats stats;
  while (auto t = calendar.next_time()) {
    if (*t > horizon) {
      stats.horizon_hit = true;
      break;
    }
    Event event = *calendar.next_event();
    stats.trace.push_back({event.time, event.kind, event.vessel_id, event.chain_id});
    ++stats.processed_events;
    handle(event);
    if (event.kind == EventKind::SimEnd) break;
  }
  stats.pending_events = calendar.size();
  stats.scheduled_events = calendar.scheduled_count();
  return stats;
}

}  // namespace quaysim
